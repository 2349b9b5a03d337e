"""boxlie: exact tensor product multiplicities, box splines and volume
functions for the compact classical Lie algebras.

Everything on the lattice side is exact rational arithmetic; all objects are
immutable after construction (memo tables are append-only), so root systems,
tables and evaluators can be shared freely across threads.
"""

from .boxspline import box_spline_density, lattice_table, r_polynomial
from .deconv import (
    finite_difference_inversion,
    lattice_deconvolve,
    multiplicities_from_j_algorithmic,
    multiplicities_from_j_fourier,
)
from .multoracle import (
    dimension,
    kostant_partition,
    lr_coefficient,
    lr_table,
    triple_multiplicity,
    weight_multiplicity,
)
from .rootsys import RootSystem, build, is_unimodular, smoothness_degree
from .volumefn import VolumeEvaluator, jlr_verify, shielded_test, volume_j
from .weightmult import dh_density_i, kostka_fd_inversion, kostka_from_i_fourier

__version__ = "0.1.0"

__all__ = [
    "RootSystem",
    "VolumeEvaluator",
    "box_spline_density",
    "build",
    "dh_density_i",
    "dimension",
    "finite_difference_inversion",
    "is_unimodular",
    "jlr_verify",
    "kostant_partition",
    "kostka_fd_inversion",
    "kostka_from_i_fourier",
    "lattice_deconvolve",
    "lattice_table",
    "lr_coefficient",
    "lr_table",
    "multiplicities_from_j_algorithmic",
    "multiplicities_from_j_fourier",
    "r_polynomial",
    "shielded_test",
    "smoothness_degree",
    "triple_multiplicity",
    "volume_j",
    "weight_multiplicity",
]
