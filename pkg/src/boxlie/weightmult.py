"""Weight multiplicities through the torus Duistermaat-Heckman density:
the function I(lam'; beta) = b * (weight measure of V_lam), its exact lattice
restriction, and Kostka-number recovery by deconvolution, torus Fourier
inversion, and the finite-difference formula on shielded pairs.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, product as iproduct
from typing import Sequence

import numpy as np

from .core import (
    LatticeMeasure,
    as_int_vec,
    convolve,
    is_integral,
    smul,
    vadd,
    vec,
    vsub,
)
from .boxspline import lattice_table
from .deconv import LaplacianOperator, _peel, _torus_quadrature
from .multoracle import (
    weight_multiplicity_at_point,
    weights_of_irrep,
)
from .rootsys import RootSystem
from .volumefn import _orbit_box


def dh_density_i(rs: RootSystem, lam: Sequence[int], beta_root: Sequence) -> Fraction:
    """Exact I(lam'; beta) = sum_{mu in lam+Q} mult_lam(mu) b(beta - mu),
    the density of the torus Duistermaat-Heckman measure of the orbit of
    lam' (lattice-normalized). W-invariant in beta."""
    rs.assert_dominant_weight(lam, "lambda")
    table = lattice_table(rs)
    beta = vec(beta_root)
    lam_root = rs.weight_root_coords(lam)
    off = vsub(beta, lam_root)
    if is_integral(off):
        total = Fraction(0)
        for tau, b in table.values.items():
            m = weight_multiplicity_at_point(rs, lam, vsub(beta, vec(tau)))
            if m:
                total += b * m
        return total
    lo, hi = _orbit_box(rs, rs.rho)
    frac = tuple(x - math.floor(x) for x in off)
    total = Fraction(0)
    ranges = [range(math.floor(lo[i] - frac[i]), math.ceil(hi[i] - frac[i]) + 1)
              for i in range(rs.rank)]
    for k in iproduct(*ranges):
        s = vadd(vec(frac), vec(k))
        bval = table.density(s)
        if bval:
            m = weight_multiplicity_at_point(rs, lam, vsub(beta, s))
            if m:
                total += bval * m
    return total


def weight_measure(rs: RootSystem, lam: Sequence[int]) -> LatticeMeasure:
    """The weight measure sum_mu mult_lam(mu) delta_mu on lam + Q."""
    lam_root = rs.weight_root_coords(lam)
    table = weights_of_irrep(rs, lam)
    return LatticeMeasure(lam_root, {k: Fraction(m) for k, m in table.items()}, "Q")


def i_lattice_measure(rs: RootSystem, lam: Sequence[int]) -> LatticeMeasure:
    """sum_{mu in lam+Q} I(lam'; mu) delta_mu as one discrete convolution."""
    return convolve(lattice_table(rs).lattice_values, weight_measure(rs, lam))


def i_lattice_and_deconv_roundtrip(rs: RootSystem, lam: Sequence[int]) -> bool:
    """Build the lattice restriction of I by convolution, peel the box spline
    table back off, and compare with the weight multiplicities exactly."""
    rs.assert_dominant_weight(lam, "lambda")
    table = lattice_table(rs)
    imeas = i_lattice_measure(rs, lam)
    scale = table.denominator_lcm()
    f_int = {k: int(v * scale) for k, v in table.values.items()}
    h_int = {}
    for k, v in imeas.entries.items():
        sv = v * scale
        assert sv.denominator == 1
        h_int[k] = sv.numerator
    g = _peel(f_int, h_int)
    want = weights_of_irrep(rs, lam)
    return {k: v for k, v in g.items() if v} == dict(want)


def kostka_from_i_fourier(rs: RootSystem, lam: Sequence[int], mu: Sequence[int],
                          residual_tol: float = 1e-6) -> int:
    """Weight multiplicity by torus quadrature of the I measure divided by
    the R-polynomial (same grid policy as the tensor product inversion)."""
    if rs.rank > 3:
        raise ValueError("Fourier inversion is limited to rank <= 3")
    rs.assert_dominant_weight(lam, "lambda")
    mu = tuple(int(c) for c in mu)
    if not is_integral(vsub(rs.weight_root_coords(mu), rs.weight_root_coords(lam))):
        return 0
    imeas = i_lattice_measure(rs, lam)
    mu_wt = [int(c) for c in mu]
    pts, vals = [], []
    for k, v in imeas.entries.items():
        p = vadd(imeas.base, k)
        pts.append([int(c) for c in as_int_vec(rs.wt_of_root(p))])
        vals.append(float(v))
    freqs = np.array(pts, dtype=float) - np.array(mu_wt, dtype=float)
    sizes = [2 * int(abs(freqs[:, i]).max()) + 3 for i in range(rs.rank)]
    est = _torus_quadrature(rs, freqs, np.array(vals), sizes)
    value = int(round(est.real))
    residual = abs(est - value)
    if residual > residual_tol:
        raise ValueError(f"quadrature residual {residual:.2e} exceeds {residual_tol}")
    return value


def shielded_pair_test(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> bool:
    """True iff the points mu + floor(d/2) w(rho) all lie strictly inside one
    polynomial domain of I(lam'; -), whose walls are
    sum_{k in K} beta_k = sum_{i in I} lam'_i with |I| = |K| (type A)."""
    if rs.family != "A":
        raise ValueError("shielded pairs are defined for type A only")
    rs.assert_dominant_weight(lam, "lambda")
    mu = tuple(int(c) for c in mu)
    mu_root = rs.weight_root_coords(mu)
    if not is_integral(vsub(mu_root, rs.weight_root_coords(lam))):
        return False
    d = rs.n_positive - rs.rank
    hw = d // 2
    pts = {vadd(mu_root, smul(hw, w.apply_root(rs.rho))) for w in rs.weyl_elements}
    pts_e = [rs.e_of_root(p) for p in pts]
    n = rs.rank + 1
    lp = rs.e_of_root(rs.weight_prime(lam))
    for s in range(1, n):
        consts = {sum(lp[i] for i in idx) for idx in combinations(range(n), s)}
        for idx_k in combinations(range(n), s):
            kmin = kmax = None
            for p in pts_e:
                v = sum(p[k] for k in idx_k)
                kmin = v if kmin is None else min(kmin, v)
                kmax = v if kmax is None else max(kmax, v)
            for c in consts:
                if kmin <= c <= kmax:
                    return False
    return True


def kostka_fd_inversion(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> int:
    """K = sum_{k=0}^{floor(d/2)} (-D/2)^k I(lam'; mu) for shielded type-A
    pairs; rejects non-shielded input."""
    if rs.family != "A":
        raise ValueError("the finite-difference inversion is type A only")
    if not shielded_pair_test(rs, lam, mu):
        raise ValueError("pair is not shielded")
    d = rs.n_positive - rs.rank
    op = LaplacianOperator.for_system(rs)
    stencil = op.neumann_stencil(d // 2)
    mu_root = rs.weight_root_coords(mu)
    total = Fraction(0)
    for off, c in stencil.items():
        iv = dh_density_i(rs, lam, vadd(mu_root, vec(off)))
        if iv:
            total += c * iv
    if total.denominator != 1 or total < 0:
        raise ValueError(f"inversion returned non-integer {total}")
    return total.numerator


def kostka_ahat_via_local_fit(rs: RootSystem, lam: Sequence[int],
                              mu: Sequence[int]) -> int:
    """Weight multiplicity through the inverse operator acting in the second
    argument of I: fit the local polynomial of I(lam'; -) around mu inside
    its domain (same grid policy as the tensor product route), apply the
    truncated operator series and evaluate at mu."""
    from .core import InterpolationError, interpolate, monomials_up_to_degree
    from .volumefn import _ahat_apply

    if rs.family != "A":
        raise ValueError("the inverse operator route is type A only")
    if not shielded_pair_test(rs, lam, mu):
        raise ValueError("pair is not shielded")
    d = rs.n_positive - rs.rank
    r = rs.rank
    mu_root = rs.weight_root_coords(mu)
    h = Fraction(1, 2 * (d + 2))
    pts, vals = [], []
    for e in monomials_up_to_degree(r, d):
        delta = vec(e)
        pts.append(smul(h, delta))
        vals.append(dh_density_i(rs, lam, vadd(mu_root, smul(h, delta))))
    poly = interpolate(pts, vals, d)
    for j in range(r):
        e = [0] * r
        e[j] = d + 1
        probe = vec(e)
        if poly(smul(h, probe)) != dh_density_i(rs, lam, vadd(mu_root, smul(h, probe))):
            raise InterpolationError("held-out point mismatch: domain straddled")
    value = _ahat_apply(rs, poly, d // 2)(vec([0] * r))
    if value.denominator != 1 or value < 0:
        raise ValueError(f"inverse operator returned non-integer {value}")
    return value.numerator
