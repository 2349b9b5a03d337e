"""Recovering multiplicities from the volume function: vertex-peeling
lattice deconvolution, torus Fourier inversion, and the box spline Laplacian
finite-difference formula.

The three routes are mutually independent implementations of the same
inverse problem. The peeling algorithm works for every root system; the
Fourier route divides by the R-polynomial on a torus grid; the
finite-difference route applies the truncated Neumann series of the box
spline Laplacian and is exact on shielded type-A triples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .core import (
    IntVec,
    LatticeMeasure,
    MultivariatePolynomial,
    Vec,
    as_int_vec,
    is_integral,
    vadd,
    vec,
    vsub,
)
from .boxspline import lattice_table
from .multoracle import compatible
from .rootsys import RootSystem
from .volumefn import VolumeEvaluator, shielded_test


# ---------------------------------------------------------------------------
# vertex peeling on a lattice
# ---------------------------------------------------------------------------

class DeconvolutionError(ValueError):
    """h is not a convolution of f with any finitely supported measure."""


def _peel(f: Mapping[IntVec, object], h: Mapping[IntVec, object]) -> dict[IntVec, object]:
    """Solve f * g = h for finitely supported g by lexicographic vertex
    peeling. Works over any field embedded in Fraction; values of f and h
    may be Fractions or ints (the returned values are Fractions unless both
    inputs are ints and all divisions are exact).

    The lexicographic maximum realizes a generic linear functional: it is a
    total order compatible with translation, so the lex-max of supp(f * g)
    splits uniquely as lex-max(f) + lex-max(g). Each round recovers one
    point of g; recovered points decrease strictly in lex order and are
    confined to the exact per-coordinate box supp(h) minus supp(f), which
    certifies termination or failure.
    """
    if not f:
        raise DeconvolutionError("f must be nonzero")
    if not h:
        return {}
    dim = len(next(iter(f)))
    f_anchor = max(f)
    f_val = f[f_anchor]
    f_items = list(f.items())
    lo = tuple(min(k[i] for k in h) - min(k[i] for k in f) for i in range(dim))
    hi = tuple(max(k[i] for k in h) - max(k[i] for k in f) for i in range(dim))
    work = dict(h)
    out: dict[IntVec, object] = {}
    while work:
        top = max(work)
        tgt = tuple(a - b for a, b in zip(top, f_anchor))
        if any(t < a or t > b for t, a, b in zip(tgt, lo, hi)):
            raise DeconvolutionError("support escapes the certified box; "
                                     "h is not f * g for finitely supported g")
        val = work[top]
        if isinstance(val, int) and isinstance(f_val, int):
            q, r = divmod(val, f_val)
            g_val = q if r == 0 else Fraction(val, f_val)
        else:
            g_val = Fraction(val) / Fraction(f_val)
        out[tgt] = g_val
        for k, v in f_items:
            pos = tuple(a + b for a, b in zip(k, tgt))
            nv = work.get(pos, 0) - g_val * v
            if nv:
                work[pos] = nv
            else:
                work.pop(pos, None)
    return out


def lattice_deconvolve(f: LatticeMeasure, h: LatticeMeasure) -> LatticeMeasure:
    """Exact deconvolution of finitely supported lattice measures: returns g
    with f * g = h, or raises DeconvolutionError when none exists."""
    if f.lattice != h.lattice or f.dim != h.dim:
        raise DeconvolutionError("incompatible lattices")
    g_entries = _peel(dict(f.entries), dict(h.entries))
    base = vsub(h.base, f.base)
    return LatticeMeasure(base, {k: Fraction(v) for k, v in g_entries.items()}, f.lattice)


# ---------------------------------------------------------------------------
# route 1: algorithmic deconvolution of the volume measure
# ---------------------------------------------------------------------------

def multiplicities_from_j_algorithmic(rs: RootSystem, lam: Sequence[int],
                                      mu: Sequence[int]) -> dict[IntVec, int]:
    """Recover the full table {nu: C_{lam mu}^nu} from the volume function
    restricted to the shifted lattice, by peeling off the box spline table.
    The recovered skew measure is checked to be W-skew with nonnegative
    integers at dominant points."""
    from .multoracle import skew_product_measure

    skew = skew_product_measure(rs, lam, mu)
    table = lattice_table(rs)
    scale = table.denominator_lcm()
    f_int = {k: int(v * scale) for k, v in table.values.items()}
    # the volume measure on the shifted lattice, scaled to integers
    h_int: dict[IntVec, int] = {}
    f_items = list(f_int.items())
    for k2, v2 in skew.entries.items():
        m = int(v2)
        for k1, v1 in f_items:
            key = tuple(a + b for a, b in zip(k1, k2))
            h_int[key] = h_int.get(key, 0) + v1 * m
    h_int = {k: v for k, v in h_int.items() if v}
    g = _peel(f_int, h_int)
    base = skew.base  # = lam + mu + rho in root coordinates
    # weight coordinates stay integral on the shifted lattice
    base_wt = [int(c) for c in as_int_vec(rs.wt_of_root(base))]
    wt_mat = [[int(rs._wt_of_root_mat[i][j]) for j in range(rs.rank)]
              for i in range(rs.rank)]
    out: dict[IntVec, int] = {}
    g_wt: dict[IntVec, int] = {}
    for k, v in g.items():
        if not isinstance(v, int):
            raise DeconvolutionError(f"non-integer multiplicity {v} at {k}")
        wt = tuple(b + sum(row[j] * k[j] for j in range(rs.rank) if k[j])
                   for b, row in zip(base_wt, wt_mat))
        g_wt[wt] = v
        if all(c > 0 for c in wt):
            if v < 0:
                raise DeconvolutionError(f"negative multiplicity {v} at {k}")
            if v:
                out[tuple(c - 1 for c in wt)] = v
    for wt, v in g_wt.items():
        plus, sign, on_wall = rs.dominant_representative_wt(wt)
        if on_wall:
            if v != 0:
                raise DeconvolutionError("recovered measure not W-skew (wall value)")
            continue
        if v != sign * g_wt.get(plus, 0):
            raise DeconvolutionError("recovered measure not W-skew")
    return out


# ---------------------------------------------------------------------------
# route 2: Fourier inversion on the torus
# ---------------------------------------------------------------------------

def _torus_grid_data(rs: RootSystem, meas: LatticeMeasure, nu_prime: Vec):
    """Weight-coordinate frequencies of the J measure relative nu' and the
    grid sizes 2B+3 (odd, above the Nyquist bound)."""
    pts = []
    vals = []
    for k, v in meas.entries.items():
        p = vadd(meas.base, k)
        pts.append([int(c) for c in as_int_vec(rs.wt_of_root(p))])
        vals.append(float(v))
    nu_wt = [int(c) for c in as_int_vec(rs.wt_of_root(nu_prime))]
    freqs = np.array(pts, dtype=float) - np.array(nu_wt, dtype=float)
    bounds = [int(abs(freqs[:, i]).max()) if len(pts) else 0 for i in range(rs.rank)]
    sizes = [2 * b + 3 for b in bounds]
    return freqs, np.array(vals), sizes


def _rpoly_torus(rs: RootSystem, tmesh: np.ndarray) -> np.ndarray:
    table = lattice_table(rs)
    freqs = []
    vals = []
    for k, v in table.values.items():
        freqs.append([int(c) for c in as_int_vec(rs.wt_of_root(vec(k)))])
        vals.append(float(v))
    ang = 2.0 * math.pi * (tmesh @ np.array(freqs, dtype=float).T)
    return np.cos(ang) @ np.array(vals)


def multiplicities_from_j_fourier(rs: RootSystem, lam: Sequence[int],
                                  mu: Sequence[int], nu: Sequence[int],
                                  residual_tol: float = 1e-6) -> int:
    """Tensor product multiplicity by torus quadrature of the volume measure
    divided by the R-polynomial. The integrand is a trigonometric polynomial,
    so a uniform half-step-offset grid above the Nyquist bound is exact up to
    roundoff; the residual from the nearest integer is checked."""
    if rs.rank > 3:
        raise ValueError("Fourier inversion is limited to rank <= 3")
    rs.assert_dominant_weight(nu, "nu")
    if not compatible(rs, lam, mu, nu):
        return 0
    ev = VolumeEvaluator(rs, lam, mu)
    jmeas = ev.lattice_measure()
    nu_prime = rs.weight_prime(nu)
    freqs, vals, sizes = _torus_grid_data(rs, jmeas, nu_prime)
    est = _torus_quadrature(rs, freqs, vals, sizes)
    value = int(round(est.real))
    residual = abs(est - value)
    if residual > residual_tol:
        raise ValueError(f"quadrature residual {residual:.2e} exceeds {residual_tol}")
    return value


def _torus_quadrature(rs: RootSystem, freqs: np.ndarray, vals: np.ndarray,
                      sizes: list[int]) -> complex:
    """Average of (sum_p vals_p e^{2 pi i <freq_p, t>}) / R(t) over a uniform
    offset grid, evaluated in grid batches to bound memory. A uniform grid of
    any offset integrates trigonometric polynomials below the Nyquist bound
    exactly, so the offset is retried until the grid misses the
    (measure-zero) vanishing set of R."""
    batch = max(1, 4_000_000 // max(len(vals), 1))
    for offset in (0.5, 1.0 / 3.0, 0.2, 0.381966011250105):
        axes = [(np.arange(g) + offset) / g for g in sizes]
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, rs.rank)
        rvals = _rpoly_torus(rs, mesh)
        if np.min(np.abs(rvals)) < 1e-7:
            continue
        total = 0j
        for i in range(0, len(mesh), batch):
            chunk = mesh[i:i + batch]
            phases = np.exp(2j * math.pi * (chunk @ freqs.T))
            total += ((phases @ vals) / rvals[i:i + batch]).sum()
        return complex(total / len(mesh))
    raise ValueError("R-polynomial vanishes on every candidate quadrature grid")


# ---------------------------------------------------------------------------
# experimental universal kernel (unimodular case)
# ---------------------------------------------------------------------------

def c_kernel_numeric(rs: RootSystem, tau: Sequence, grid: int = 48) -> float:
    """Quadrature estimate of the deconvolution kernel
    c(tau) = normalized integral of e^{-i<tau, x>} / R(x); well defined only
    when R has no zeros, hence restricted to the unimodular (type A) case."""
    if rs.family != "A":
        raise ValueError("the universal kernel requires a unimodular system")
    t = vec(tau)
    if not is_integral(t):
        raise ValueError("tau must be a root lattice point")
    axes = [(np.arange(grid) + 0.5) / grid for _ in range(rs.rank)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, rs.rank)
    rvals = _rpoly_torus(rs, mesh)
    wt = np.array([int(c) for c in as_int_vec(rs.wt_of_root(t))], dtype=float)
    phases = np.exp(-2j * math.pi * (mesh @ wt))
    est = (phases / rvals).mean()
    if abs(est.imag) > 1e-7:
        raise ValueError(f"kernel estimate has imaginary part {est.imag:.2e}")
    return float(est.real)


# ---------------------------------------------------------------------------
# route 3: the box spline Laplacian
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaplacianOperator:
    """D = sum_{tau in Q} b(tau) (forward difference)(backward difference)
    along tau: D f(x) = sum_tau b(tau) (f(x+tau) - 2 f(x) + f(x-tau)).
    The stencil coefficients are exactly the nonzero lattice values of b.
    D annihilates polynomials of degree < 2 and (1 + D/2) realizes the
    discrete convolution with b."""

    rs: RootSystem
    terms: tuple[tuple[IntVec, Fraction], ...]
    stencil: Mapping[IntVec, Fraction]

    @classmethod
    def for_system(cls, rs: RootSystem) -> "LaplacianOperator":
        table = lattice_table(rs)
        zero = (0,) * rs.rank
        stencil: dict[IntVec, Fraction] = {}
        terms = []
        for tau, b in table.values.items():
            if tau == zero:
                continue
            terms.append((tau, b))
            neg = tuple(-c for c in tau)
            stencil[tau] = stencil.get(tau, Fraction(0)) + b
            stencil[neg] = stencil.get(neg, Fraction(0)) + b
            stencil[zero] = stencil.get(zero, Fraction(0)) - 2 * b
        return cls(rs, tuple(terms), {k: v for k, v in stencil.items() if v})

    def apply(self, f: Callable[[Vec], Fraction], xi_root: Sequence) -> Fraction:
        """D f at a point; f is evaluated at xi plus stencil offsets."""
        xi = vec(xi_root)
        total = Fraction(0)
        for off, c in self.stencil.items():
            total += c * f(vadd(xi, vec(off)))
        return total

    def apply_polynomial(self, p: MultivariatePolynomial) -> MultivariatePolynomial:
        out = MultivariatePolynomial.zero(p.nvars)
        for off, c in self.stencil.items():
            out = out + p.shift(off).scale(c)
        return out

    def neumann_stencil(self, k_max: int) -> dict[IntVec, Fraction]:
        """Combined stencil of sum_{k=0}^{k_max} (-D/2)^k."""
        zero = (0,) * self.rs.rank
        total: dict[IntVec, Fraction] = {zero: Fraction(1)}
        power: dict[IntVec, Fraction] = {zero: Fraction(1)}
        for _ in range(k_max):
            nxt: dict[IntVec, Fraction] = {}
            for k1, v1 in power.items():
                for k2, v2 in self.stencil.items():
                    key = tuple(a + b for a, b in zip(k1, k2))
                    nxt[key] = nxt.get(key, Fraction(0)) - v1 * v2 / 2
            power = {k: v for k, v in nxt.items() if v}
            for k, v in power.items():
                total[k] = total.get(k, Fraction(0)) + v
        return {k: v for k, v in total.items() if v}


def laplacian_apply(rs: RootSystem, f: Callable[[Vec], Fraction],
                    xi_root: Sequence) -> Fraction:
    return LaplacianOperator.for_system(rs).apply(f, xi_root)


def jlr_laplacian_verify(rs: RootSystem, lam: Sequence[int], mu: Sequence[int],
                         nu: Sequence[int]) -> bool:
    """Exact check of J(lam', mu'; nu') = (1 + D/2) m(nu') where m is the
    signed (W-skew) multiplicity function of the pair."""
    if not compatible(rs, lam, mu, nu):
        raise ValueError("triple is not compatible")
    ev = VolumeEvaluator(rs, lam, mu)
    op = LaplacianOperator.for_system(rs)
    nu_prime = rs.weight_prime(nu)
    lhs = ev.volume_j(nu_prime)
    rhs = Fraction(ev.skew_value(nu_prime))
    for off, c in op.stencil.items():
        rhs += Fraction(1, 2) * c * ev.skew_value(vadd(nu_prime, vec(off)))
    return lhs == rhs


def finite_difference_inversion(rs: RootSystem, lam: Sequence[int],
                                mu: Sequence[int], nu: Sequence[int]) -> int:
    """C_{lam mu}^nu = sum_{k=0}^{floor(d/2)} (-D/2)^k J(lam', mu'; nu') for
    shielded type-A triples; the input is rejected when not shielded (the
    truncated series is only valid inside one polynomial domain)."""
    if rs.family != "A":
        raise ValueError("the finite-difference inversion is type A only")
    if not shielded_test(rs, lam, mu, nu):
        raise ValueError("triple is not shielded")
    d = rs.n_positive - rs.rank
    op = LaplacianOperator.for_system(rs)
    stencil = op.neumann_stencil(d // 2)
    ev = VolumeEvaluator(rs, lam, mu)
    nu_prime = rs.weight_prime(nu)
    total = Fraction(0)
    for off, c in stencil.items():
        jv = ev.volume_j(vadd(nu_prime, vec(off)))
        if jv:
            total += c * jv
    if total.denominator != 1 or total < 0:
        raise ValueError(f"inversion returned non-integer {total}")
    return total.numerator
