"""Exact evaluation of the centered box spline attached to the positive roots.

The box spline measure is the pushforward of the uniform probability measure
on the cube [-1/2, 1/2]^m under (t_alpha) -> sum t_alpha alpha, m = |Phi+|.
Its density b is taken with respect to the Lebesgue measure in which the root
lattice Q has covolume 1 (equivalently, Lebesgue measure in simple-root
coordinates); with that normalization the lattice translates of b form a
partition of unity, sum_{tau in Q} b(tau) = 1, and all lattice identities
below are exact rational statements.

Evaluation strategy (all exact):

* Values at integer points of the uncentered spline solve the two-scale
  refinement relation B(y) = sum_k c_k B(2y - k), where the mask c comes from
  the coefficients of prod_alpha (1 + z^alpha). The system is reduced by the
  symmetry group of the spline and solved over the rationals; the q = 3
  relation is stacked in as well and a rank check certifies uniqueness.
* Values at denominator-q rational points come from the q-scale mask
  prod_alpha (1 + z^alpha + ... + z^{(q-1)alpha}), falling back to the
  classical dimension-reduction recursion (evaluated in the interior limit
  along a fixed generic direction, with exact infinitesimal bookkeeping) when
  the mask would be too large.
* A direct slice-volume evaluator (vertex enumeration in the kernel
  coordinates of the root matrix) is provided for kernel dimension <= 2 and
  serves as an independent cross-check of the normalization.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product as iproduct
from typing import Sequence

import numpy as np

from .core import (
    IntVec,
    LatticeMeasure,
    Vec,
    as_int_vec,
    common_denominator,
    dot,
    is_integral,
    smul,
    vadd,
    vec,
    vsub,
)
from .multoracle import lr_coefficient, weight_multiplicity
from .rootsys import RootSystem

_MASK_CAP = 600_000  # entries; beyond this fall back to the recursion


# ---------------------------------------------------------------------------
# refinement masks
# ---------------------------------------------------------------------------

def _scale_mask(rs: RootSystem, q: int) -> dict[IntVec, Fraction]:
    """Coefficients c_k of the q-scale relation B(y) = sum_k c_k B(qy - k)
    for the uncentered spline in root coordinates."""
    roots = [as_int_vec(a) for a in rs.positive_roots]
    coeffs: dict[IntVec, int] = {(0,) * rs.rank: 1}
    for a in roots:
        nxt: dict[IntVec, int] = {}
        for k, c in coeffs.items():
            for t in range(q):
                key = tuple(x + t * y for x, y in zip(k, a))
                nxt[key] = nxt.get(key, 0) + c
        coeffs = nxt
    scale = Fraction(q) ** (rs.rank - len(roots))
    return {k: scale * c for k, c in coeffs.items()}


# ---------------------------------------------------------------------------
# zonotope geometry
# ---------------------------------------------------------------------------

class _Zonotope:
    """Support-function description of sum_alpha [0, alpha] in root coords."""

    def __init__(self, rs: RootSystem):
        roots = [as_int_vec(a) for a in rs.positive_roots]
        self.facets = []
        for u in rs.spanning_hyperplane_normals():
            hi = sum(max(0, sum(x * y for x, y in zip(a, u))) for a in roots)
            lo = sum(min(0, sum(x * y for x, y in zip(a, u))) for a in roots)
            self.facets.append((u, lo, hi))
        self.box = tuple(sum(max(0, a[i]) for a in roots) for i in range(rs.rank))
        self.box_lo = tuple(sum(min(0, a[i]) for a in roots) for i in range(rs.rank))

    def interior(self, y: Sequence) -> bool:
        for u, lo, hi in self.facets:
            s = sum(x * Fraction(c) for x, c in zip(u, y))
            if not (lo < s < hi):
                return False
        return True

    def contains(self, y: Sequence) -> bool:
        for u, lo, hi in self.facets:
            s = sum(x * Fraction(c) for x, c in zip(u, y))
            if not (lo <= s <= hi):
                return False
        return True

    def integer_interior_points(self) -> list[IntVec]:
        ranges = [range(lo, hi + 1) for lo, hi in zip(self.box_lo, self.box)]
        return [p for p in iproduct(*ranges) if self.interior(p)]


# ---------------------------------------------------------------------------
# the lattice table
# ---------------------------------------------------------------------------

@dataclass
class BoxSplineTable:
    """Exact box spline data for one root system: the density values on the
    root lattice, the coefficient set K with its r-coefficients, and enough
    machinery to evaluate the density at arbitrary rational points."""

    rs: RootSystem
    values: dict[IntVec, Fraction]          # centered b on Q, root coords
    integer_values: dict[IntVec, Fraction]  # uncentered B on Z^r
    K: list[IntVec]                         # dominant support of b|_Q, root coords
    r_coeffs: dict[IntVec, Fraction]        # kappa -> J(rho, rho; kappa')
    _masks: dict[int, dict[IntVec, Fraction]] = field(default_factory=dict)
    _half_memo: dict[IntVec, Fraction] = field(default_factory=dict)
    _zonotope: _Zonotope | None = None
    _recursion_memo: dict = field(default_factory=dict)
    _generic_dir: Vec | None = None

    # -- lattice access -----------------------------------------------------

    @property
    def lattice_values(self) -> LatticeMeasure:
        return LatticeMeasure(vec([0] * self.rs.rank), dict(self.values), "Q")

    def value(self, tau_root: Sequence) -> Fraction:
        t = vec(tau_root)
        if not is_integral(t):
            raise ValueError(f"{tau_root} is not a root lattice point")
        return self.values.get(as_int_vec(t), Fraction(0))

    def mass(self) -> Fraction:
        return sum(self.values.values(), start=Fraction(0))

    def denominator_lcm(self) -> int:
        out = 1
        for v in self.values.values():
            out = out * v.denominator // math.gcd(out, v.denominator)
        return out

    # -- density at arbitrary rational points --------------------------------

    def density(self, x_root: Sequence) -> Fraction:
        """Centered density b at an arbitrary rational point (root coords)."""
        rs = self.rs
        x = vec(x_root)
        if rs.family == "A" and rs.rank == 1:
            return Fraction(1) if abs(x[0]) <= Fraction(1, 2) else Fraction(0)
        y = vadd(x, rs.rho)
        zono = self._zono()
        if not zono.contains(y):
            return Fraction(0)
        q = common_denominator(y)
        if q == 1:
            return self.integer_values.get(as_int_vec(y), Fraction(0))
        if q == 2:
            return self._half_value(as_int_vec(smul(2, y)))
        mask = self._mask(q)
        if mask is not None:
            j = as_int_vec(smul(q, y))
            total = Fraction(0)
            for s, v in self.integer_values.items():
                c = mask.get(tuple(a - b for a, b in zip(j, s)))
                if c is not None:
                    total += c * v
            return total
        return self._recursive_density(y)

    def _zono(self) -> _Zonotope:
        if self._zonotope is None:
            self._zonotope = _Zonotope(self.rs)
        return self._zonotope

    def _half_value(self, j2: IntVec) -> Fraction:
        hit = self._half_memo.get(j2)
        if hit is not None:
            return hit
        mask = self._mask(2)
        total = Fraction(0)
        for s, v in self.integer_values.items():
            c = mask.get(tuple(a - b for a, b in zip(j2, s)))
            if c is not None:
                total += c * v
        self._half_memo[j2] = total
        return total

    def _mask(self, q: int) -> dict[IntVec, Fraction] | None:
        if q in self._masks:
            return self._masks[q]
        est = (q - 1) ** self.rs.rank * max(len(self.integer_values), 1) * 4
        if q > 2 and est > _MASK_CAP:
            return None
        mask = _scale_mask(self.rs, q)
        if len(mask) > _MASK_CAP:
            return None
        self._masks[q] = mask
        return mask

    # -- dimension-reduction recursion (interior limit) ----------------------

    def _generic_direction(self) -> Vec:
        if self._generic_dir is not None:
            return self._generic_dir
        normals = self.rs.spanning_hyperplane_normals()
        rng = random.Random(1729)
        while True:
            cand = vec([Fraction(rng.randint(1, 997), 1009) for _ in range(self.rs.rank)])
            if all(dot(cand, vec(u)) != 0 for u in normals):
                self._generic_dir = cand
                return cand

    def _recursive_density(self, y: Vec) -> Fraction:
        """Evaluate the centered spline at y - rho by the classical
        dimension-reduction recursion, in the interior limit along a fixed
        generic direction eta. Only the base case (parallelepiped indicator)
        needs the infinitesimal: the recursion weights and the piecewise
        limits pass through sums and products."""
        eta = self._generic_direction()
        roots = [vec(a) for a in self.rs.positive_roots]
        idx_all = tuple(range(len(roots)))
        ycen = vsub(y, self.rs.rho)
        memo = self._recursion_memo
        rank = self.rs.rank

        def rec(idx: tuple[int, ...], pt: Vec) -> Fraction:
            key = (idx, pt)
            hit = memo.get(key)
            if hit is not None:
                return hit
            sub = [roots[i] for i in idx]
            m = len(sub)
            if m == rank:
                out = _parallelepiped_limit(sub, pt, eta)
            else:
                cs, _ = _solve_wide_dual(sub, pt, vec([0] * rank))
                half = Fraction(1, 2)
                acc = Fraction(0)
                for j in range(m):
                    xj = sub[j]
                    idx2 = idx[:j] + idx[j + 1:]
                    wplus = half + cs[j]
                    wminus = half - cs[j]
                    if wplus != 0:
                        acc += wplus * rec(idx2, vadd(pt, smul(half, xj)))
                    if wminus != 0:
                        acc += wminus * rec(idx2, vsub(pt, smul(half, xj)))
                out = acc / (m - rank)
            memo[key] = out
            return out

        return rec(idx_all, ycen)


def _dual_lt(a: tuple, b: tuple) -> bool:
    """Strict comparison of first-order jets value + eps * slope."""
    if a[0] != b[0]:
        return a[0] < b[0]
    return a[1] < b[1]


def _parallelepiped_limit(cols: list[Vec], pt: Vec, eta: Vec) -> Fraction:
    """Limit of the centered parallelepiped indicator density at pt + eps eta:
    1/|det| when all barycentric coordinates sit strictly inside
    (-1/2, 1/2) for small eps > 0, else 0; 0 for degenerate columns."""
    r = len(pt)
    a = [[cols[j][i] for j in range(r)] + [Fraction(pt[i]), Fraction(eta[i])] for i in range(r)]
    det = Fraction(1)
    for col in range(r):
        piv = next((k for k in range(col, r) if a[k][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for k in range(r):
            if k != col and a[k][col] != 0:
                f = a[k][col]
                a[k] = [x - f * y for x, y in zip(a[k], a[col])]
    half = Fraction(1, 2)
    zero = Fraction(0)
    for i in range(r):
        t, d = a[i][r], a[i][r + 1]
        if not (_dual_lt((-half, zero), (t, d)) and _dual_lt((t, d), (half, zero))):
            return Fraction(0)
    return 1 / abs(det)


def _solve_wide_dual(cols: list[Vec], pt, drv):
    """One rational solution of [cols] c = pt + eps*drv (free vars at 0)."""
    r = len(pt)
    m = len(cols)
    a = [[cols[j][i] for j in range(m)] + [Fraction(pt[i]), Fraction(drv[i])] for i in range(r)]
    pivots = []
    row = 0
    for col in range(m):
        piv = next((k for k in range(row, r) if a[k][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for k in range(r):
            if k != row and a[k][col] != 0:
                f = a[k][col]
                a[k] = [x - f * y for x, y in zip(a[k], a[row])]
        pivots.append(col)
        row += 1
        if row == r:
            break
    assert row == r, "positive roots must span the Cartan subalgebra"
    cs = [Fraction(0)] * m
    dcs = [Fraction(0)] * m
    for i, col in enumerate(pivots):
        cs[col] = a[i][m]
        dcs[col] = a[i][m + 1]
    return cs, dcs


# ---------------------------------------------------------------------------
# building the table
# ---------------------------------------------------------------------------

def lattice_table(rs: RootSystem) -> BoxSplineTable:
    """Exact values of b on the root lattice plus the coefficient data (K,
    r_kappa); cached on the root system."""
    cached = getattr(rs, "_boxspline_table", None)
    if cached is not None:
        return cached
    if rs.family == "A" and rs.rank == 1:
        # discontinuous special case: b is the indicator of [-alpha/2, alpha/2]
        table = BoxSplineTable(
            rs,
            values={(0,): Fraction(1)},
            integer_values={},
            K=[(0,)],
            r_coeffs={(0,): Fraction(1)},
        )
        rs._boxspline_table = table
        return table

    integer_values = _integer_point_values(rs)
    table = BoxSplineTable(rs, {}, integer_values, [], {})

    # centered values on Q: tau + rho lives on the half-integer grid
    kappas = _dominant_interior_lattice_points(rs)
    values: dict[IntVec, Fraction] = {}
    for kap in kappas:
        v = table._half_value(as_int_vec(smul(2, vadd(vec(kap), rs.rho))))
        assert v > 0, f"interior lattice value must be positive at {kap}"
        seen = set()
        for w in rs.weyl_elements:
            img = as_int_vec(w.apply_root(vec(kap)))
            if img not in seen:
                seen.add(img)
                values[img] = v
    table.values = values
    table.K = kappas
    table.r_coeffs = {
        kap: _r_coefficient(rs, table, kap) for kap in kappas
    }
    rs._boxspline_table = table
    return table


def _integer_point_values(rs: RootSystem) -> dict[IntVec, Fraction]:
    """Solve the refinement relations for the uncentered spline values at
    integer points, reduced by the symmetry group, normalized to sum 1."""
    zono = _Zonotope(rs)
    pts = zono.integer_interior_points()
    if not pts:
        raise ValueError(f"no interior integer points for {rs.type_label}")
    two_rho = as_int_vec(smul(2, rs.rho))
    sym = []
    for w in rs.weyl_elements:
        for neg in (1, -1):
            sym.append((w, neg))

    def orbit_rep(p: IntVec) -> IntVec:
        # act on centered doubled coordinates 2p - 2rho to stay integral
        best = None
        cen = vec(tuple(2 * a - b for a, b in zip(p, two_rho)))
        for w, neg in sym:
            img = w.apply_root(cen)
            cand = as_int_vec(smul(Fraction(1, 2), tuple(neg * x + b for x, b in zip(img, two_rho))))
            if best is None or cand < best:
                best = cand
        return best

    pset = set(pts)
    rep_of: dict[IntVec, IntVec] = {}
    for p in pts:
        rep_of[p] = orbit_rep(p)
    reps = sorted(set(rep_of.values()))
    assert all(r in pset for r in reps)
    rep_index = {r: i for i, r in enumerate(reps)}
    orbit_size: dict[IntVec, int] = {}
    for p in pts:
        orbit_size[rep_of[p]] = orbit_size.get(rep_of[p], 0) + 1

    rows: list[list[Fraction]] = []
    for q in (2, 3):
        mask = _scale_mask(rs, q)
        for rep in reps:
            coeff = [Fraction(0)] * len(reps)
            coeff[rep_index[rep]] += 1
            scaled = tuple(q * c for c in rep)
            for s in pts:
                c = mask.get(tuple(a - b for a, b in zip(scaled, s)))
                if c is not None:
                    coeff[rep_index[rep_of[s]]] -= c
            rows.append(coeff)

    null = _nullspace(rows, len(reps))
    if len(null) != 1:
        raise ValueError(
            f"refinement system for {rs.type_label} has solution space of "
            f"dimension {len(null)}; expected 1"
        )
    v = null[0]
    total = sum((v[rep_index[rep_of[p]]] for p in pts), start=Fraction(0))
    assert total != 0
    v = [x / total for x in v]
    out = {p: v[rep_index[rep_of[p]]] for p in pts}
    assert all(x > 0 for x in out.values()), "interior spline values must be positive"
    return out


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    a = [row[:] for row in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][col]
        a[rank] = [x * inv for x in a[rank]]
        for r in range(len(a)):
            if r != rank and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis


def _dominant_interior_lattice_points(rs: RootSystem) -> list[IntVec]:
    """Dominant root-lattice points strictly inside the hull of W(rho):
    exactly those kappa >= 0 (root coords) with rho - kappa > 0 there."""
    bounds = [int(c - Fraction(1, 2)) if c.denominator == 2 else int(c) - 1
              for c in rs.rho]
    out = []
    for cand in iproduct(*(range(b + 1) for b in bounds)):
        if all(r - c > 0 for r, c in zip(rs.rho, cand)):
            if rs.is_dominant_root_coords(vec(cand)):
                out.append(tuple(cand))
    return sorted(out)


def _r_coefficient(rs: RootSystem, table: BoxSplineTable, kap: IntVec) -> Fraction:
    """r_kappa = sum_w eps(w) b(kappa' - w(rho))."""
    kp = vadd(vec(kap), rs.rho)
    total = Fraction(0)
    for w in rs.weyl_elements:
        arg = vsub(kp, w.apply_root(rs.rho))
        if is_integral(arg):
            total += w.sign * table.values.get(as_int_vec(arg), Fraction(0))
    return total


def box_spline_density(rs: RootSystem, x_root: Sequence) -> Fraction:
    """Exact centered box spline density at a rational point of the Cartan
    subalgebra, in root coordinates."""
    return lattice_table(rs).density(x_root)


# ---------------------------------------------------------------------------
# slice-volume cross-check (kernel dimension <= 2)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SliceVolumeProblem:
    """The fiber polytope data of one density evaluation: the root matrix A,
    the target x, a particular rational solution t0 of A t = x, and an
    integer kernel basis N with A N = 0."""

    matrix: tuple[Vec, ...]
    target: Vec
    particular: Vec
    kernel: tuple[IntVec, ...]

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel)


def slice_volume_problem(rs: RootSystem, x_root: Sequence) -> SliceVolumeProblem:
    cols = [vec(a) for a in rs.positive_roots]
    x = vec(x_root)
    cs, _ = _solve_wide_dual(cols, x, vec([0] * rs.rank))
    kern = _integer_kernel(cols, rs.rank)
    return SliceVolumeProblem(tuple(cols), x, vec(cs), tuple(kern))


def _integer_kernel(cols: list[Vec], r: int) -> list[IntVec]:
    m = len(cols)
    a = [[cols[j][i] for j in range(m)] for i in range(r)]
    pivots = []
    row = 0
    for col in range(m):
        piv = next((k for k in range(row, r) if a[k][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for k in range(r):
            if k != row and a[k][col] != 0:
                f = a[k][col]
                a[k] = [x - f * y for x, y in zip(a[k], a[row])]
        pivots.append(col)
        row += 1
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * m
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        den = common_denominator(v)
        basis.append(as_int_vec(smul(den, v)))
    return basis


def slice_volume_density(rs: RootSystem, x_root: Sequence) -> Fraction:
    """Density via the closed-slice volume in kernel coordinates:
    vol(P) |det [A^T N]| / det(A A^T). Implemented for kernel dim <= 2."""
    prob = slice_volume_problem(rs, x_root)
    k = prob.kernel_dim
    m = len(prob.matrix)
    r = rs.rank
    half = Fraction(1, 2)
    t0 = prob.particular
    if any(c != 0 for c in vsub(_apply_cols(prob.matrix, t0), vec(x_root))):
        return Fraction(0)
    if k == 0:
        vol = Fraction(1) if all(-half <= c <= half for c in t0) else Fraction(0)
    else:
        rows = [tuple(prob.kernel[j][i] for j in range(k)) for i in range(m)]
        cons = []  # (coefficients a, lo, hi): lo <= a . z <= hi
        for i in range(m):
            cons.append((rows[i], -half - t0[i], half - t0[i]))
        vol = _interval_length(cons) if k == 1 else _polygon_area(cons)
    aat = [[dot(_row_of_cols(prob.matrix, i), _row_of_cols(prob.matrix, j))
            for j in range(r)] for i in range(r)]
    det_aat = _frac_det(aat)
    big = []
    for i in range(m):
        big.append(list(_col_as_row(prob.matrix, i, r)) + [Fraction(prob.kernel[j][i]) for j in range(k)])
    det_big = _frac_det(big)
    return vol * abs(det_big) / det_aat


def _apply_cols(cols, t):
    r = len(cols[0])
    return tuple(sum((cols[j][i] * t[j] for j in range(len(cols))), start=Fraction(0))
                 for i in range(r))


def _row_of_cols(cols, i):
    return tuple(c[i] for c in cols)


def _col_as_row(cols, i, r):
    return tuple(cols[i][j] for j in range(r))


def _frac_det(mat) -> Fraction:
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def _interval_length(cons) -> Fraction:
    lo, hi = None, None
    for (a,), l, h in cons:
        if a == 0:
            if not (l <= 0 <= h):
                return Fraction(0)
            continue
        x1, x2 = l / a, h / a
        if x1 > x2:
            x1, x2 = x2, x1
        lo = x1 if lo is None else max(lo, x1)
        hi = x2 if hi is None else min(hi, x2)
    if lo is None or hi is None or hi < lo:
        return Fraction(0)
    return hi - lo


def _polygon_area(cons) -> Fraction:
    """Area of an intersection of exact slabs in the plane by vertex
    enumeration plus the shoelace formula."""
    lines = []
    for a, lo, hi in cons:
        if a == (0, 0):
            if not (lo <= 0 <= hi):
                return Fraction(0)
            continue
        lines.append((a, lo))
        lines.append((a, hi))

    def feasible(z) -> bool:
        for a, lo, hi in cons:
            s = a[0] * z[0] + a[1] * z[1]
            if not (lo <= s <= hi):
                return False
        return True

    verts = set()
    for (a1, c1), (a2, c2) in combinations(lines, 2):
        det = Fraction(a1[0]) * a2[1] - Fraction(a1[1]) * a2[0]
        if det == 0:
            continue
        z = ((c1 * a2[1] - c2 * a1[1]) / det, (a1[0] * c2 - a2[0] * c1) / det)
        if feasible(z):
            verts.add(z)
    if len(verts) < 3:
        return Fraction(0)
    pts = sorted(verts)
    hull = _convex_hull(pts)
    area2 = Fraction(0)
    for i in range(len(hull)):
        x1, y1 = hull[i]
        x2, y2 = hull[(i + 1) % len(hull)]
        area2 += x1 * y2 - x2 * y1
    return abs(area2) / 2


def _convex_hull(pts):
    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


# ---------------------------------------------------------------------------
# Fourier side: symbol, R-polynomial, positivity scan
# ---------------------------------------------------------------------------

def fourier_symbol(rs: RootSystem, x_e: Sequence) -> float:
    """Fourier transform of the centered box spline measure,
    prod_alpha sin(<alpha,x>/2) / (<alpha,x>/2); removable singularities
    evaluate to 1."""
    out = 1.0
    for a in rs.positive_roots_e:
        u = float(rs.pair_e(a, [float(v) for v in x_e]))
        if abs(u) < 1e-14:
            continue
        out *= 2.0 * math.sin(u / 2.0) / u
    return out


def _rpoly_data(rs: RootSystem):
    table = lattice_table(rs)
    freqs = np.array([k for k in table.values], dtype=float)
    vals = np.array([float(v) for v in table.values.values()])
    return freqs, vals


def r_polynomial(rs: RootSystem, x_e: Sequence) -> float:
    """R(x) = sum_{tau in Q} b(tau) cos <tau, x> (a finite sum)."""
    table = lattice_table(rs)
    xf = [float(v) for v in x_e]
    total = 0.0
    for k, v in table.values.items():
        tau_e = rs.e_of_root(k)
        total += float(v) * math.cos(float(rs.pair_e(tau_e, xf)))
    return total


def coweight_basis_e(rs: RootSystem) -> list[Vec]:
    """Fundamental coweights (dual basis to the simple roots under the
    invariant form), in e-coordinates."""
    ginv = _frac_mat_inv([list(row) for row in rs.gram])
    return [rs.e_of_root(row) for row in ginv]


def _frac_mat_inv(mat):
    n = len(mat)
    a = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def r_polynomial_on_torus(rs: RootSystem, tgrid: np.ndarray) -> np.ndarray:
    """Vectorized R over torus coordinates: x = 2 pi sum_i t_i p_i with p_i
    the fundamental coweights, where <tau, p_i> is the i-th root coordinate
    of tau. tgrid has shape (npoints, rank)."""
    freqs, vals = _rpoly_data(rs)
    ang = 2.0 * np.pi * (tgrid @ freqs.T)
    return np.cos(ang) @ vals


def scan_r_positivity(rs: RootSystem, grid_resolution: int = 24,
                      refine: bool = True, threads: int = 1) -> tuple[float, Vec]:
    """Grid scan of R over a fundamental domain of 2 pi P-dual; returns the
    minimum and its location in e-coordinates. For non-unimodular systems a
    local grid refinement hunts the zero. The grid evaluation can be chunked
    over worker threads (the numpy kernels release the interpreter lock)."""
    r = rs.rank
    axes = [np.arange(grid_resolution) / grid_resolution for _ in range(r)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, r)
    if threads > 1 and len(mesh) > 4 * threads:
        from concurrent.futures import ThreadPoolExecutor

        chunks = np.array_split(mesh, threads)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda c: r_polynomial_on_torus(rs, c), chunks))
        valsgrid = np.concatenate(parts)
    else:
        valsgrid = r_polynomial_on_torus(rs, mesh)
    i = int(np.argmin(valsgrid))
    best_t = mesh[i].copy()
    best_v = float(valsgrid[i])
    if refine:
        width = 1.0 / grid_resolution
        for _ in range(12):
            local = [np.linspace(c - width, c + width, 9) for c in best_t]
            lm = np.stack(np.meshgrid(*local, indexing="ij"), axis=-1).reshape(-1, r)
            lv = r_polynomial_on_torus(rs, lm)
            j = int(np.argmin(lv))
            if float(lv[j]) < best_v:
                best_v = float(lv[j])
                best_t = lm[j].copy()
            width /= 4.0
    basis = coweight_basis_e(rs)
    x_e = [0.0] * rs.n_ambient
    for t, p in zip(best_t, basis):
        for i2 in range(rs.n_ambient):
            x_e[i2] += 2.0 * math.pi * float(t) * float(p[i2])
    return best_v, tuple(x_e)


def _symbol_vectorized(rs: RootSystem, pts: np.ndarray) -> np.ndarray:
    out = np.ones(len(pts))
    scale = float(rs.metric_scale)
    for a in rs.positive_roots_e:
        u = (pts @ np.array([float(c) for c in a])) * scale
        safe = np.where(np.abs(u) < 1e-14, 1.0, u)
        out *= np.where(np.abs(u) < 1e-14, 1.0, 2.0 * np.sin(safe / 2.0) / safe)
    return out


def poisson_sum_symbol(rs: RootSystem, x_e: Sequence, radius: int,
                       line_radius: int = 2_000_000) -> float:
    """Truncated Poisson sum sum_{eta in 2 pi P-dual} j^(1/2)(x + eta) over
    the coefficient box |m_i| <= radius; converges to R(x). The sum decays
    one order slower along the sublattices where a root pairing vanishes, so
    for rank-2 systems those lines are extended separately (much farther) to
    reach quadrature-level accuracy."""
    basis = coweight_basis_e(rs)
    bas = np.array([[2.0 * math.pi * float(p[i]) for i in range(rs.n_ambient)]
                    for p in basis])
    xf = np.array([float(v) for v in x_e])
    ranges = [np.arange(-radius, radius + 1)] * rs.rank
    mgrid = np.stack(np.meshgrid(*ranges, indexing="ij"), axis=-1).reshape(-1, rs.rank)
    total = 0.0
    for i in range(0, len(mgrid), 200_000):
        chunk = mgrid[i:i + 200_000]
        total += float(_symbol_vectorized(rs, xf[None, :] + chunk @ bas).sum())
    if rs.rank == 2 and line_radius > radius:
        directions = set()
        for q in rs.positive_roots:
            q0, q1 = int(q[0]), int(q[1])
            g = math.gcd(abs(q0), abs(q1))
            directions.add((q1 // g, -q0 // g))
        for d in directions:
            darr = np.array(d, dtype=float)
            ks = np.concatenate([np.arange(radius + 1, line_radius),
                                 -np.arange(radius + 1, line_radius)])
            for i in range(0, len(ks), 500_000):
                kk = ks[i:i + 500_000]
                pts = xf[None, :] + (kk[:, None] * darr[None, :]) @ bas
                total += float(_symbol_vectorized(rs, pts).sum())
    return total


# ---------------------------------------------------------------------------
# identity report
# ---------------------------------------------------------------------------

@dataclass
class IdentityReport:
    system: str
    checks: list[tuple[str, bool, str]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, ok, detail in self.checks if not ok]


def verify_identities(rs: RootSystem, n_float_samples: int = 100,
                      seed: int = 7, float_tol: float = 1e-9) -> IdentityReport:
    """Exact verification of the lattice identities tying b, the r-coefficients
    and the multiplicities together, plus the floating-point character
    expansion of R at random points."""
    table = lattice_table(rs)
    checks: list[tuple[str, bool, str]] = []

    mass = table.mass()
    checks.append(("partition_of_unity", mass == 1, f"sum b = {mass}"))

    ok = True
    detail = ""
    for tau, b in table.values.items():
        rhs = sum(
            (table.r_coeffs[kap] * weight_multiplicity(
                rs, _wt_tuple(rs, kap), _wt_tuple_point(rs, tau))
             for kap in table.K),
            start=Fraction(0),
        )
        if rhs != b:
            ok, detail = False, f"b({tau}) = {b} but sum_k r_k mult_k = {rhs}"
            break
    checks.append(("b_equals_r_mult", ok, detail))

    # both coupled relations between b and the r-coefficients
    ok = True
    detail = ""
    for tau, b in table.values.items():
        rhs = Fraction(0)
        for w in rs.weyl_elements:
            for kap in table.K:
                arg = vsub(vadd(vec(kap), rs.rho), w.apply_root(rs.rho))
                bv = table.values.get(as_int_vec(arg), Fraction(0)) if is_integral(arg) else Fraction(0)
                if bv:
                    rhs += w.sign * bv * weight_multiplicity(
                        rs, _wt_tuple(rs, kap), _wt_tuple_point(rs, tau))
        if rhs != b:
            ok, detail = False, f"first r-b relation fails at {tau}: {rhs} != {b}"
            break
    checks.append(("b_from_r_b_values", ok, detail))

    ok = True
    detail = ""
    for kap in table.K:
        rhs = Fraction(0)
        for w in rs.weyl_elements:
            for xi in table.K:
                arg = vsub(vadd(vec(kap), rs.rho), w.apply_root(rs.rho))
                if not is_integral(arg):
                    continue
                m = weight_multiplicity(rs, _wt_tuple(rs, xi), _wt_tuple_point(rs, as_int_vec(arg)))
                if m:
                    rhs += w.sign * table.r_coeffs[xi] * m
        if rhs != table.r_coeffs[kap]:
            ok, detail = False, f"second r-b relation fails at {kap}"
            break
    checks.append(("r_selfconsistency", ok, detail))

    # skew b-sum vs r-weighted tensor multiplicities on sampled pairs
    rng = random.Random(seed)
    ok = True
    detail = ""
    for _ in range(8):
        tau = tuple(rng.randint(0, 2) for _ in range(rs.rank))
        shift = vec(tuple(rng.randint(-1, 1) for _ in range(rs.rank)))
        nu_root = vadd(rs.weight_root_coords(tau), shift)
        nu_wt = rs.wt_of_root(nu_root)
        if not (is_integral(nu_wt) and all(c >= 0 for c in nu_wt)):
            continue
        nu = as_int_vec(nu_wt)
        lhs = Fraction(0)
        for w in rs.weyl_elements:
            arg = vsub(w.apply_root(rs.weight_prime(tau)), rs.weight_prime(nu))
            if is_integral(arg):
                lhs += w.sign * table.values.get(as_int_vec(arg), Fraction(0))
        rhs = sum(
            (table.r_coeffs[kap] * lr_coefficient(rs, tau, _wt_tuple(rs, kap), nu)
             for kap in table.K),
            start=Fraction(0),
        )
        if lhs != rhs:
            ok, detail = False, f"skew b-sum identity fails at tau={tau}, nu={nu}"
            break
    checks.append(("skew_b_vs_r_lr", ok, detail))

    # character expansion of R at random floating points
    from .multoracle import character_value

    ok = True
    detail = ""
    worst = 0.0
    for _ in range(n_float_samples):
        x = [rng.uniform(-math.pi, math.pi) for _ in range(rs.n_ambient)]
        if rs.family == "A":
            shift = sum(x) / len(x)
            x = [v - shift for v in x]
        lhs = r_polynomial(rs, x)
        rhs = sum(
            float(table.r_coeffs[kap]) * character_value(rs, _wt_tuple(rs, kap), x).real
            for kap in table.K
        )
        worst = max(worst, abs(lhs - rhs))
    if worst > float_tol:
        ok, detail = False, f"character expansion of R off by {worst}"
    checks.append(("r_character_expansion", ok, f"max dev {worst:.2e}"))

    return IdentityReport(rs.type_label, checks)


def _wt_tuple(rs: RootSystem, root_pt: IntVec) -> IntVec:
    return as_int_vec(rs.wt_of_root(vec(root_pt)))


def _wt_tuple_point(rs: RootSystem, root_pt: IntVec) -> IntVec:
    return as_int_vec(rs.wt_of_root(vec(root_pt)))
