"""Combinatorial multiplicity formulas: Kostant partition function, weight
multiplicities, tensor product (Littlewood-Richardson) coefficients, triple
multiplicities, characters.

All multiplicity routes here reduce to the Kostant partition function, which
is evaluated by memoized dynamic programming over a fixed ordering of the
positive roots. Tensor product coefficients are computed by the signed Weyl
sum over weight multiplicities of one factor (the expansion of the
Kostant-Steinberg double sum); the direct double sum is also provided and the
two are cross-checked in the test suite.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from typing import Sequence

from .core import IntVec, LatticeMeasure, Vec, as_int_vec, is_integral, vadd, vec, vsub
from .rootsys import RootSystem

_TABLE_CAP = 4_000_000  # candidate box size guard for full weight tables


# ---------------------------------------------------------------------------
# Kostant partition function
# ---------------------------------------------------------------------------

def kostant_partition(rs: RootSystem, tau: Sequence) -> int:
    """Number of multisets of positive roots summing to tau.

    tau is given in root coordinates and must lie in the root lattice Q.
    """
    t = vec(tau)
    if not is_integral(t):
        raise ValueError(f"{tau} is not in the root lattice")
    return _part(rs, as_int_vec(t))


_BOX_THRESHOLD = 30_000   # closure size above which a dense table is cheaper
_BOX_CAP = 40_000_000     # never build dense tables beyond this many cells


def _part(rs: RootSystem, tau: IntVec) -> int:
    if any(c < 0 for c in tau):
        return 0
    roots = getattr(rs, "_part_roots", None)
    if roots is None:
        roots = tuple(sorted(as_int_vec(a) for a in rs.positive_roots))
        rs._part_roots = roots
        rs._part_memo = {}
        rs._part_box = None
    m = len(roots)
    box = rs._part_box
    if box is not None and all(t <= b for t, b in zip(tau, box[0])):
        return int(box[1][tau])
    closure = m
    for c in tau:
        closure *= c + 1
    if closure > _BOX_THRESHOLD:
        box = _grow_part_box(rs, tau)
        if box is not None:
            return int(box[1][tau])
    memo = rs._part_memo
    goal = (tau, m)
    if goal in memo:
        return memo[goal]
    stack = [goal]
    while stack:
        t, i = stack[-1]
        if (t, i) in memo:
            stack.pop()
            continue
        if i == 0:
            memo[(t, 0)] = 1 if not any(t) else 0
            stack.pop()
            continue
        r = roots[i - 1]
        t2 = tuple(a - b for a, b in zip(t, r))
        use = t2 if all(c >= 0 for c in t2) else None
        pending = []
        if (t, i - 1) not in memo:
            pending.append((t, i - 1))
        if use is not None and (use, i) not in memo:
            pending.append((use, i))
        if pending:
            stack.extend(pending)
            continue
        memo[(t, i)] = memo[(t, i - 1)] + (memo[(use, i)] if use is not None else 0)
        stack.pop()
    return memo[goal]


def _knapsack_sweep(rs: RootSystem, bound: IntVec, dtype):
    import numpy as np

    dp = np.zeros(tuple(b + 1 for b in bound), dtype=dtype)
    dp[(0,) * rs.rank] = 1
    for root in rs._part_roots:
        axis = next(i for i, c in enumerate(root) if c > 0)
        step = root[axis]
        for i in range(step, bound[axis] + 1):
            src = [slice(None)] * rs.rank
            dst = [slice(None)] * rs.rank
            src[axis] = i - step
            dst[axis] = i
            ok = True
            for j in range(rs.rank):
                if j == axis:
                    continue
                c = root[j]
                if c > bound[j]:
                    ok = False
                    break
                if c:
                    src[j] = slice(0, bound[j] + 1 - c)
                    dst[j] = slice(c, bound[j] + 1)
            if ok:
                dp[tuple(dst)] += dp[tuple(src)]
    return dp


def _grow_part_box(rs: RootSystem, tau: IntVec):
    """Dense partition-count table over a coordinate box containing tau,
    built by one unbounded-knapsack sweep per positive root. Uses int64 with
    a float64 twin sweep certifying all values stay below 2^53 (so the int64
    arithmetic is exact); falls back to exact big integers when they do not.
    Grows geometrically; None above the cell cap."""
    import numpy as np

    old = rs._part_box
    if old is not None:
        bound = tuple(max(int(b * 1.3) + 2, t) for b, t in zip(old[0], tau))
    else:
        bound = tuple(t + max(2, t // 4) for t in tau)
    cells = 1
    for b in bound:
        cells *= b + 1
    if cells > _BOX_CAP:
        return None
    magnitude = _knapsack_sweep(rs, bound, "float64")
    exact64 = float(magnitude.max()) < 2.0**53
    del magnitude
    if not exact64 and cells > 4_000_000:
        return None
    dp = _knapsack_sweep(rs, bound, "int64" if exact64 else object)
    rs._part_box = (bound, dp)
    return rs._part_box


# ---------------------------------------------------------------------------
# weight multiplicities (Kostant multiplicity formula)
# ---------------------------------------------------------------------------

def weight_multiplicity(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> int:
    """Multiplicity of the weight mu in the irreducible module V_lam:
    sum_w eps(w) Part(w(lam') - mu'). Zero off the translate lam + Q."""
    rs.assert_dominant_weight(lam, "lambda")
    lam = tuple(int(c) for c in lam)
    mu = tuple(int(c) for c in mu)
    mu_root = rs.weight_root_coords(mu)
    lam_root = rs.weight_root_coords(lam)
    if not is_integral(vsub(lam_root, mu_root)):
        return 0
    return _mult_lookup(rs, lam, lam_root, mu_root)


def _sym_power_info(rs: RootSystem, lam: Sequence[int]) -> tuple[int, int] | None:
    """(power, direction) when V_lam is a symmetric power of the vector
    representation of type A or its dual: lam = a w_1 (dir +1) or
    lam = a w_rank (dir -1). Weight multiplicities are then 0/1 with a
    closed-form membership test, which keeps huge highest weights cheap."""
    if rs.family != "A":
        return None
    lam = tuple(int(c) for c in lam)
    if all(c == 0 for c in lam[1:]) and lam[0] > 0:
        return lam[0], 1
    if all(c == 0 for c in lam[:-1]) and lam[-1] > 0:
        return lam[-1], -1
    return None


def _sym_power_mult(rs: RootSystem, info: tuple[int, int], xi_root: Vec) -> int:
    a, direction = info
    n = rs.n_ambient
    e = rs.e_of_root(xi_root)
    shift = Fraction(a, n)
    for c in e:
        v = direction * c + shift
        if v.denominator != 1 or v < 0:
            return 0
    return 1


def _mult_lookup(rs: RootSystem, lam: IntVec, lam_root: Vec, xi_root: Vec) -> int:
    """mult_lam at the point xi (root coordinates, in lam + Q), memoized."""
    cache = rs._mult_tables.setdefault(lam, {})
    key = as_int_vec(vsub(xi_root, lam_root))
    hit = cache.get(key)
    if hit is not None:
        return hit
    info = _sym_power_info(rs, lam)
    if info is not None:
        m = _sym_power_mult(rs, info, xi_root)
        cache[key] = m
        return m
    aux = cache.get(("aux",))
    if aux is None:
        lam_prime = vadd(lam_root, rs.rho)
        lo = list(lam_root)
        hi = list(lam_root)
        for w in rs.weyl_elements:
            img = w.apply_root(lam_root)
            for i, v in enumerate(img):
                lo[i] = min(lo[i], v)
                hi[i] = max(hi[i], v)
        orbit = [(w.sign, w.apply_root(lam_prime)) for w in rs.weyl_elements]
        aux = (tuple(lo), tuple(hi), orbit)
        cache[("aux",)] = aux
    lo, hi, orbit = aux
    # cheap bounding-box rejection, then the exact hull test
    if any(x < a or x > b for x, a, b in zip(xi_root, lo, hi)):
        cache[key] = 0
        return 0
    xi_plus, _, _ = rs.dominant_representative(xi_root)
    gap = vsub(lam_root, xi_plus)
    if not (is_integral(gap) and all(c >= 0 for c in gap)):
        cache[key] = 0
        return 0
    mu_prime = vadd(xi_root, rs.rho)
    total = 0
    for sign, wlp in orbit:
        arg = vsub(wlp, mu_prime)
        if not is_integral(arg):
            continue
        p = _part(rs, as_int_vec(arg))
        if p:
            total += sign * p
    cache[key] = total
    return total


def weight_multiplicity_at_point(rs: RootSystem, lam: Sequence[int],
                                 xi_root: Sequence) -> int:
    """Weight multiplicity of V_lam at a point given in root coordinates;
    zero off the translate lam + Q."""
    lam = tuple(int(c) for c in lam)
    lam_root = rs.weight_root_coords(lam)
    xi = vec(xi_root)
    if not is_integral(vsub(xi, lam_root)):
        return 0
    return _mult_lookup(rs, lam, lam_root, xi)


def weights_of_irrep(rs: RootSystem, lam: Sequence[int]) -> dict[IntVec, int]:
    """Full weight diagram of V_lam as a map {root-coordinate offset from
    lam: multiplicity} over all weights (not just dominant ones)."""
    rs.assert_dominant_weight(lam, "lambda")
    lam = tuple(int(c) for c in lam)
    full = rs._mult_tables.get(("full", lam))
    if full is not None:
        return full
    lam_root = rs.weight_root_coords(lam)
    w0lam = rs.longest_element.apply_root(lam_root)
    bound = as_int_vec(vsub(lam_root, w0lam))
    size = 1
    for b in bound:
        size *= b + 1
    if size > _TABLE_CAP:
        raise ValueError(f"weight table for {lam} too large ({size} candidates)")
    # integer arithmetic throughout: dominance via weight coordinates,
    # orbit images via w(lam) - lam offsets (always in Q)
    r = rs.rank
    cartan_t = [[int(rs._wt_of_root_mat[i][j]) for j in range(r)] for i in range(r)]
    wshifts = []
    for w in rs.weyl_elements:
        wshifts.append((
            as_int_vec(vsub(w.apply_root(lam_root), lam_root)),
            tuple(tuple(int(x) for x in row) for row in w.root_matrix),
        ))
    table: dict[IntVec, int] = {}
    for c in iproduct(*(range(b + 1) for b in bound)):
        wt_ok = True
        for i in range(r):
            row = cartan_t[i]
            acc = lam[i]
            for j in range(r):
                if c[j]:
                    acc -= row[j] * c[j]
            if acc < 0:
                wt_ok = False
                break
        if not wt_ok:
            continue
        m = _mult_lookup(rs, lam, lam_root, vsub(lam_root, vec(c)))
        if m == 0:
            continue
        for shift, mat in wshifts:
            wc = tuple(sum(row[j] * c[j] for j in range(r) if c[j]) for row in mat)
            key = tuple(s - x for s, x in zip(shift, wc))
            table[key] = m
    rs._mult_tables[("full", lam)] = table
    return table


def dimension(rs: RootSystem, lam: Sequence[int]) -> int:
    """Dimension of V_lam by the Weyl dimension formula (exact)."""
    rs.assert_dominant_weight(lam, "lambda")
    lp = rs.weight_prime(lam)
    out = Fraction(1)
    for a in rs.positive_roots:
        out *= rs.pair(lp, a) / rs.pair(rs.rho, a)
    assert out.denominator == 1
    return out.numerator


# ---------------------------------------------------------------------------
# tensor product multiplicities
# ---------------------------------------------------------------------------

def compatible(rs: RootSystem, lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> bool:
    """Necessary support condition: lam + mu - nu in the root lattice."""
    d = vsub(vadd(rs.weight_root_coords(lam), rs.weight_root_coords(mu)),
             rs.weight_root_coords(nu))
    return is_integral(d)


def _table_cost(rs: RootSystem, lam: Sequence[int]) -> int:
    if _sym_power_info(rs, lam) is not None:
        return 1
    lam_root = rs.weight_root_coords(lam)
    bound = vsub(lam_root, rs.longest_element.apply_root(lam_root))
    size = 1
    for b in bound:
        size *= int(b) + 1
    return size


def lr_coefficient(rs: RootSystem, lam: Sequence[int], mu: Sequence[int],
                   nu: Sequence[int]) -> int:
    """Tensor product multiplicity of V_nu in V_lam (x) V_mu.

    Evaluates the signed Weyl sum C = sum_w eps(w) mult_s(nu' - w(b')) where
    (s, b) is (lam, mu) ordered so the weight diagram of V_s is the smaller;
    this is the Kostant-Steinberg double sum with one Weyl sum folded into a
    weight multiplicity. Always >= 0; zero for incompatible triples.
    """
    rs.assert_dominant_weight(lam, "lambda")
    rs.assert_dominant_weight(mu, "mu")
    rs.assert_dominant_weight(nu, "nu")
    if not compatible(rs, lam, mu, nu):
        return 0
    small, big = (lam, mu) if _table_cost(rs, lam) <= _table_cost(rs, mu) else (mu, lam)
    small = tuple(int(c) for c in small)
    nu_prime = rs.weight_prime(nu)
    big_prime = rs.weight_prime(big)
    small_root = rs.weight_root_coords(small)
    total = 0
    for w in rs.weyl_elements:
        xi = vsub(nu_prime, w.apply_root(big_prime))
        m = _mult_lookup(rs, small, small_root, xi)
        if m:
            total += w.sign * m
    return total


def lr_coefficient_steinberg(rs: RootSystem, lam: Sequence[int], mu: Sequence[int],
                             nu: Sequence[int]) -> int:
    """Direct Kostant-Steinberg double Weyl sum
    sum_{w,w'} eps(ww') Part(w(lam') + w'(mu') - nu' - rho)."""
    rs.assert_dominant_weight(lam, "lambda")
    rs.assert_dominant_weight(mu, "mu")
    rs.assert_dominant_weight(nu, "nu")
    if not compatible(rs, lam, mu, nu):
        return 0
    shift = vadd(rs.weight_prime(nu), rs.rho)
    lam_imgs = [(w.sign, w.apply_root(rs.weight_prime(lam))) for w in rs.weyl_elements]
    mu_imgs = [(w.sign, w.apply_root(rs.weight_prime(mu))) for w in rs.weyl_elements]
    total = 0
    for s1, a in lam_imgs:
        for s2, b in mu_imgs:
            arg = vsub(vadd(a, b), shift)
            if not is_integral(arg):
                continue
            p = _part(rs, as_int_vec(arg))
            if p:
                total += s1 * s2 * p
    return total


def skew_product_measure(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> LatticeMeasure:
    """The W-skew-invariant measure sum_nu C_{lam mu}^nu sum_w eps(w)
    delta_{w(nu')}, supported on lam + mu + rho + Q.

    Built as (weight measure of the smaller factor) * (signed Weyl orbit of
    the other shifted highest weight); the value at a strictly dominant point
    nu' is exactly C_{lam mu}^nu.
    """
    small, big = (lam, mu) if _table_cost(rs, lam) <= _table_cost(rs, mu) else (mu, lam)
    small = tuple(int(c) for c in small)
    table = weights_of_irrep(rs, small)
    big_prime = rs.weight_prime(big)
    base = vadd(rs.weight_root_coords(small), big_prime)
    entries: dict[IntVec, int] = {}
    for w in rs.weyl_elements:
        korb = as_int_vec(vsub(w.apply_root(big_prime), big_prime))
        s = w.sign
        for k, m in table.items():
            key = tuple(a + b for a, b in zip(k, korb))
            entries[key] = entries.get(key, 0) + s * m
    return LatticeMeasure(base, {k: Fraction(v) for k, v in entries.items() if v}, "Q")


def lr_table(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> dict[IntVec, int]:
    """All nonzero C_{lam mu}^nu as a map {nu (weight coordinates): C}."""
    meas = skew_product_measure(rs, lam, mu)
    out: dict[IntVec, int] = {}
    for k, v in meas.entries.items():
        pt = vadd(meas.base, k)
        wt = rs.wt_of_root(pt)
        if all(c > 0 for c in wt):
            nu = as_int_vec(vsub(wt, vec([1] * rs.rank)))
            c = Fraction(v)
            assert c.denominator == 1 and c.numerator > 0
            out[nu] = c.numerator
    return out


def triple_multiplicity(rs: RootSystem, lam: Sequence[int], mu: Sequence[int],
                        kap: Sequence[int], nu: Sequence[int]) -> int:
    """Multiplicity of V_nu inside V_lam (x) V_mu (x) V_kap:
    sum_tau C_{lam mu}^tau C_{tau kap}^nu over dominant tau."""
    rs.assert_dominant_weight(kap, "kappa")
    rs.assert_dominant_weight(nu, "nu")
    total = 0
    for tau, c1 in lr_table(rs, lam, mu).items():
        c2 = lr_coefficient(rs, tau, kap, nu)
        if c2:
            total += c1 * c2
    return total


def skew_multiplicity(rs: RootSystem, lam: Sequence[int], mu: Sequence[int],
                      xi_root: Sequence) -> int:
    """Signed multiplicity eps(w) C_{lam mu}^tau at the point xi = w(tau'),
    and 0 when xi lies on a chamber wall. xi must be in lam + mu + rho + Q."""
    xi = vec(xi_root)
    base = vadd(vadd(rs.weight_root_coords(lam), rs.weight_root_coords(mu)), rs.rho)
    if not is_integral(vsub(xi, base)):
        raise ValueError("point is not on the shifted lattice lam + mu + rho + Q")
    xi_plus, w, on_wall = rs.dominant_representative(xi)
    if on_wall:
        return 0
    tau_wt = rs.wt_of_root(vsub(xi_plus, rs.rho))
    tau = as_int_vec(tau_wt)
    return w.sign * lr_coefficient(rs, lam, mu, tau)


# ---------------------------------------------------------------------------
# characters and degenerations
# ---------------------------------------------------------------------------

def character_value(rs: RootSystem, lam: Sequence[int], x_e: Sequence) -> complex:
    """Character chi_lam(e^{ix}) = sum_mu mult_lam(mu) e^{i<mu, x>} evaluated
    in floating point; x in e-coordinates."""
    import cmath

    table = weights_of_irrep(rs, lam)
    lam_root = rs.weight_root_coords(lam)
    total = 0j
    for k, m in table.items():
        mu_e = rs.e_of_root(vadd(lam_root, k))
        ang = float(rs.pair_e(mu_e, [float(v) for v in x_e]))
        total += m * cmath.exp(1j * ang)
    return total


def mult_degeneration_check(rs: RootSystem, lam: Sequence[int], mu: Sequence[int],
                            k: int) -> bool:
    """True iff mult_lam(mu) = C_{lam, k rho}^{mu + k rho}. Holds for all
    sufficiently large k. rho is a dominant weight here (its weight
    coordinates are all 1), so k rho is a weight for every natural k."""
    if k < 0:
        raise ValueError("k must be a natural number")
    if not is_integral(rs.rho_wt):  # pragma: no cover - never in A..D
        raise ValueError("rho is not a weight in this realization; use even k")
    mu_shift = tuple(int(c) + k for c in mu)
    if any(c < 0 for c in mu_shift):
        raise ValueError(f"mu + k rho = {mu_shift} is not a dominant weight")
    krho = (k,) * rs.rank
    return weight_multiplicity(rs, lam, mu) == lr_coefficient(rs, lam, krho, mu_shift)
