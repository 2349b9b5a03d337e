"""Classical root systems A/B/C/D with explicitly enumerated Weyl groups.

Coordinates
-----------
Every root system is realized in an ambient coordinate space ("e-coordinates"):
permutation coordinates of R^n for type A (vectors summing to zero, n = rank+1)
and R^rank for types B, C, D. The invariant inner product is a rational
multiple of the standard dot product, scaled so long roots have squared
length 2.

Internally, points of the Cartan subalgebra are stored as rational vectors in
the *simple-root basis* ("root coordinates"), so membership in the root
lattice Q is an integrality test. Weights are integer vectors in the
fundamental-weight basis ("weight coordinates"); the Weyl vector rho is
(1, ..., 1) there. Exact conversion matrices between the three bases are
precomputed at build time.

Weyl group elements are enumerated once per system as signed permutations and
stored with their integer matrices on root coordinates and their signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterator, Sequence

from .core import (
    IntVec,
    Vec,
    as_int_vec,
    dot,
    is_integral,
    smul,
    vadd,
    vec,
    vsub,
)

RANK_CAPS = {"A": (1, 7), "B": (2, 5), "C": (2, 5), "D": (3, 5)}


@dataclass(frozen=True)
class WeylElement:
    """One Weyl group element: signed permutation on e-coordinates, integer
    matrix on root coordinates, and determinant sign."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]
    root_matrix: tuple[IntVec, ...]
    sign: int

    def apply_root(self, x: Sequence) -> Vec:
        return tuple(sum((Fraction(m) * xi for m, xi in zip(row, x)), start=Fraction(0))
                     for row in self.root_matrix)

    def apply_e(self, x: Sequence) -> tuple:
        return tuple(s * x[p] for p, s in zip(self.perm, self.signs))

    @property
    def is_identity(self) -> bool:
        return all(s == 1 for s in self.signs) and all(p == i for i, p in enumerate(self.perm))


class RootSystem:
    """Immutable combinatorial datum of one simple classical Lie algebra."""

    def __init__(self, family: str, rank: int):
        lo, hi = RANK_CAPS.get(family, (None, None))
        if lo is None or not (lo <= rank <= hi):
            raise ValueError(
                f"unsupported algebra {family}{rank}: supported ranks are "
                + ", ".join(f"{f}{a}..{f}{b}" for f, (a, b) in RANK_CAPS.items())
            )
        self.family = family
        self.rank = rank
        self.type_label = f"{family}{rank}"
        self.metric_scale = Fraction(1, 2) if family == "C" else Fraction(1)
        self._build_roots()
        self._build_conversions()
        self._build_weyl()
        self._part_memo: dict = {(0,) * rank: 1}
        self._mult_tables: dict = {}
        self._check_invariants()

    # -- construction ------------------------------------------------------

    def _build_roots(self):
        fam, r = self.family, self.rank
        if fam == "A":
            n = r + 1
            pos = [self._unit(n, i, 1, j, -1) for i in range(n) for j in range(i + 1, n)]
            simple = [self._unit(n, i, 1, i + 1, -1) for i in range(r)]
        elif fam == "B":
            n = r
            pos = [self._unit(n, i, 1, j, -1) for i in range(n) for j in range(i + 1, n)]
            pos += [self._unit(n, i, 1, j, 1) for i in range(n) for j in range(i + 1, n)]
            pos += [self._unit(n, i, 1) for i in range(n)]
            simple = [self._unit(n, i, 1, i + 1, -1) for i in range(r - 1)]
            simple.append(self._unit(n, r - 1, 1))
        elif fam == "C":
            n = r
            pos = [self._unit(n, i, 1, j, -1) for i in range(n) for j in range(i + 1, n)]
            pos += [self._unit(n, i, 1, j, 1) for i in range(n) for j in range(i + 1, n)]
            pos += [self._unit(n, i, 2) for i in range(n)]
            simple = [self._unit(n, i, 1, i + 1, -1) for i in range(r - 1)]
            simple.append(self._unit(n, r - 1, 2))
        else:  # D
            n = r
            pos = [self._unit(n, i, 1, j, -1) for i in range(n) for j in range(i + 1, n)]
            pos += [self._unit(n, i, 1, j, 1) for i in range(n) for j in range(i + 1, n)]
            simple = [self._unit(n, i, 1, i + 1, -1) for i in range(r - 1)]
            simple.append(self._unit(n, r - 2, 1, r - 1, 1))
        self.n_ambient = len(pos[0])
        self.positive_roots_e: tuple[Vec, ...] = tuple(vec(p) for p in pos)
        self.simple_roots_e: tuple[Vec, ...] = tuple(vec(s) for s in simple)
        self.n_positive = len(pos)
        self.rho_e = smul(Fraction(1, 2), self._sum_vectors(self.positive_roots_e))

    @staticmethod
    def _unit(n: int, i: int, ci: int, j: int | None = None, cj: int | None = None):
        v = [0] * n
        v[i] = ci
        if j is not None:
            v[j] = cj
        return v

    @staticmethod
    def _sum_vectors(vs):
        acc = vec([0] * len(vs[0]))
        for v in vs:
            acc = vadd(acc, v)
        return acc

    def _build_conversions(self):
        r, n = self.rank, self.n_ambient
        S = [[self.simple_roots_e[j][i] for j in range(r)] for i in range(n)]  # n x r
        # exact pseudo-inverse (S^T S)^{-1} S^T maps the root span back to
        # root coordinates; for B/C/D it is the plain inverse
        StS = [[dot([S[k][i] for k in range(n)], [S[k][j] for k in range(n)])
                for j in range(r)] for i in range(r)]
        StS_inv = _invert(StS)
        self._root_of_e_mat = [
            [sum((StS_inv[i][k] * S[j][k] for k in range(r)), start=Fraction(0))
             for j in range(n)]
            for i in range(r)
        ]
        self._e_of_root_mat = S
        c = self.metric_scale
        self.gram = tuple(
            tuple(c * dot(self.simple_roots_e[i], self.simple_roots_e[j]) for j in range(r))
            for i in range(r)
        )
        # weight coordinates: wt_i(x) = 2 <x, alpha_i> / <alpha_i, alpha_i>
        norms = [self.gram[i][i] for i in range(r)]
        self._wt_of_root_mat = [
            [2 * self.gram[j][i] / norms[i] for j in range(r)] for i in range(r)
        ]
        self._root_of_wt_mat = _invert(self._wt_of_root_mat)
        self.positive_roots = tuple(self.root_of_e(a) for a in self.positive_roots_e)
        self.simple_roots = tuple(self.root_of_e(a) for a in self.simple_roots_e)
        self.rho = self.root_of_e(self.rho_e)
        self.rho_wt = self.wt_of_root(self.rho)

    def _weyl_generators(self) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
        n, fam = self.n_ambient, self.family
        if fam == "A":
            for p in permutations(range(n)):
                yield p, (1,) * n
        elif fam in ("B", "C"):
            for p in permutations(range(n)):
                for s in product((1, -1), repeat=n):
                    yield p, s
        else:  # D: even number of sign flips
            for p in permutations(range(n)):
                for s in product((1, -1), repeat=n):
                    if s.count(-1) % 2 == 0:
                        yield p, s

    def _build_weyl(self):
        elems = []
        for p, s in self._weyl_generators():
            sign = _perm_parity(p)
            for si in s:
                sign *= si
            cols = []
            for alpha in self.simple_roots_e:
                img = tuple(si * alpha[pi] for pi, si in zip(p, s))
                cols.append(self.root_of_e(img))
            mat = tuple(
                as_int_vec(tuple(cols[j][i] for j in range(self.rank)))
                for i in range(self.rank)
            )
            elems.append(WeylElement(p, s, mat, sign))
        self.weyl_elements: tuple[WeylElement, ...] = tuple(elems)
        self.weyl_order = len(elems)
        self.identity = next(w for w in elems if w.is_identity)
        mrho = vec([-x for x in self.rho])
        self.longest_element = next(
            w for w in elems if w.apply_root(self.rho) == mrho
        )

    def _check_invariants(self):
        fam, r = self.family, self.rank
        expected_pos = {"A": r * (r + 1) // 2, "B": r * r, "C": r * r, "D": r * (r - 1)}[fam]
        assert self.n_positive == expected_pos
        expected_w = {
            "A": _factorial(r + 1),
            "B": 2**r * _factorial(r),
            "C": 2**r * _factorial(r),
            "D": 2 ** (r - 1) * _factorial(r),
        }[fam]
        assert self.weyl_order == expected_w
        long_norm = max(self.pair(a, a) for a in self.positive_roots)
        assert long_norm == 2
        assert all(x == 1 for x in self.rho_wt)

    # -- coordinate conversions --------------------------------------------

    def root_of_e(self, x_e: Sequence) -> Vec:
        x = vec(x_e)
        return tuple(
            sum((m * xi for m, xi in zip(row, x)), start=Fraction(0))
            for row in self._root_of_e_mat
        )

    def e_of_root(self, x_root: Sequence) -> Vec:
        x = vec(x_root)
        return tuple(
            sum((row[j] * x[j] for j in range(self.rank)), start=Fraction(0))
            for row in self._e_of_root_mat
        )

    def wt_of_root(self, x_root: Sequence) -> Vec:
        x = vec(x_root)
        return tuple(
            sum((m * xi for m, xi in zip(row, x)), start=Fraction(0))
            for row in self._wt_of_root_mat
        )

    def root_of_wt(self, x_wt: Sequence) -> Vec:
        x = vec(x_wt)
        return tuple(
            sum((m * xi for m, xi in zip(row, x)), start=Fraction(0))
            for row in self._root_of_wt_mat
        )

    # -- pairings ------------------------------------------------------------

    def pair(self, x_root: Sequence, y_root: Sequence) -> Fraction:
        """Invariant inner product, arguments in root coordinates."""
        x, y = vec(x_root), vec(y_root)
        total = Fraction(0)
        for i in range(self.rank):
            if x[i]:
                row = self.gram[i]
                total += x[i] * sum((row[j] * y[j] for j in range(self.rank)), start=Fraction(0))
        return total

    def pair_e(self, x_e: Sequence, y_e: Sequence):
        """Invariant inner product on e-coordinates (floats allowed)."""
        return self.metric_scale * sum(a * b for a, b in zip(x_e, y_e, strict=True))

    def discriminant_e(self, x_e: Sequence):
        """Product of <alpha, x> over positive roots, x in e-coordinates."""
        out = 1.0 if any(isinstance(v, float) for v in x_e) else Fraction(1)
        for a in self.positive_roots_e:
            out = out * self.pair_e(a, x_e)
        return out

    # -- dominance and weights ----------------------------------------------

    def is_dominant_root_coords(self, x_root: Sequence) -> bool:
        return all(c >= 0 for c in self.wt_of_root(x_root))

    def is_strictly_dominant_root_coords(self, x_root: Sequence) -> bool:
        return all(c > 0 for c in self.wt_of_root(x_root))

    def weight_root_coords(self, lam: Sequence[int]) -> Vec:
        if len(lam) != self.rank:
            raise ValueError(f"weight needs {self.rank} coordinates, got {len(lam)}")
        return self.root_of_wt(vec(lam))

    def weight_prime(self, lam: Sequence[int]) -> Vec:
        """Root coordinates of lambda + rho."""
        return vadd(self.weight_root_coords(lam), self.rho)

    def assert_dominant_weight(self, lam: Sequence[int], name: str = "weight"):
        if len(lam) != self.rank or any(int(c) != c for c in lam):
            raise ValueError(f"{name} must be an integer vector of length {self.rank}")
        if any(c < 0 for c in lam):
            raise ValueError(f"{name} {tuple(lam)} is not dominant")

    def in_root_lattice(self, x_root: Sequence) -> bool:
        return is_integral(vec(x_root))

    def in_weight_lattice(self, x_root: Sequence) -> bool:
        return is_integral(self.wt_of_root(x_root))

    def weight_conjugate(self, lam: Sequence[int]) -> IntVec:
        """Highest weight of the dual representation: -w0(lambda)."""
        x = self.weight_root_coords(lam)
        y = tuple(-v for v in self.longest_element.apply_root(x))
        return as_int_vec(self.wt_of_root(y))

    # -- Weyl group actions ---------------------------------------------------

    def weyl_orbit(self, x_root: Sequence) -> Iterator[tuple[WeylElement, Vec]]:
        """All |W| pairs (w, w(x)); images repeat when x is on a wall."""
        x = vec(x_root)
        for w in self.weyl_elements:
            yield w, w.apply_root(x)

    def dominant_representative(self, x_root: Sequence) -> tuple[Vec, WeylElement, bool]:
        """Return (x+, w, on_wall) with w(x) = x+ dominant; on_wall is True
        iff the stabilizer of x is nontrivial."""
        x = vec(x_root)
        word: list[int] = []
        while True:
            wt = self.wt_of_root(x)
            i = next((k for k in range(self.rank) if wt[k] < 0), None)
            if i is None:
                break
            x = vsub(x, smul(wt[i], self.simple_roots[i]))
            word.append(i)
        on_wall = any(c == 0 for c in self.wt_of_root(x))
        w = self.identity
        if word:
            # fold the reversed word: x+ = s_{i_k} ... s_{i_1} (x)
            mat_total = None
            for i in reversed(word):
                refl = self._simple_reflection_matrix(i)
                mat_total = refl if mat_total is None else _int_mat_mul(mat_total, refl)
            sign = -1 if len(word) % 2 else 1
            w = self._element_for_matrix(mat_total, sign)
        return x, w, on_wall

    def dominant_representative_wt(self, wt: Sequence[int]) -> tuple[IntVec, int, bool]:
        """Fast integer-only variant of dominant_representative for weight
        lattice points given in weight coordinates: returns (dominant weight
        coordinates, sign of the reducing Weyl element, on_wall)."""
        cartan_cols = getattr(self, "_cartan_cols", None)
        if cartan_cols is None:
            # column j = weight coordinates of alpha_j
            cartan_cols = tuple(
                tuple(int(self._wt_of_root_mat[i][j]) for i in range(self.rank))
                for j in range(self.rank)
            )
            self._cartan_cols = cartan_cols
        x = list(int(c) for c in wt)
        sign = 1
        r = self.rank
        while True:
            for i in range(r):
                if x[i] < 0:
                    c = x[i]
                    col = cartan_cols[i]
                    for j in range(r):
                        x[j] -= c * col[j]
                    sign = -sign
                    break
            else:
                break
        return tuple(x), sign, any(c == 0 for c in x)

    @lru_cache(maxsize=None)
    def _simple_reflection_matrix(self, i: int) -> tuple[IntVec, ...]:
        # s_i(x) = x - wt_i(x) alpha_i: subtract the i-th weight functional
        # from the i-th root coordinate
        r = self.rank
        rows = []
        for a in range(r):
            row = [Fraction(1 if a == b else 0) for b in range(r)]
            if a == i:
                for b in range(r):
                    row[b] -= self._wt_of_root_mat[i][b]
            rows.append(row)
        return tuple(as_int_vec(row) for row in rows)

    def _element_for_matrix(self, mat, sign: int) -> WeylElement:
        if not hasattr(self, "_matrix_index"):
            self._matrix_index = {w.root_matrix: w for w in self.weyl_elements}
        w = self._matrix_index[tuple(mat)]
        assert w.sign == sign
        return w

    # -- combinatorial predicates ---------------------------------------------

    def spanning_hyperplane_normals(self) -> list[IntVec]:
        """Primitive normals of all hyperplanes spanned by positive roots
        (in root coordinates, via the standard coordinate pairing)."""
        r = self.rank
        if r == 1:
            return [(1,)]
        roots = [as_int_vec(a) for a in self.positive_roots]
        normals = set()
        for sub in combinations(roots, r - 1):
            normal = _generalized_cross(sub, r)
            if normal is None:
                continue
            normals.add(_primitive(normal))
        return sorted(normals)


def _perm_parity(p) -> int:
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _invert(mat) -> list[list[Fraction]]:
    n = len(mat)
    a = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(1 if j == i else 0) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _int_mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _generalized_cross(rows: Sequence[IntVec], r: int) -> IntVec | None:
    """Integer normal to the span of r-1 integer vectors in Z^r, or None if
    they do not span a hyperplane."""
    out = []
    for i in range(r):
        minor = [[row[j] for j in range(r) if j != i] for row in rows]
        out.append((-1) ** i * _int_det(minor))
    if all(x == 0 for x in out):
        return None
    return tuple(out)


def _int_det(mat) -> int:
    n = len(mat)
    if n == 0:
        return 1
    a = [row[:] for row in mat]
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        # fraction-free elimination (Bareiss-like via rational scaling)
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = Fraction(a[r][col], a[col][col])
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    for i in range(n):
        det *= a[i][i]
    f = Fraction(det)
    assert f.denominator == 1
    return f.numerator


def _primitive(v: IntVec) -> IntVec:
    from math import gcd

    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    out = tuple(int(x) // g for x in v)
    for x in out:
        if x != 0:
            return out if x > 0 else tuple(-y for y in out)
    return out


@lru_cache(maxsize=None)
def build(algebra: str, rank: int | None = None) -> RootSystem:
    """Build a root system from a label like 'A3' or from (family, rank)."""
    if rank is None:
        fam, rk = algebra[0].upper(), algebra[1:]
        if not rk.isdigit():
            raise ValueError(f"bad algebra label {algebra!r}; expected e.g. 'A3'")
        return RootSystem(fam, int(rk))
    return RootSystem(algebra.upper(), int(rank))


def is_unimodular(rs: RootSystem) -> bool:
    """True iff every rank-size spanning subset of the positive roots has
    determinant +-1 in the simple-root basis, i.e. generates Q."""
    roots = [as_int_vec(a) for a in rs.positive_roots]
    for sub in combinations(roots, rs.rank):
        d = _int_det([list(v) for v in sub])
        if d != 0 and abs(d) != 1:
            return False
    return True


def smoothness_degree(rs: RootSystem) -> int:
    """Largest k such that removing any k+1 positive roots still leaves a
    spanning set; equals (minimal number of roots off a spanned hyperplane)
    minus 2, and -1 means the box spline density is discontinuous."""
    roots = [as_int_vec(a) for a in rs.positive_roots]
    best = None
    for normal in rs.spanning_hyperplane_normals():
        cnt = sum(1 for a in roots if sum(x * y for x, y in zip(a, normal)) != 0)
        best = cnt if best is None else min(best, cnt)
    assert best is not None
    return best - 2
