"""Exact arithmetic substrate: rationals, vectors, lattice measures, polynomials.

Everything in this module is exact. Scalars are `fractions.Fraction`, points of
the Cartan subalgebra are tuples of Fractions in a fixed basis, finitely
supported measures on a lattice translate are dicts from integer coordinate
tuples to Fractions, and multivariate polynomials are dicts from exponent
multi-indices to Fractions. No floating point is used anywhere here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

Frac = Fraction
Vec = tuple[Fraction, ...]
IntVec = tuple[int, ...]


# ---------------------------------------------------------------------------
# rational scalars and vectors
# ---------------------------------------------------------------------------

def frac(x) -> Fraction:
    """Coerce ints, Fractions or 'p/q' strings to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {x!r}")


def fmt_frac(x: Fraction) -> str:
    """Render a Fraction as 'p/q' (or 'p' when the denominator is 1)."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vec(xs: Iterable) -> Vec:
    return tuple(frac(x) for x in xs)


def vadd(a: Sequence, b: Sequence) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Sequence, b: Sequence) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vneg(a: Sequence) -> Vec:
    return tuple(-x for x in a)


def smul(c, a: Sequence) -> Vec:
    return tuple(c * x for x in a)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b, strict=True)), start=Fraction(0))


def is_integral(a: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 for x in a)


def as_int_vec(a: Sequence) -> IntVec:
    out = []
    for x in a:
        f = Fraction(x)
        if f.denominator != 1:
            raise ValueError(f"{a} is not an integer vector")
        out.append(f.numerator)
    return tuple(out)


def common_denominator(a: Sequence) -> int:
    d = 1
    for x in a:
        q = Fraction(x).denominator
        d = d * q // _gcd(d, q)
    return d


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# Bernoulli numbers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n for even n >= 0, by the explicit double sum

        B_n = sum_{k=0}^{n} sum_{j=0}^{k} (-1)^j C(k,j) j^n / (k+1),

    with the convention 0^0 = 1 (so B_0 = 1). Odd n is rejected: only even
    indices enter the deconvolution operator series.
    """
    if n < 0 or n % 2 != 0:
        raise ValueError(f"bernoulli(n) requires even n >= 0, got {n}")
    total = Fraction(0)
    for k in range(n + 1):
        inner = 0
        for j in range(k + 1):
            jn = 1 if (j == 0 and n == 0) else j**n
            term = comb(k, j) * jn
            inner += -term if j % 2 else term
        total += Fraction(inner, k + 1)
    return total


def csch_series_coefficient(n: int) -> Fraction:
    """Coefficient of d^(2n) in the factor (u/2)csch(u/2) of the inverse
    convolution operator: (2^(1-2n) - 1) B_{2n} / (2n)!."""
    if n == 0:
        return Fraction(1)
    num = Fraction(2) ** (1 - 2 * n) - 1
    fact = 1
    for i in range(2, 2 * n + 1):
        fact *= i
    return num * bernoulli(2 * n) / fact


# ---------------------------------------------------------------------------
# finitely supported measures on a lattice translate
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeMeasure:
    """Finitely supported rational measure on a translate of a lattice.

    Points are ``base + k`` where ``k`` runs over the integer coordinate
    vectors in ``entries`` (coordinates in the lattice's own basis: simple
    roots for Q, fundamental weights for P). ``base`` is the rational offset
    of the translate, in the same basis. Zero values are pruned on
    construction; instances are immutable and hashable-by-identity.
    """

    base: Vec
    entries: Mapping[IntVec, Fraction]
    lattice: str = "Q"

    def __post_init__(self):
        pruned = {tuple(k): Fraction(v) for k, v in self.entries.items() if v != 0}
        object.__setattr__(self, "entries", pruned)
        object.__setattr__(self, "base", vec(self.base))
        if self.lattice not in ("Q", "P"):
            raise ValueError(f"unknown lattice flag {self.lattice!r}")

    @property
    def dim(self) -> int:
        return len(self.base)

    def mass(self) -> Fraction:
        return sum(self.entries.values(), start=Fraction(0))

    def value_at(self, point: Sequence) -> Fraction:
        """Exact value at a point given in lattice-basis coordinates."""
        off = vsub(vec(point), self.base)
        if not is_integral(off):
            return Fraction(0)
        return self.entries.get(as_int_vec(off), Fraction(0))

    def translate(self, shift: Sequence) -> "LatticeMeasure":
        return LatticeMeasure(vadd(self.base, vec(shift)), dict(self.entries), self.lattice)

    def points(self) -> list[Vec]:
        return [vadd(self.base, k) for k in self.entries]

    def same_measure(self, other: "LatticeMeasure") -> bool:
        """Equality as measures (bases may differ by a lattice vector)."""
        if self.lattice != other.lattice or self.dim != other.dim:
            return False
        off = vsub(other.base, self.base)
        if not is_integral(off):
            return not self.entries and not other.entries
        shift = as_int_vec(off)
        moved = {vadd(k, shift): v for k, v in other.entries.items()}
        return dict(self.entries) == {tuple(k): v for k, v in moved.items()}

    def to_json(self) -> dict:
        ents = [
            {"coords": list(k), "value": fmt_frac(v)}
            for k, v in sorted(self.entries.items())
        ]
        return {"base": [fmt_frac(x) for x in self.base], "entries": ents}

    @classmethod
    def from_json(cls, data: dict, lattice: str = "Q") -> "LatticeMeasure":
        base = vec(data["base"])
        entries = {
            tuple(int(c) for c in e["coords"]): frac(e["value"])
            for e in data["entries"]
        }
        return cls(base, entries, lattice)


def convolve(f: LatticeMeasure, g: LatticeMeasure) -> LatticeMeasure:
    """Convolution of two finitely supported measures on translates of one
    lattice. The support lies in the Minkowski sum of the supports and the
    total mass is the product of the masses."""
    if f.lattice != g.lattice or f.dim != g.dim:
        raise ValueError("convolve: measures live on incompatible lattices")
    out: dict[IntVec, Fraction] = {}
    for k1, v1 in f.entries.items():
        for k2, v2 in g.entries.items():
            k = tuple(a + b for a, b in zip(k1, k2))
            s = out.get(k)
            out[k] = v1 * v2 if s is None else s + v1 * v2
    return LatticeMeasure(vadd(f.base, g.base), out, f.lattice)


def delta(base: Sequence, lattice: str = "Q") -> LatticeMeasure:
    """Unit point mass at ``base``."""
    b = vec(base)
    return LatticeMeasure(b, {(0,) * len(b): Fraction(1)}, lattice)


# ---------------------------------------------------------------------------
# multivariate polynomials with rational coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MultivariatePolynomial:
    """Polynomial in r variables with exact rational coefficients.

    ``terms`` maps exponent multi-indices to nonzero coefficients.
    """

    nvars: int
    terms: Mapping[IntVec, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        pruned = {tuple(e): Fraction(c) for e, c in self.terms.items() if c != 0}
        for e in pruned:
            if len(e) != self.nvars or any(i < 0 for i in e):
                raise ValueError(f"bad exponent {e} for {self.nvars} variables")
        object.__setattr__(self, "terms", pruned)

    @classmethod
    def zero(cls, nvars: int) -> "MultivariatePolynomial":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "MultivariatePolynomial":
        return cls(nvars, {(0,) * nvars: frac(c)})

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def __call__(self, point: Sequence) -> Fraction:
        pt = vec(point)
        total = Fraction(0)
        for e, c in self.terms.items():
            m = c
            for x, k in zip(pt, e):
                if k:
                    m *= x**k
            total += m
        return total

    def __add__(self, other: "MultivariatePolynomial") -> "MultivariatePolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultivariatePolynomial(self.nvars, out)

    def __sub__(self, other: "MultivariatePolynomial") -> "MultivariatePolynomial":
        return self + other.scale(-1)

    def scale(self, c) -> "MultivariatePolynomial":
        c = frac(c)
        return MultivariatePolynomial(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "MultivariatePolynomial") -> "MultivariatePolynomial":
        out: dict[IntVec, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultivariatePolynomial(self.nvars, out)

    def partial(self, i: int) -> "MultivariatePolynomial":
        out: dict[IntVec, Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            e2[i] -= 1
            key = tuple(e2)
            out[key] = out.get(key, Fraction(0)) + c * e[i]
        return MultivariatePolynomial(self.nvars, out)

    def directional_derivative(self, direction: Sequence) -> "MultivariatePolynomial":
        d = vec(direction)
        acc = MultivariatePolynomial.zero(self.nvars)
        for i, di in enumerate(d):
            if di:
                acc = acc + self.partial(i).scale(di)
        return acc

    def shift(self, offset: Sequence) -> "MultivariatePolynomial":
        """Compose with the translation x -> x + offset, exactly."""
        off = vec(offset)
        out = MultivariatePolynomial.zero(self.nvars)
        for e, c in self.terms.items():
            term = MultivariatePolynomial.constant(self.nvars, c)
            for i, k in enumerate(e):
                if k == 0:
                    continue
                unit = [0] * self.nvars
                unit[i] = 1
                lin = MultivariatePolynomial(
                    self.nvars, {tuple(unit): Fraction(1), (0,) * self.nvars: off[i]}
                )
                for _ in range(k):
                    term = term * lin
            out = out + term
        return out


def monomials_up_to_degree(nvars: int, degree: int) -> list[IntVec]:
    """All exponent multi-indices of total degree <= degree, in a fixed order."""
    out: list[IntVec] = []
    for d in range(degree + 1):
        for bars in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in bars:
                e[i] += 1
            out.append(tuple(e))
    return out


def solve_linear(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a square rational system by exact Gaussian elimination."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular linear system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                fac = a[r][col]
                a[r] = [x - fac * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


class InterpolationError(ValueError):
    """Raised when interpolation data is underdetermined or inconsistent."""


def interpolate(
    points: Sequence[Sequence], values: Sequence, degree: int
) -> MultivariatePolynomial:
    """Fit the unique polynomial of total degree <= degree through exact data.

    Solves the monomial-basis Vandermonde system by Gaussian elimination.
    Extra points beyond the dimension of the polynomial space are used as
    consistency constraints: if they are not matched exactly the system is
    inconsistent and an InterpolationError is raised (the caller reads this
    as the data straddling two polynomial domains). Rank-deficient point
    sets are rejected as underdetermined.
    """
    pts = [vec(p) for p in points]
    vals = [frac(v) for v in values]
    if len(pts) != len(vals):
        raise ValueError("points and values must have equal length")
    if not pts:
        raise InterpolationError("no interpolation data")
    nvars = len(pts[0])
    monos = monomials_up_to_degree(nvars, degree)
    ncols = len(monos)
    if len(pts) < ncols:
        raise InterpolationError(
            f"underdetermined: {len(pts)} points for {ncols} coefficients"
        )

    def mono_eval(p: Vec, e: IntVec) -> Fraction:
        out = Fraction(1)
        for x, k in zip(p, e):
            if k:
                out *= x**k
        return out

    rows = [[mono_eval(p, e) for e in monos] + [v] for p, v in zip(pts, vals)]
    # exact row echelon with full consistency check
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                fac = rows[r][col]
                rows[r] = [x - fac * y for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, len(rows)):
        if rows[r][ncols] != 0:
            raise InterpolationError("inconsistent data: no single polynomial fits")
    if rank < ncols:
        raise InterpolationError("underdetermined: points not in general position")
    coeffs = {monos[c]: rows[i][ncols] for i, c in enumerate(pivots)}
    return MultivariatePolynomial(nvars, coeffs)


def fit_univariate(xs: Sequence, ys: Sequence, degree: int) -> MultivariatePolynomial:
    """Exact degree-bounded fit in one variable (thin wrapper)."""
    return interpolate([(x,) for x in xs], ys, degree)
