"""Deconvolution route tests: vertex peeling, Fourier inversion, the box
spline Laplacian and the finite-difference multiplicity formula."""

import random
from fractions import Fraction

import pytest

from boxlie.core import (
    LatticeMeasure,
    MultivariatePolynomial,
    convolve,
    delta,
    monomials_up_to_degree,
    vadd,
    vec,
)
from boxlie.boxspline import lattice_table
from boxlie.deconv import (
    DeconvolutionError,
    LaplacianOperator,
    c_kernel_numeric,
    finite_difference_inversion,
    jlr_laplacian_verify,
    laplacian_apply,
    lattice_deconvolve,
    multiplicities_from_j_algorithmic,
    multiplicities_from_j_fourier,
)
from boxlie.multoracle import compatible, lr_coefficient, lr_table
from boxlie.rootsys import build
from boxlie.volumefn import VolumeEvaluator, shielded_test


def _random_measure(rng, dim, n_points, span=4, rational=True):
    entries = {}
    for _ in range(n_points):
        k = tuple(rng.randint(-span, span) for _ in range(dim))
        v = Fraction(rng.randint(-6, 6), rng.randint(1, 4) if rational else 1)
        if v:
            entries[k] = v
    return LatticeMeasure(vec([0] * dim), entries, "Q")


class TestPeeling:
    def test_delta_identity(self):
        rng = random.Random(70)
        g = _random_measure(rng, 2, 6)
        assert lattice_deconvolve(delta([0, 0]), g).same_measure(g)

    def test_self_quotient(self):
        rng = random.Random(71)
        f = _random_measure(rng, 2, 5)
        got = lattice_deconvolve(f, f)
        assert got.same_measure(delta([0, 0]))

    def test_round_trip_random(self):
        rng = random.Random(72)
        for _ in range(20):
            f = _random_measure(rng, 2, 5)
            g = _random_measure(rng, 2, 8)
            if not f.entries or not g.entries:
                continue
            h = convolve(f, g)
            assert lattice_deconvolve(f, h).same_measure(g)

    def test_round_trip_non_multiplicity_patterns(self, a2):
        # arbitrary signed rational data, unrelated to any tensor product
        rng = random.Random(73)
        table = lattice_table(a2).lattice_values
        for _ in range(10):
            g = _random_measure(rng, 2, 12, span=6)
            h = convolve(table, g)
            assert lattice_deconvolve(table, h).same_measure(g)

    def test_not_in_image_detected(self):
        f = LatticeMeasure(vec([0]), {(0,): Fraction(1), (1,): Fraction(-1)})
        h = LatticeMeasure(vec([0]), {(0,): Fraction(1)})
        with pytest.raises(DeconvolutionError):
            lattice_deconvolve(f, h)

    def test_incompatible_lattices(self):
        f = LatticeMeasure(vec([0]), {(0,): Fraction(1)}, "Q")
        h = LatticeMeasure(vec([0]), {(0,): Fraction(1)}, "P")
        with pytest.raises(DeconvolutionError):
            lattice_deconvolve(f, h)


class TestAlgorithmicRoute:
    @pytest.mark.parametrize("label", ["A2", "B2"])
    def test_small_boxes(self, label):
        rs = build(label)
        for lam in [(0, 0), (1, 2), (3, 1)]:
            for mu in [(2, 1), (0, 2)]:
                assert multiplicities_from_j_algorithmic(rs, lam, mu) == \
                    lr_table(rs, lam, mu)

    def test_a3_sample(self, a3):
        lam, mu = (1, 0, 2), (2, 1, 0)
        assert multiplicities_from_j_algorithmic(a3, lam, mu) == lr_table(a3, lam, mu)

    def test_trivial_factor(self, a2):
        got = multiplicities_from_j_algorithmic(a2, (0, 0), (2, 1))
        assert got == {(2, 1): 1}


class TestFourierRoute:
    @pytest.mark.parametrize("label", ["A2", "B2"])
    def test_samples(self, label):
        rs = build(label)
        rng = random.Random(74)
        done = 0
        while done < 6:
            lam = tuple(rng.randint(0, 3) for _ in range(2))
            mu = tuple(rng.randint(0, 3) for _ in range(2))
            nu = tuple(rng.randint(0, 4) for _ in range(2))
            if not compatible(rs, lam, mu, nu):
                continue
            done += 1
            assert multiplicities_from_j_fourier(rs, lam, mu, nu) == \
                lr_coefficient(rs, lam, mu, nu)

    def test_incompatible_returns_zero(self, a2):
        assert multiplicities_from_j_fourier(a2, (1, 0), (0, 0), (0, 1)) == 0

    def test_rank_cap(self, d4):
        with pytest.raises(ValueError):
            multiplicities_from_j_fourier(d4, (1, 0, 0, 0), (0, 0, 0, 0), (1, 0, 0, 0))


class TestKernel:
    def test_a2_kernel_is_delta(self, a2):
        assert abs(c_kernel_numeric(a2, (0, 0)) - 1.0) < 1e-12
        for tau in [(1, 0), (0, 1), (1, 1), (2, 1)]:
            assert abs(c_kernel_numeric(a2, tau)) < 1e-12

    def test_a3_window_identity(self, a3):
        table = lattice_table(a3)
        grid = 20
        kern = {}
        span = 3
        for k in __import__("itertools").product(range(-span, span + 1), repeat=3):
            kern[k] = c_kernel_numeric(a3, k, grid=grid)
        for nu in [(0, 0, 0), (1, 0, 0), (1, 1, 1)]:
            acc = 0.0
            for k, cv in kern.items():
                b = table.values.get(tuple(n - ki for n, ki in zip(nu, k)))
                if b:
                    acc += cv * float(b)
            want = 1.0 if nu == (0, 0, 0) else 0.0
            assert abs(acc - want) < 1e-4

    def test_non_unimodular_rejected(self, b2):
        with pytest.raises(ValueError):
            c_kernel_numeric(b2, (0, 0))


class TestLaplacian:
    def test_b2_structure(self, b2):
        op = LaplacianOperator.for_system(b2)
        # quarter of the two-dimensional discrete Laplacian: the short roots
        # e1 = alpha1+alpha2 and e2 = alpha2 are orthonormal
        want = {(1, 1): Fraction(1, 4), (-1, -1): Fraction(1, 4),
                (0, 1): Fraction(1, 4), (0, -1): Fraction(1, 4),
                (0, 0): Fraction(-1)}
        assert dict(op.stencil) == want

    def test_a3_structure(self, a3):
        # (1/12) sum over positive roots of the second difference
        op = LaplacianOperator.for_system(a3)
        assert op.stencil[(0, 0, 0)] == -1
        for alpha in a3.positive_roots:
            assert op.stencil[tuple(int(c) for c in alpha)] == Fraction(1, 12)

    def test_annihilates_affine(self, b2):
        op = LaplacianOperator.for_system(b2)
        for poly in [MultivariatePolynomial.constant(2, 7),
                     MultivariatePolynomial(2, {(1, 0): Fraction(2), (0, 1): Fraction(-3)})]:
            assert op.apply_polynomial(poly).terms == {}

    def test_degree_drop(self, b2, a3):
        rng = random.Random(75)
        for rs in (b2, a3):
            op = LaplacianOperator.for_system(rs)
            for _ in range(8):
                deg = rng.randint(2, 5)
                terms = {e: Fraction(rng.randint(-4, 4))
                         for e in monomials_up_to_degree(rs.rank, deg)}
                p = MultivariatePolynomial(rs.rank, terms)
                if p.degree() < 2:
                    continue
                assert op.apply_polynomial(p).degree() <= p.degree() - 2

    def test_convolution_representation(self, b2):
        # (1 + D/2) f == b * f pointwise on arbitrary lattice data
        rng = random.Random(76)
        table = lattice_table(b2)
        op = LaplacianOperator.for_system(b2)
        data = {tuple(rng.randint(-3, 3) for _ in range(2)): Fraction(rng.randint(-5, 5))
                for _ in range(12)}

        def f(pt):
            key = tuple(int(c) for c in pt)
            return data.get(key, Fraction(0))

        for _ in range(10):
            xi = vec([rng.randint(-2, 2), rng.randint(-2, 2)])
            lhs = f(xi) + Fraction(1, 2) * op.apply(f, xi)
            rhs = sum((b * f(vec([x - t for x, t in zip(xi, tau)]))
                       for tau, b in table.values.items()), start=Fraction(0))
            assert lhs == rhs

    def test_apply_constant(self, a3):
        assert laplacian_apply(a3, lambda pt: Fraction(5), vec([0, 0, 0])) == 0


class TestJlrLaplacian:
    @pytest.mark.parametrize("label", ["A2", "A3", "B2"])
    def test_random_triples(self, label):
        rs = build(label)
        rng = random.Random(77)
        done = 0
        while done < 5:
            lam = tuple(rng.randint(0, 3) for _ in range(rs.rank))
            mu = tuple(rng.randint(0, 3) for _ in range(rs.rank))
            nu = tuple(rng.randint(0, 4) for _ in range(rs.rank))
            if not compatible(rs, lam, mu, nu):
                continue
            done += 1
            assert jlr_laplacian_verify(rs, lam, mu, nu)

    def test_a2_reduces_to_plain_identity(self, a2):
        # D = 0 for this algebra: the relation is J(nu') = C directly
        op = LaplacianOperator.for_system(a2)
        assert op.stencil == {}
        assert jlr_laplacian_verify(a2, (2, 1), (1, 2), (3, 3))


class TestFiniteDifferenceInversion:
    def test_a1_identity(self, a1):
        for lam, mu, nu in [((2,), (1,), (3,)), ((2,), (1,), (1,)), ((3,), (3,), (0,))]:
            assert finite_difference_inversion(a1, lam, mu, nu) == \
                lr_coefficient(a1, lam, mu, nu)

    def test_a3_shielded(self, a3):
        lam, mu = (24, 12, 36), (36, 12, 24)
        for nu in [(47, 22, 63), (60, 38, 72)]:
            assert finite_difference_inversion(a3, lam, mu, nu) == \
                lr_coefficient(a3, lam, mu, nu)

    def test_non_shielded_rejected(self, a3):
        with pytest.raises(ValueError):
            finite_difference_inversion(a3, (1, 0, 0), (0, 1, 0), (1, 1, 0))

    def test_type_restriction(self, b2):
        with pytest.raises(ValueError):
            finite_difference_inversion(b2, (1, 0), (0, 1), (1, 1))

    def test_truncated_series_fails_across_walls(self, a3):
        # documented non-example: the truncated series applied to a
        # non-shielded triple is wrong; the formula hypothesis is essential
        found = None
        rng = random.Random(78)
        op = LaplacianOperator.for_system(a3)
        stencil = op.neumann_stencil((a3.n_positive - a3.rank) // 2)
        tried = 0
        while found is None and tried < 300:
            tried += 1
            lam = tuple(rng.randint(0, 3) for _ in range(3))
            mu = tuple(rng.randint(0, 3) for _ in range(3))
            nu = tuple(rng.randint(0, 4) for _ in range(3))
            if not compatible(a3, lam, mu, nu):
                continue
            if shielded_test(a3, lam, mu, nu):
                continue
            ev = VolumeEvaluator(a3, lam, mu)
            nu_p = a3.weight_prime(nu)
            total = sum((c * ev.volume_j(vadd(nu_p, vec(off)))
                         for off, c in stencil.items()), start=Fraction(0))
            if total != lr_coefficient(a3, lam, mu, nu):
                found = (lam, mu, nu, total)
        assert found is not None, "every sampled non-shielded triple matched"

    def test_a4_shielded(self, a4):
        lam, mu, nu = (195, 0, 0, 0), (47, 144, 184, 188), (47, 145, 180, 193)
        assert shielded_test(a4, lam, mu, nu)
        assert finite_difference_inversion(a4, lam, mu, nu) == \
            lr_coefficient(a4, lam, mu, nu) == 1


class TestAgreementBetweenRoutes:
    def test_ahat_equals_fd_on_shielded(self, a3):
        from boxlie.volumefn import ahat_via_local_fit

        lam, mu = (24, 12, 36), (36, 12, 24)
        for nu in [(47, 22, 63), (60, 38, 72)]:
            assert ahat_via_local_fit(a3, lam, mu, nu) == \
                finite_difference_inversion(a3, lam, mu, nu)
