"""Weight multiplicity recovery tests."""

import random
from fractions import Fraction

import pytest

from boxlie.core import vadd, vec
from boxlie.multoracle import dimension, weight_multiplicity, weights_of_irrep
from boxlie.rootsys import build
from boxlie.weightmult import (
    dh_density_i,
    i_lattice_and_deconv_roundtrip,
    i_lattice_measure,
    kostka_fd_inversion,
    kostka_from_i_fourier,
    shielded_pair_test,
)
from boxlie.boxspline import lattice_table


class TestDensity:
    def test_outside_support_zero(self, a2):
        assert dh_density_i(a2, (1, 1), vec([9, 9])) == 0

    def test_w_invariance(self, b2):
        rng = random.Random(80)
        for _ in range(8):
            beta = vec([Fraction(rng.randint(-8, 8), 2) for _ in range(2)])
            val = dh_density_i(b2, (1, 1), beta)
            w = rng.choice(b2.weyl_elements)
            assert dh_density_i(b2, (1, 1), w.apply_root(beta)) == val

    def test_a2_adjoint_brute_sum(self, a2):
        # direct summation over the eight weights of the adjoint module
        table = lattice_table(a2)
        lam = (1, 1)
        beta = vec([Fraction(1, 2), Fraction(1, 3)])
        lam_root = a2.weight_root_coords(lam)
        want = Fraction(0)
        for k, m in weights_of_irrep(a2, lam).items():
            mu = vadd(lam_root, vec(k))
            want += m * table.density(vec([b - x for b, x in zip(beta, mu)]))
        assert dh_density_i(a2, lam, beta) == want

    def test_nonnegative(self, a3):
        rng = random.Random(81)
        for _ in range(6):
            beta = vec([Fraction(rng.randint(-6, 6), 2) for _ in range(3)])
            assert dh_density_i(a3, (1, 0, 1), beta) >= 0

    def test_total_mass_is_dimension(self):
        for label in ["A2", "B2", "A3"]:
            rs = build(label)
            lam = tuple([2] + [1] * (rs.rank - 1))
            assert i_lattice_measure(rs, lam).mass() == dimension(rs, lam)


class TestFourier:
    def test_highest_weight(self, a2):
        assert kostka_from_i_fourier(a2, (2, 1), (2, 1)) == 1

    def test_a2_adjoint_zero(self, a2):
        assert kostka_from_i_fourier(a2, (1, 1), (0, 0)) == 2

    def test_b2_sample(self, b2):
        for mu in [(0, 0), (1, 1), (0, 2)]:
            want = weight_multiplicity(b2, (1, 1), mu)
            assert kostka_from_i_fourier(b2, (1, 1), mu) == want

    def test_off_lattice_zero(self, a2):
        assert kostka_from_i_fourier(a2, (1, 0), (0, 0)) == 0


class TestShieldedPairs:
    def test_a1_generic(self, a1):
        assert shielded_pair_test(a1, (3,), (1,))

    def test_wall_pair_rejected(self, a2):
        # mu exactly on a domain wall: the window touches a constant
        assert not shielded_pair_test(a2, (1, 1), (1, 1))

    def test_deep_interior_a3(self, a3):
        assert shielded_pair_test(a3, (12, 9, 10), (2, 9, 12))

    def test_type_restriction(self, b2):
        with pytest.raises(ValueError):
            shielded_pair_test(b2, (1, 1), (0, 0))


class TestFdInversion:
    def test_a1_trivial(self, a1):
        for lam in [(2,), (5,)]:
            for k in range(-5, 6):
                mu = (k,)
                if shielded_pair_test(a1, lam, mu):
                    assert kostka_fd_inversion(a1, lam, mu) == \
                        weight_multiplicity(a1, lam, mu)

    def test_a2_single_term(self, a2):
        # d = 1: only the k = 0 term contributes, K = I(lam'; mu)
        lam, mu = (3, 2), (1, 0)
        if shielded_pair_test(a2, lam, mu):
            got = kostka_fd_inversion(a2, lam, mu)
            assert Fraction(got) == dh_density_i(a2, lam, a2.weight_root_coords(mu))
            assert got == weight_multiplicity(a2, lam, mu)

    def test_a3_shielded_sample(self, a3):
        lam, mu = (12, 9, 10), (2, 9, 12)
        assert kostka_fd_inversion(a3, lam, mu) == weight_multiplicity(a3, lam, mu) == 13

    def test_non_shielded_rejected(self, a3):
        with pytest.raises(ValueError):
            kostka_fd_inversion(a3, (1, 1, 1), (1, 1, 1))

    def test_local_fit_route_agrees(self, a3):
        from boxlie.weightmult import kostka_ahat_via_local_fit

        lam, mu = (12, 9, 10), (2, 9, 12)
        assert kostka_ahat_via_local_fit(a3, lam, mu) == \
            kostka_fd_inversion(a3, lam, mu) == 13
        with pytest.raises(ValueError):
            kostka_ahat_via_local_fit(a3, (1, 1, 1), (1, 1, 1))


class TestRoundtrip:
    @pytest.mark.parametrize("label,top", [("A2", 3), ("B2", 3), ("A3", 2), ("C3", 1)])
    def test_random_irreps(self, label, top):
        rs = build(label)
        rng = random.Random(82)
        for _ in range(3):
            lam = tuple(rng.randint(0, top) for _ in range(rs.rank))
            assert i_lattice_and_deconv_roundtrip(rs, lam)

    def test_trivial_rep(self, a2):
        meas = i_lattice_measure(a2, (0, 0))
        assert meas.mass() == 1
        assert i_lattice_and_deconv_roundtrip(a2, (0, 0))

    def test_a2_adjoint_pattern(self, a2):
        # six weights of multiplicity 1 plus the double zero weight
        table = weights_of_irrep(a2, (1, 1))
        assert sorted(table.values()) == [1, 1, 1, 1, 1, 1, 2]
        assert i_lattice_and_deconv_roundtrip(a2, (1, 1))

    def test_b2_vector_rep(self, b2):
        assert i_lattice_and_deconv_roundtrip(b2, (0, 1))


class TestBridge:
    def test_mult_from_stretched_tensor(self, a2):
        # weight multiplicities as stable tensor product multiplicities:
        # scan k upward until the degeneration stabilizes
        from boxlie.multoracle import mult_degeneration_check

        lam, mu = (2, 2), (1, 1)
        ks = [k for k in range(0, 6)]
        vals = [mult_degeneration_check(a2, lam, mu, k) for k in ks]
        assert vals[-1] and vals[-2]
