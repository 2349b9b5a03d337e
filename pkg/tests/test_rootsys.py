"""Root system combinatorics tests."""

import random
from fractions import Fraction

import pytest

from boxlie.core import smul, vadd, vec, vneg
from boxlie.rootsys import build, is_unimodular, smoothness_degree


ALL_LABELS = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4"]


class TestBuild:
    def test_classical_counts(self, a3, b2):
        assert a3.n_positive == 6 and a3.weyl_order == 24
        assert b2.n_positive == 4
        short = [a for a in b2.positive_roots if b2.pair(a, a) == 1]
        assert len(short) == 2

    def test_a1(self, a1):
        assert a1.n_positive == 1
        alpha = a1.positive_roots[0]
        assert a1.rho == smul(Fraction(1, 2), alpha)

    def test_rho_is_half_sum(self):
        for label in ALL_LABELS:
            rs = build(label)
            acc = vec([0] * rs.rank)
            for a in rs.positive_roots:
                acc = vadd(acc, a)
            assert rs.rho == smul(Fraction(1, 2), acc)
            assert all(c == 1 for c in rs.rho_wt)

    def test_long_root_normalization(self):
        for label in ALL_LABELS:
            rs = build(label)
            assert max(rs.pair(a, a) for a in rs.positive_roots) == 2

    def test_unsupported(self):
        with pytest.raises(ValueError):
            build("E8")
        with pytest.raises(ValueError):
            build("B1")
        with pytest.raises(ValueError):
            build("D2")


class TestWeylGroup:
    def test_pairing_invariance(self, b3):
        rng = random.Random(0)
        for _ in range(15):
            x = vec([Fraction(rng.randint(-5, 5), 2) for _ in range(3)])
            y = vec([Fraction(rng.randint(-5, 5), 3) for _ in range(3)])
            w = rng.choice(b3.weyl_elements)
            assert b3.pair(w.apply_root(x), w.apply_root(y)) == b3.pair(x, y)

    def test_sign_multiplicative(self, a3):
        rng = random.Random(1)
        index = {w.root_matrix: w for w in a3.weyl_elements}
        for _ in range(20):
            w1 = rng.choice(a3.weyl_elements)
            w2 = rng.choice(a3.weyl_elements)
            prod = tuple(
                tuple(sum(w1.root_matrix[i][k] * w2.root_matrix[k][j] for k in range(3))
                      for j in range(3))
                for i in range(3)
            )
            assert index[prod].sign == w1.sign * w2.sign

    def test_orbit_of_zero(self, a2):
        images = {img for _, img in a2.weyl_orbit(vec([0, 0]))}
        assert images == {vec([0, 0])}

    def test_orbit_of_rho_distinct(self, a2):
        images = {img for _, img in a2.weyl_orbit(a2.rho)}
        assert len(images) == 6

    def test_sign_sum_vanishes(self):
        for label in ALL_LABELS:
            rs = build(label)
            assert sum(w.sign for w in rs.weyl_elements) == 0

    def test_dominant_representative(self, a2):
        x = a2.rho
        xp, w, wall = a2.dominant_representative(x)
        assert xp == x and w.is_identity and not wall

        xp, w, wall = a2.dominant_representative(vneg(a2.rho))
        assert xp == a2.rho and not wall
        assert w.root_matrix == a2.longest_element.root_matrix
        assert w.apply_root(vneg(a2.rho)) == a2.rho

        on_wall = a2.weight_root_coords((1, 0))
        _, _, wall = a2.dominant_representative(on_wall)
        assert wall

    def test_longest_element(self):
        for label in ALL_LABELS:
            rs = build(label)
            assert rs.longest_element.apply_root(rs.rho) == vneg(rs.rho)

    def test_conjugate_involution(self, a3):
        rng = random.Random(2)
        for _ in range(10):
            lam = tuple(rng.randint(0, 5) for _ in range(3))
            assert a3.weight_conjugate(a3.weight_conjugate(lam)) == lam
        assert a3.weight_conjugate((1, 0, 0)) == (0, 0, 1)


class TestCoordinates:
    def test_weight_round_trip(self):
        rng = random.Random(3)
        for label in ALL_LABELS:
            rs = build(label)
            for _ in range(5):
                lam = vec([rng.randint(-4, 6) for _ in range(rs.rank)])
                assert rs.wt_of_root(rs.root_of_wt(lam)) == lam
                x = vec([Fraction(rng.randint(-8, 8), 3) for _ in range(rs.rank)])
                assert rs.root_of_e(rs.e_of_root(x)) == x

    def test_type_a_sum_zero(self, a3):
        for a in a3.positive_roots_e:
            assert sum(a) == 0
        assert sum(a3.rho_e) == 0

    def test_lattice_membership(self, b2):
        assert b2.in_root_lattice(b2.positive_roots[0])
        ω1 = b2.weight_root_coords((1, 0))
        assert b2.in_weight_lattice(ω1)
        assert not b2.in_root_lattice(b2.weight_root_coords((0, 1)))


class TestPredicates:
    def test_unimodularity_classification(self):
        # type A systems are exactly the unimodular classical systems
        for label in ALL_LABELS:
            rs = build(label)
            assert is_unimodular(rs) == (rs.family == "A")

    def test_smoothness_degrees(self):
        expected = {"A1": -1, "A2": 0, "A3": 1, "A4": 2,
                    "B2": 1, "B3": 3, "C3": 3, "D4": 4}
        for label, k in expected.items():
            assert smoothness_degree(build(label)) == k

    def test_smoothness_matches_spline_degree_bound(self):
        # b is a degree |phi+| - r piecewise polynomial; its smoothness class
        # never reaches that degree
        for label in ALL_LABELS:
            rs = build(label)
            assert smoothness_degree(rs) < rs.n_positive - rs.rank
