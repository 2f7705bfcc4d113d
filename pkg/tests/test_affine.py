import random
from fractions import Fraction

import pytest

from padics import sampling
from padics.affine import (AffineMap, aff_L, aff_Lprime, aff_apply,
                           aff_compose, aff_inverse, aff_norm, membership,
                           to_matrix)
from padics.core import PNorm, fraction_pabs
from padics.matrices import PMatrix, matmul, matnorm, matsub
from padics.values import veq

P = 2


def am(a, b, p=P):
    return AffineMap(Fraction(a), Fraction(b), p)


class TestEvaluation:
    def test_identity(self):
        f = AffineMap.identity(P)
        assert aff_apply(f, Fraction(7, 3)) == Fraction(7, 3)

    def test_worked_example(self):
        assert aff_apply(am(2, 3), 5) == 13

    def test_unit_slope_maps_are_isometries(self):
        rng = random.Random(0)
        for _ in range(500):
            f = sampling.affine_unit(rng, P)
            x = sampling.rational(rng, P)
            y = sampling.rational(rng, P)
            assert (fraction_pabs(aff_apply(f, x) - aff_apply(f, y), P)
                    == fraction_pabs(x - y, P))


class TestComposition:
    def test_identity_neutral(self):
        f = am(2, 3)
        assert aff_compose(f, AffineMap.identity(P)) == f

    def test_worked_example(self):
        assert aff_compose(am(2, 3), am(5, 7)) == am(10, 17)

    def test_matrix_homomorphism(self):
        rng = random.Random(1)
        for _ in range(500):
            f = sampling.affine_map(rng, P)
            g = sampling.affine_map(rng, P)
            assert (to_matrix(aff_compose(f, g)).mat
                    == matmul(to_matrix(f).mat, to_matrix(g).mat))


class TestInverse:
    def test_identity(self):
        assert aff_inverse(AffineMap.identity(P)) == AffineMap.identity(P)

    def test_worked_example(self):
        assert aff_inverse(am(2, 3)) == am(Fraction(1, 2), Fraction(-3, 2))

    def test_round_trip(self):
        rng = random.Random(2)
        for _ in range(500):
            f = sampling.affine_map(rng, P)
            assert aff_compose(f, aff_inverse(f)) == AffineMap.identity(P)

    def test_non_invertible(self):
        with pytest.raises(ValueError):
            aff_inverse(am(0, 3))


class TestNorm:
    def test_zero_map(self):
        assert aff_norm(am(0, 0)).is_zero

    def test_px_plus_one(self):
        assert aff_norm(am(P, 1)) == PNorm.one(P)

    def test_sup_formula(self):
        rng = random.Random(3)
        for _ in range(500):
            f = sampling.affine_map(rng, P)
            attained = max(fraction_pabs(aff_apply(f, 0), P),
                           fraction_pabs(aff_apply(f, 1), P))
            assert aff_norm(f) == attained
            for _ in range(5):
                x = sampling.integral(rng, P)
                assert fraction_pabs(aff_apply(f, x), P) <= aff_norm(f)

    def test_left_composition_invariance(self):
        rng = random.Random(4)
        for _ in range(500):
            alpha = sampling.affine_unit(rng, P)
            f = sampling.affine_map(rng, P)
            g = sampling.affine_map(rng, P)
            af, ag = aff_compose(alpha, f), aff_compose(alpha, g)
            assert (aff_norm(am(af.a - ag.a, af.b - ag.b))
                    == aff_norm(am(f.a - g.a, f.b - g.b)))

    def test_right_composition_invariance(self):
        rng = random.Random(5)
        for _ in range(500):
            beta = sampling.affine_star_zp(rng, P)
            f = sampling.affine_map(rng, P)
            g = sampling.affine_map(rng, P)
            fb, gb = aff_compose(f, beta), aff_compose(g, beta)
            assert (aff_norm(am(fb.a - gb.a, fb.b - gb.b))
                    == aff_norm(am(f.a - g.a, f.b - g.b)))


class TestGauges:
    def test_identity_gauge(self):
        assert aff_L(AffineMap.identity(P)).is_zero
        assert veq(aff_Lprime(AffineMap.identity(P)), PNorm.zero(P))

    def test_translation_by_p(self):
        assert aff_L(am(1, P)) == PNorm(P, 1)

    def test_unit_perturbed_slope(self):
        assert aff_L(am(1 + P, 0)) == PNorm(P, 1)

    def test_domain_restriction(self):
        with pytest.raises(ValueError):
            aff_L(am(P, 0))

    def test_inverse_symmetry_and_subadditivity(self):
        rng = random.Random(6)
        for _ in range(500):
            f = sampling.affine_unit(rng, P)
            g = sampling.affine_unit(rng, P)
            assert aff_L(aff_inverse(f)) == aff_L(f)
            assert aff_L(aff_compose(f, g)) <= max(aff_L(f), aff_L(g))

    def test_capped_gauge_off_subgroup(self):
        assert aff_Lprime(am(P, 0), 2) == Fraction(2)
        assert aff_Lprime(am(P, 0)) == Fraction(1)

    def test_capped_gauge_equals_norm_difference_on_integral_group(self):
        rng = random.Random(7)
        for _ in range(1000):
            f = sampling.affine_star_zp(rng, P)
            g = sampling.affine_star_zp(rng, P)
            got = aff_Lprime(aff_compose(aff_inverse(g), f))
            want = aff_norm(am(f.a - g.a, f.b - g.b))
            assert veq(got, want)

    def test_cap_must_be_at_least_one(self):
        with pytest.raises(ValueError):
            aff_Lprime(am(1, 0), Fraction(1, 2))


class TestMatrixPicture:
    def test_identity(self):
        assert to_matrix(AffineMap.identity(P)).mat == PMatrix.identity(2, P)

    def test_layout(self):
        m = to_matrix(am(2, 3))
        assert m.entry(0, 0) == 2 and m.entry(0, 1) == 3
        assert m.entry(1, 0) == 0 and m.entry(1, 1) == 1

    def test_difference_norm_identity(self):
        rng = random.Random(8)
        for _ in range(500):
            f = sampling.affine_map(rng, P)
            g = sampling.affine_map(rng, P)
            assert (matnorm(matsub(to_matrix(f).mat, to_matrix(g).mat))
                    == aff_norm(am(f.a - g.a, f.b - g.b)))

    def test_embedded_norm(self):
        rng = random.Random(9)
        for _ in range(500):
            f = sampling.affine_map(rng, P)
            assert matnorm(to_matrix(f).mat) == max(aff_norm(f), PNorm.one(P))


class TestMembership:
    def test_identity_everywhere(self):
        flags = membership(AffineMap.identity(P))
        assert flags.in_A_Zp and flags.in_Astar_Zp and flags.in_A_Up

    def test_inverse_slope(self):
        flags = membership(am(Fraction(1, P), 0))
        assert not flags.in_A_Zp
        assert not flags.in_Astar_Zp
        assert not flags.in_A_Up

    def test_fractional_translation(self):
        flags = membership(am(1, Fraction(1, P)))
        assert not flags.in_A_Zp
        assert not flags.in_Astar_Zp
        assert flags.in_A_Up

    def test_coefficient_recovery(self):
        rng = random.Random(10)
        for _ in range(300):
            f = sampling.affine_map(rng, P)
            a = aff_apply(f, 1) - aff_apply(f, 0)
            b = aff_apply(f, 0)
            assert AffineMap(a, b, P) == f
