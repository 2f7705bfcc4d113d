import random
from fractions import Fraction

import pytest

from padics import sampling
from padics.core import PNorm, fraction_pabs
from padics.matrices import PMatrix, matmul, matsub
from padics.triangular import (SubgroupProfile, UTMatrix, diag_semimetric,
                               dilate, factor_diagonal_unipotent,
                               grade_component, haar_dimension, left_metric,
                               nilpotent_inverse, profile_subgroup_member,
                               right_metric, tplus_inverse, tri_norm, ut_add,
                               ut_mul)

P = 2


def ut(rows, p=P):
    return UTMatrix(PMatrix(tuple(tuple(Fraction(x) for x in row)
                                  for row in rows), p))


class TestFlags:
    def test_flag_detection(self):
        a = ut([[1, 2], [0, 1]])
        assert a.upper and a.unit_diagonal and a.unit_norm_diagonal
        assert not a.strict_upper
        b = ut([[0, 2], [0, 0]])
        assert b.strict_upper
        c = ut([[3, 2], [0, Fraction(1, 5)]])
        assert c.unit_norm_diagonal and not c.unit_diagonal
        d = ut([[2, 0], [0, 1]])
        assert not d.unit_norm_diagonal  # |2|_2 = 1/2
        e = ut([[1, 0], [1, 1]])
        assert not e.upper


class TestGrading:
    def test_diagonal_matrix_is_its_own_grade_zero(self):
        a = ut([[3, 0], [0, 5]])
        assert grade_component(a, 0).mat == a.mat

    def test_product_degree_additive(self):
        rng = random.Random(0)
        for _ in range(200):
            a = sampling.ttilde_matrix(rng, P, 4)
            b = sampling.ttilde_matrix(rng, P, 4)
            la, lb = rng.randrange(4), rng.randrange(4)
            prod = ut_mul(grade_component(a, la), grade_component(b, lb))
            if la + lb >= 4:
                assert prod.mat == PMatrix.zero(4, P)
            else:
                assert prod.mat == grade_component(prod, la + lb).mat

    def test_nilpotency_order(self):
        rng = random.Random(1)
        for n in (2, 3, 4):
            b = sampling.strict_upper_matrix(rng, P, n)
            power = UTMatrix(PMatrix.identity(n, P))
            for _ in range(n):
                power = ut_mul(power, b)
            assert power.mat == PMatrix.zero(n, P)


class TestDilation:
    def test_scale_one_is_identity(self):
        a = ut([[1, Fraction(3, 7), 2], [0, 1, 5], [0, 0, 1]])
        assert dilate(a, 1).mat == a.mat

    def test_scale_zero_keeps_diagonal(self):
        a = ut([[2, 5, 1], [0, 3, 7], [0, 0, 1]])
        expected = ut([[2, 0, 0], [0, 3, 0], [0, 0, 1]])
        assert dilate(a, 0).mat == expected.mat

    def test_two_by_two_form(self):
        a = ut([[1, Fraction(5, 3)], [0, 1]])
        r = Fraction(7, 2)
        assert dilate(a, r).entry(0, 1) == r * Fraction(5, 3)

    def test_multiplicative_in_scale(self):
        rng = random.Random(2)
        for _ in range(100):
            a = sampling.ttilde_matrix(rng, P, 3)
            r = sampling.nonzero_rational(rng, P)
            s = sampling.nonzero_rational(rng, P)
            assert dilate(dilate(a, r), s).mat == dilate(a, r * s).mat

    def test_ring_homomorphism(self):
        rng = random.Random(3)
        for _ in range(100):
            a = sampling.ttilde_matrix(rng, P, 3)
            b = sampling.ttilde_matrix(rng, P, 3)
            r = sampling.rational(rng, P)
            assert (dilate(ut_mul(a, b), r).mat
                    == ut_mul(dilate(a, r), dilate(b, r)).mat)
            assert (dilate(ut_add(a, b), r).mat
                    == ut_add(dilate(a, r), dilate(b, r)).mat)


class TestAnisotropicNorm:
    def test_identity(self):
        assert tri_norm(UTMatrix(PMatrix.identity(3, P))).is_zero

    def test_fractional_exponent(self):
        a = ut([[1, 0, P], [0, 1, 0], [0, 0, 1]])
        assert tri_norm(a) == PNorm(P, Fraction(1, 2))

    def test_dilation_scaling(self):
        rng = random.Random(4)
        for _ in range(300):
            a = sampling.ttilde_matrix(rng, P, 3)
            r = sampling.nonzero_rational(rng, P)
            assert tri_norm(dilate(a, r)) == fraction_pabs(r, P) * tri_norm(a)

    def test_vanishes_exactly_on_diagonal(self):
        assert tri_norm(ut([[2, 0], [0, 3]])).is_zero
        assert not tri_norm(ut([[2, 1], [0, 3]])).is_zero


class TestInverses:
    def test_zero_gives_identity(self):
        b = UTMatrix(PMatrix.zero(3, P))
        assert nilpotent_inverse(b).mat == PMatrix.identity(3, P)

    def test_two_by_two(self):
        b = ut([[0, Fraction(5, 3)], [0, 0]])
        expected = ut([[1, Fraction(5, 3)], [0, 1]])
        assert nilpotent_inverse(b).mat == expected.mat

    def test_series_inverts_exactly(self):
        rng = random.Random(5)
        for n in (2, 3, 4):
            for _ in range(100):
                b = sampling.strict_upper_matrix(rng, P, n)
                s = nilpotent_inverse(b)
                i_minus_b = matsub(PMatrix.identity(n, P), b.mat)
                assert matmul(i_minus_b, s.mat) == PMatrix.identity(n, P)

    def test_requires_strict_upper(self):
        with pytest.raises(ValueError):
            nilpotent_inverse(ut([[1, 0], [0, 1]]))

    def test_unipotent_inverse_and_norm_preservation(self):
        assert tplus_inverse(UTMatrix(PMatrix.identity(2, P))).mat \
            == PMatrix.identity(2, P)
        a = ut([[1, Fraction(7, 5)], [0, 1]])
        assert tplus_inverse(a).mat == ut([[1, Fraction(-7, 5)], [0, 1]]).mat
        rng = random.Random(6)
        for _ in range(300):
            u = sampling.tplus_matrix(rng, P, 3)
            assert tri_norm(tplus_inverse(u)) == tri_norm(u)


class TestInvariantMetrics:
    def test_self_distance(self):
        rng = random.Random(7)
        a = sampling.ttilde_matrix(rng, P, 3)
        assert left_metric(a, a).is_zero
        assert right_metric(a, a).is_zero

    def test_simple_value(self):
        i = UTMatrix(PMatrix.identity(2, P))
        a = ut([[1, P], [0, 1]])
        assert left_metric(i, a) == PNorm(P, 1)

    def test_left_invariance(self):
        rng = random.Random(8)
        for _ in range(200):
            a = sampling.ttilde_matrix(rng, P, 3)
            b = sampling.ttilde_matrix(rng, P, 3)
            h = sampling.ttilde_matrix(rng, P, 3)
            assert left_metric(ut_mul(h, a), ut_mul(h, b)) == left_metric(a, b)
            assert right_metric(ut_mul(a, h), ut_mul(b, h)) \
                == right_metric(a, b)

    def test_rejects_non_unit_diagonal(self):
        bad = ut([[2, 0], [0, 1]])
        good = ut([[1, 0], [0, 1]])
        with pytest.raises(ValueError):
            left_metric(bad, good)

    def test_diag_semimetric(self):
        a = ut([[1 + P, 0], [0, 1]])
        i = UTMatrix(PMatrix.identity(2, P))
        assert diag_semimetric(a, a).is_zero
        assert diag_semimetric(i, a) == PNorm(P, 1)

    def test_factorization_round_trip(self):
        rng = random.Random(9)
        for _ in range(200):
            a = sampling.ttilde_matrix(rng, P, 3)
            d, u = factor_diagonal_unipotent(a)
            assert u.unit_diagonal
            assert matmul(d.mat, u.mat) == a.mat


class TestHaarDimension:
    def test_small_values(self):
        assert haar_dimension(1) == 0
        assert haar_dimension(2) == 1
        assert haar_dimension(3) == 4
        assert haar_dimension(4) == 10

    def test_closed_form(self):
        for n in range(1, 12):
            assert haar_dimension(n) == n * (n * n - 1) // 6


class TestProfiles:
    def test_superadditivity_enforced(self):
        with pytest.raises(ValueError):
            SubgroupProfile((1, 3))  # l_2 > 2 l_1
        SubgroupProfile((1, 2))

    def test_identity_always_member(self):
        i = UTMatrix(PMatrix.identity(3, P))
        assert profile_subgroup_member(i, SubgroupProfile((1, 2)))

    def test_homogeneous_profile_is_norm_ball(self):
        rng = random.Random(10)
        for l in (0, 1, 2):
            profile = SubgroupProfile.homogeneous(l, 3)
            for _ in range(200):
                a = sampling.tplus_matrix(rng, P, 3)
                if rng.random() < 0.5:
                    a = dilate(a, Fraction(P) ** l)
                in_ball = tri_norm(a) <= PNorm(P, Fraction(l))
                assert profile_subgroup_member(a, profile) == in_ball

    def test_group_closure_on_samples(self):
        rng = random.Random(11)
        profile = SubgroupProfile((1, 2))

        def member():
            rows = tuple(
                tuple(Fraction(1) if k == j else
                      (Fraction(P) ** profile.level(k - j)
                       * sampling.integral(rng, P) if k > j else Fraction(0))
                      for k in range(3))
                for j in range(3)
            )
            return UTMatrix(PMatrix(rows, P))

        for _ in range(100):
            a, b = member(), member()
            assert profile_subgroup_member(a, profile)
            assert profile_subgroup_member(ut_mul(a, b), profile)
            assert profile_subgroup_member(tplus_inverse(a), profile)
