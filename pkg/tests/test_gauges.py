import random
from fractions import Fraction

import pytest

from padics.core import PNorm, fraction_pabs, fraction_vp
from padics.gauges import (Gauge, GroupOps, Semimetric, capped_sequence_max,
                           check_axioms, gauge_to_left, gauge_to_right,
                           indicator_gauge, max_family, nested_gauge, power,
                           product_lift, truncate)
from padics.values import veq, vle

P = 2


def dp_semimetric(p=P):
    return Semimetric(lambda x, y: fraction_pabs(x - y, p), name="d_p",
                      ultrametric=True)


def discrete():
    return Semimetric(
        lambda x, y: Fraction(0) if x == y else Fraction(1),
        name="discrete", ultrametric=True)


def rational_sampler(p=P):
    def sample(rng):
        if rng.random() < 0.1:
            return Fraction(0)
        return (Fraction(p) ** rng.randint(-3, 3)
                * Fraction(rng.randint(1, 50), rng.choice((1, 3, 5, 7, 9))))

    return sample


MULT_OPS = GroupOps(mul=lambda a, b: a * b, inv=lambda a: 1 / a,
                    identity=Fraction(1))
ADD_OPS = GroupOps(mul=lambda a, b: a + b, inv=lambda a: -a,
                   identity=Fraction(0))


class TestTruncate:
    def test_caps_large_distances(self):
        d = truncate(dp_semimetric(), 1)
        assert veq(d(Fraction(0), Fraction(1, 4)), Fraction(1))

    def test_self_distance(self):
        d = truncate(dp_semimetric(), 1)
        assert veq(d(Fraction(5), Fraction(5)), 0)

    def test_discrete_capped_at_half(self):
        d = truncate(discrete(), Fraction(1, 2))
        assert d(1, 2) == Fraction(1, 2)

    def test_preserves_axioms(self):
        report = check_axioms(truncate(dp_semimetric(), Fraction(3, 2)),
                              rational_sampler(), 1000, seed=1)
        assert report.is_ultrametric


class TestPower:
    def test_square_root_of_dp(self):
        d = power(dp_semimetric(), Fraction(1, 2))
        assert d(Fraction(0), Fraction(4)) == PNorm(2, 1)

    def test_identity_power(self):
        d = power(dp_semimetric(), 1)
        x, y = Fraction(3, 5), Fraction(1, 7)
        assert d(x, y) == dp_semimetric()(x, y)

    def test_square_of_ultrametric_stays_ultrametric(self):
        d3 = Semimetric(lambda x, y: fraction_pabs(x - y, 3), ultrametric=True)
        d = power(d3, 2)
        assert d(Fraction(0), Fraction(3)) == PNorm(3, 2)
        report = check_axioms(d, rational_sampler(3), 1000, seed=2)
        assert report.is_ultrametric

    def test_alpha_above_one_needs_ultrametric_flag(self):
        plain = Semimetric(lambda x, y: abs(Fraction(x) - Fraction(y)))
        with pytest.raises(ValueError):
            power(plain, 2)

    def test_half_power_of_plain_metric_keeps_triangle(self):
        plain = Semimetric(lambda x, y: fraction_pabs(x - y, 2))
        d = power(plain, Fraction(1, 2))
        report = check_axioms(d, rational_sampler(), 400, seed=3)
        assert report.result("triangle").ok


class TestMaxFamily:
    def test_idempotent(self):
        d = dp_semimetric()
        m = max_family([d, d])
        x, y = Fraction(1, 3), Fraction(5)
        assert veq(m(x, y), d(x, y))

    def test_coordinatewise_example(self):
        lift0 = product_lift(dp_semimetric(), 0, 2)
        lift1 = product_lift(dp_semimetric(), 1, 2)
        m = max_family([lift0, lift1])
        got = m((Fraction(0), Fraction(0)), (Fraction(1), Fraction(2)))
        assert got == PNorm.one(2)  # max(1, 2^-1)

    def test_empty_family_rejected(self):
        with pytest.raises(ValueError):
            max_family([])

    def test_max_of_gauge_ultrametrics_is_ultrametric(self):
        left = gauge_to_left(ADD_OPS, Gauge(lambda x: fraction_pabs(x, 2),
                                            ADD_OPS))
        m = max_family([left, power(dp_semimetric(), 2)])
        report = check_axioms(m, rational_sampler(), 1000, seed=4)
        assert report.result("ultrametric").ok


class TestCappedSequenceMax:
    def test_two_discrete_factors(self):
        d = capped_sequence_max([discrete(), discrete()], [1, Fraction(1, 2)])
        assert d(Fraction(0), Fraction(1)) == Fraction(1)

    def test_all_zero(self):
        zero = Semimetric(lambda x, y: Fraction(0), ultrametric=True)
        d = capped_sequence_max([zero, zero], [1, Fraction(1, 2)])
        assert d(1, 2) == Fraction(0)

    def test_non_monotone_caps_rejected(self):
        with pytest.raises(ValueError):
            capped_sequence_max([discrete(), discrete()],
                                [Fraction(1, 2), 1])

    def test_matches_product_ultrametric_brute_force(self):
        # On tuples, the capped max of lifted discrete factors must agree
        # with the directly computed first-disagreement value.
        arity = 6
        caps = [Fraction(1, 2) ** j for j in range(arity)]
        lifts = [product_lift(discrete(), j, arity) for j in range(arity)]
        d = capped_sequence_max(lifts, caps)
        rng = random.Random(5)
        for _ in range(300):
            x = tuple(rng.randint(0, 2) for _ in range(arity))
            y = tuple(rng.randint(0, 2) for _ in range(arity))
            expected = Fraction(0)
            for j in range(arity):
                if x[j] != y[j]:
                    expected = max(expected, caps[j])
            assert veq(d(x, y), expected)


class TestProductLift:
    def test_ignores_other_coordinates(self):
        d = product_lift(dp_semimetric(), 0, 2)
        assert d((Fraction(1), Fraction(9)),
                 (Fraction(1), Fraction(17))).is_zero

    def test_equal_tuples(self):
        d = product_lift(dp_semimetric(), 1, 2)
        t = (Fraction(1), Fraction(2))
        assert d(t, t).is_zero

    def test_arity_enforced(self):
        d = product_lift(dp_semimetric(), 0, 2)
        with pytest.raises(ValueError):
            d((Fraction(1),), (Fraction(1), Fraction(2)))


class TestGaugeConversion:
    def test_left_matches_definition(self):
        gauge = Gauge(lambda x: fraction_pabs(x - 1, 2), MULT_OPS)
        d = gauge_to_left(MULT_OPS, gauge)
        x, y = Fraction(3, 5), Fraction(7, 9)
        assert d(x, y) == fraction_pabs(x / y - 1, 2)

    def test_self_distance(self):
        gauge = Gauge(lambda x: fraction_pabs(x - 1, 2), MULT_OPS)
        d = gauge_to_left(MULT_OPS, gauge)
        assert d(Fraction(5, 3), Fraction(5, 3)).is_zero

    def test_left_invariance_on_units(self):
        gauge = Gauge(lambda x: fraction_pabs(x - 1, 2), MULT_OPS)
        d = gauge_to_left(MULT_OPS, gauge)
        rng = random.Random(6)

        def unit():
            return Fraction(rng.choice((1, 3, 5, 7, 9, 11)),
                            rng.choice((1, 3, 5, 7, 9, 13)))

        for _ in range(1000):
            a, x, y = unit(), unit(), unit()
            assert veq(d(a * x, a * y), d(x, y))

    def test_right_is_left_after_inversion(self):
        gauge = Gauge(lambda x: fraction_pabs(x - 1, 2)
                      if fraction_vp(x, 2) == 0 else Fraction(4), MULT_OPS)
        dl = gauge_to_left(MULT_OPS, gauge)
        dr = gauge_to_right(MULT_OPS, gauge)
        rng = random.Random(7)
        for _ in range(300):
            x = Fraction(rng.choice((1, 3, 5, 7)), rng.choice((1, 3, 5)))
            y = Fraction(rng.choice((1, 3, 5, 7)), rng.choice((1, 3, 5)))
            assert veq(dl(x, y), dr(1 / x, 1 / y))
            # the group is abelian, so the gauge is conjugation-invariant
            # and both constructions agree outright
            assert veq(dl(x, y), dr(x, y))


class TestIndicatorGauge:
    def test_unit_subgroup(self):
        gauge = indicator_gauge(MULT_OPS, lambda x: fraction_vp(x, 2) == 0)
        assert gauge(Fraction(2)) == 1
        assert gauge(Fraction(1)) == 0
        assert gauge(Fraction(3, 5)) == 0

    def test_identity_must_belong(self):
        with pytest.raises(ValueError):
            indicator_gauge(MULT_OPS, lambda x: x == 2)

    def test_induced_semimetric_is_ultra(self):
        gauge = indicator_gauge(MULT_OPS, lambda x: fraction_vp(x, 2) == 0)
        d = gauge_to_left(MULT_OPS, gauge)
        sampler = rational_sampler()

        def nonzero(rng):
            x = sampler(rng)
            return x if x else Fraction(1)

        report = check_axioms(d, nonzero, 1000, seed=8)
        assert report.is_semimetric
        assert report.result("ultrametric").ok
        assert not report.separates_points  # distinct units at distance 0

    def test_normal_subgroup_gives_bi_invariant_semimetric(self):
        # non-abelian case: the congruence subgroup inside the integral
        # matrix group is normal, so left and right constructions agree
        from padics import sampling
        from padics.matrices import PMatrix, in_gl_j, matinv, matmul

        ops = GroupOps(mul=matmul, inv=matinv,
                       identity=PMatrix.identity(2, 2))
        gauge = indicator_gauge(ops, lambda a: in_gl_j(a, 1))
        dl = gauge_to_left(ops, gauge)
        dr = gauge_to_right(ops, gauge)
        rng = random.Random(12)
        for _ in range(300):
            x = sampling.glzp_matrix(rng, 2, 2)
            y = sampling.glzp_matrix(rng, 2, 2)
            a = sampling.glzp_matrix(rng, 2, 2)
            assert gauge(matmul(matmul(a, x), matinv(a))) == gauge(x)
            assert dl(x, y) == dr(x, y)
            assert dl(matmul(a, x), matmul(a, y)) == dl(x, y)
            assert dr(matmul(x, a), matmul(y, a)) == dr(x, y)


class TestNestedGauge:
    def chain(self, depth=5):
        # U_j = p^(1-j) Z_p: an increasing chain exhausting bounded sets
        members = [
            (lambda j: lambda x: fraction_vp(x, P) >= 1 - j)(j)
            for j in range(1, depth + 1)
        ]
        ts = [Fraction(j - 1) for j in range(1, depth + 1)]
        return nested_gauge(ADD_OPS, members, ts)

    def test_identity_and_first_subgroup(self):
        gauge = self.chain()
        assert gauge(Fraction(0)) == 0
        assert gauge(Fraction(1)) == 0  # in p^0 Z_p = U_1
        assert gauge(Fraction(3, 5)) == 0

    def test_escaping_levels(self):
        # t_1 = 0, so escaping U_1 alone is weightless; each further
        # escaped level contributes its own threshold.
        gauge = self.chain()
        assert gauge(Fraction(1, 2)) == Fraction(0)   # outside U_1 only
        assert gauge(Fraction(1, 4)) == Fraction(1)   # outside U_1, U_2
        assert gauge(Fraction(3, 8)) == Fraction(2)

    def test_prefix_contract(self):
        gauge = self.chain(3)
        with pytest.raises(ValueError):
            gauge(Fraction(1, 32))

    def test_open_balls_recover_the_chain(self):
        # {x : r(x) < t_j} = U_j on an enumerated quotient slice
        gauge = self.chain()
        pts = [Fraction(n, 8) for n in range(-64, 64)]
        for j in range(2, 5):
            t_j = Fraction(j - 1)
            for x in pts:
                in_ball = gauge(x) < t_j
                in_uj = fraction_vp(x, P) >= 1 - j
                assert in_ball == in_uj, (x, j)

    def test_non_monotone_thresholds_rejected(self):
        members = [lambda x: True, lambda x: True]
        with pytest.raises(ValueError):
            nested_gauge(ADD_OPS, members, [2, 1])


class TestChecker:
    def test_dp_passes_cleanly(self):
        report = check_axioms(dp_semimetric(), rational_sampler(), 1000,
                              seed=9)
        assert report.is_ultrametric
        assert report.separates_points

    def test_broken_symmetry_is_caught(self):
        broken = Semimetric(
            lambda x, y: Fraction(1) if x < y else Fraction(0))
        report = check_axioms(broken, rational_sampler(), 200, seed=10)
        assert not report.result("symmetry").ok
        witness = report.result("symmetry").violations[0]
        assert {"x", "y", "lhs", "rhs"} <= set(witness)

    def test_log_metric_is_semimetric_not_metric(self):
        def log_d(x, y):
            return Fraction(abs(fraction_vp(x, 3) - fraction_vp(y, 3)))

        d = Semimetric(log_d, name="d_p''")
        # witness from the contract: distinct units 1 and 2 at distance 0
        assert d(Fraction(1), Fraction(2)) == 0

        def nonzero(rng):
            return (Fraction(3) ** rng.randint(-3, 3)
                    * Fraction(rng.randint(1, 20)))

        report = check_axioms(d, nonzero, 1000, seed=11)
        assert report.is_semimetric
        assert not report.separates_points
        assert not report.result("ultrametric").ok  # additive, not ultra

    def test_report_serializes(self):
        report = check_axioms(dp_semimetric(), rational_sampler(), 50)
        doc = report.to_json()
        assert '"samples": 50' in doc
