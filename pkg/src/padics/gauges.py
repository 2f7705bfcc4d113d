"""Combinators that build semimetrics and ultrametrics from other
semimetrics or from group gauges, with sampling-based axiom checkers.

All combinators are pure and capture immutable inputs, so the resulting
evaluation rules are reentrant and thread-safe.  Checkers take a seed and
are deterministic for a fixed seed; since every value is exact, each
sampled check is conclusive.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from .values import Value, value_str, vadd, vcmp, veq, vle, vmax, vmin, vpow

__all__ = [
    "Semimetric",
    "GroupOps",
    "Gauge",
    "truncate",
    "power",
    "max_family",
    "capped_sequence_max",
    "product_lift",
    "gauge_to_left",
    "gauge_to_right",
    "indicator_gauge",
    "nested_gauge",
    "AxiomResult",
    "CheckReport",
    "check_axioms",
]


@dataclass(frozen=True)
class Semimetric:
    """An evaluation rule (x, y) -> nonnegative exact value.

    The ``ultrametric`` flag is the caller's assertion, used only to relax
    the range of admissible powers; nothing is assumed when checking.
    """

    fn: Callable[[Any, Any], Value]
    name: str = "d"
    ultrametric: bool = False

    def __call__(self, x, y) -> Value:
        return self.fn(x, y)


@dataclass(frozen=True)
class GroupOps:
    """The group structure a gauge needs: multiply, invert, identity."""

    mul: Callable[[Any, Any], Any]
    inv: Callable[[Any], Any]
    identity: Any


@dataclass(frozen=True)
class Gauge:
    """A length function x -> nonnegative exact value on a group."""

    fn: Callable[[Any], Value]
    ops: GroupOps
    name: str = "r"

    def __call__(self, x) -> Value:
        return self.fn(x)


def truncate(d: Semimetric, t) -> Semimetric:
    """min(d, t): preserves the semimetric and ultrametric axioms."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("truncation level must be positive")
    return Semimetric(
        lambda x, y: vmin([d(x, y), t]),
        name=f"min({d.name},{t})",
        ultrametric=d.ultrametric,
    )


def power(d: Semimetric, alpha) -> Semimetric:
    """Pointwise alpha-th power, computed exactly on norm exponents.

    For a general semimetric only 0 < alpha <= 1 preserves the triangle
    inequality; for a (claimed) ultrametric any alpha > 0 is admitted.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if alpha > 1 and not d.ultrametric:
        raise ValueError("alpha > 1 requires an ultrametric input")
    return Semimetric(
        lambda x, y: vpow(d(x, y), alpha),
        name=f"{d.name}^{alpha}",
        ultrametric=d.ultrametric,
    )


def max_family(ds: Sequence[Semimetric]) -> Semimetric:
    """Pointwise maximum of finitely many semimetrics on one domain."""
    ds = list(ds)
    if not ds:
        raise ValueError("max_family of an empty family")
    return Semimetric(
        lambda x, y: vmax([d(x, y) for d in ds]),
        name="max(" + ",".join(d.name for d in ds) + ")",
        ultrametric=all(d.ultrametric for d in ds),
    )


def capped_sequence_max(ds: Sequence[Semimetric], ts: Sequence) -> Semimetric:
    """max over j of min(d_j, t_j), for a finite prefix of a sequence with
    caps t_j decreasing to 0.

    Contract: the finite prefix is faithful to the infinite object at
    every radius larger than the first omitted cap; evaluating finer than
    ts[-1] is the caller's responsibility.
    """
    ds = list(ds)
    ts = [Fraction(t) for t in ts]
    if len(ds) != len(ts) or not ds:
        raise ValueError("need one positive cap per semimetric")
    if any(t <= 0 for t in ts):
        raise ValueError("caps must be positive")
    if any(a < b for a, b in zip(ts, ts[1:])):
        raise ValueError("caps must be non-increasing")
    capped = [truncate(d, t) for d, t in zip(ds, ts)]
    return max_family(capped)


def product_lift(d: Semimetric, index: int, arity: int) -> Semimetric:
    """Evaluate a factor semimetric on the index-th coordinate of tuples."""
    if not 0 <= index < arity:
        raise ValueError(f"index {index} out of range for arity {arity}")

    def lifted(x, y):
        if len(x) != arity or len(y) != arity:
            raise ValueError(f"expected {arity}-tuples")
        return d(x[index], y[index])

    return Semimetric(lifted, name=f"{d.name}[{index}]", ultrametric=d.ultrametric)


def gauge_to_left(ops: GroupOps, r: Gauge) -> Semimetric:
    """d(x, y) = r(y^-1 x): left-invariant; semi-ultrametric when r
    satisfies the max inequality."""
    return Semimetric(lambda x, y: r(ops.mul(ops.inv(y), x)), name=f"{r.name}L")


def gauge_to_right(ops: GroupOps, r: Gauge) -> Semimetric:
    """d(x, y) = r(x y^-1): the right-invariant mirror of gauge_to_left."""
    return Semimetric(lambda x, y: r(ops.mul(x, ops.inv(y))), name=f"{r.name}R")


def indicator_gauge(ops: GroupOps, member: Callable[[Any], bool]) -> Gauge:
    """0 on the subgroup, 1 off it."""
    if not member(ops.identity):
        raise ValueError("the identity must belong to the subgroup")
    return Gauge(
        lambda x: Fraction(0) if member(x) else Fraction(1),
        ops,
        name="r_U",
    )


def nested_gauge(ops: GroupOps, members: Sequence[Callable[[Any], bool]],
                 ts: Sequence) -> Gauge:
    """max over j of t_j * (indicator of the complement of U_j), for an
    increasing chain U_1 <= U_2 <= ... and caps t_j increasing to infinity.

    Only a finite prefix of the chain is supplied; a point outside the
    largest subgroup violates the prefix contract and raises.
    """
    members = list(members)
    ts = [Fraction(t) for t in ts]
    if len(members) != len(ts) or not members:
        raise ValueError("need one threshold per subgroup")
    if any(t < 0 for t in ts):
        raise ValueError("thresholds must be nonnegative")
    if any(a > b for a, b in zip(ts, ts[1:])):
        raise ValueError("thresholds must be non-decreasing")

    def gauge(x):
        if not members[-1](x):
            raise ValueError("point escapes the supplied subgroup chain")
        value = Fraction(0)
        for pred, t in zip(members, ts):
            if not pred(x):
                value = t  # thresholds are non-decreasing: last failure wins
        return value

    return Gauge(gauge, ops, name="r_chain")


@dataclass
class AxiomResult:
    axiom: str
    samples: int
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "violations": self.violations,
            "samples": self.samples,
        }


@dataclass
class CheckReport:
    name: str
    samples: int
    results: list
    zero_distance_pairs: int = 0

    def result(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    @property
    def is_semimetric(self) -> bool:
        return all(self.result(a).ok for a in ("self-distance", "symmetry", "triangle"))

    @property
    def is_ultrametric(self) -> bool:
        return self.is_semimetric and self.result("ultrametric").ok

    @property
    def separates_points(self) -> bool:
        return self.zero_distance_pairs == 0

    def to_json(self) -> str:
        return json.dumps(
            {
                "semimetric": self.name,
                "samples": self.samples,
                "zero_distance_pairs": self.zero_distance_pairs,
                "results": [r.to_dict() for r in self.results],
            },
            sort_keys=True,
        )


def _witness(x, y, z, lhs: Value, rhs: Value) -> dict:
    w = {"x": str(x), "y": str(y), "lhs": value_str(lhs), "rhs": value_str(rhs)}
    if z is not None:
        w["z"] = str(z)
    return w


MAX_WITNESSES = 10


def check_axioms(d: Semimetric, sampler: Callable, count: int, seed: int = 0,
                 triangle: bool = True) -> CheckReport:
    """Test the semimetric axioms on ``count`` sampled triples.

    Checks d(x,x) = 0, symmetry, the triangle inequality, and the
    ultrametric inequality, all with exact comparisons.  Also counts
    distinct sampled pairs at distance 0, which distinguishes a semimetric
    from a metric on the sample.
    """
    rng = random.Random(seed)
    self_d = AxiomResult("self-distance", count)
    sym = AxiomResult("symmetry", count)
    tri = AxiomResult("triangle", count)
    ultra = AxiomResult("ultrametric", count)
    zero_pairs = 0
    for _ in range(count):
        x, y, z = sampler(rng), sampler(rng), sampler(rng)
        dxx = d(x, x)
        if not veq(dxx, 0) and len(self_d.violations) < MAX_WITNESSES:
            self_d.violations.append(_witness(x, x, None, dxx, 0))
        dxy, dyx = d(x, y), d(y, x)
        if not veq(dxy, dyx) and len(sym.violations) < MAX_WITNESSES:
            sym.violations.append(_witness(x, y, None, dxy, dyx))
        if x != y and veq(dxy, 0):
            zero_pairs += 1
        dxz, dyz = d(x, z), d(y, z)
        if triangle and not vle(dxz, vadd(dxy, dyz)):
            if len(tri.violations) < MAX_WITNESSES:
                tri.violations.append(_witness(x, y, z, dxz, vadd(dxy, dyz)))
        if not vle(dxz, vmax([dxy, dyz])):
            if len(ultra.violations) < MAX_WITNESSES:
                ultra.violations.append(_witness(x, y, z, dxz, vmax([dxy, dyz])))
    results = [self_d, sym, tri, ultra] if triangle else [self_d, sym, ultra]
    return CheckReport(d.name, count, results, zero_pairs)
