"""The ax+b group over the rationals with a prime context: composition,
inversion, the coefficient ultranorm with its sup formula, the two gauges
on the isometry and invertible subgroups, and the 2 x 2 matrix picture.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core import PNorm, PrimeMismatch, check_prime, fraction_pabs, fraction_vp
from .matrices import PMatrix
from .triangular import UTMatrix

__all__ = [
    "AffineMap",
    "AffineMembership",
    "aff_apply",
    "aff_compose",
    "aff_inverse",
    "aff_norm",
    "aff_L",
    "aff_Lprime",
    "to_matrix",
    "membership",
]


@dataclass(frozen=True)
class AffineMap:
    """The map x -> a*x + b.  Invertible exactly when a != 0."""

    a: Fraction
    b: Fraction
    p: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "p", check_prime(self.p))

    @classmethod
    def identity(cls, p: int) -> "AffineMap":
        return cls(1, 0, p)

    @property
    def invertible(self) -> bool:
        return self.a != 0

    def __str__(self):
        return f"{self.a}*x + {self.b}"


def _check_pair(f: AffineMap, g: AffineMap):
    if f.p != g.p:
        raise PrimeMismatch(f"p={f.p} vs p={g.p}")


def aff_apply(f: AffineMap, x) -> Fraction:
    return f.a * Fraction(x) + f.b


def aff_compose(f: AffineMap, g: AffineMap) -> AffineMap:
    """(f o g)(x) = f(g(x)): coefficients (a*c, a*d + b)."""
    _check_pair(f, g)
    return AffineMap(f.a * g.a, f.a * g.b + f.b, f.p)


def aff_inverse(f: AffineMap) -> AffineMap:
    if not f.invertible:
        raise ValueError("a = 0: not invertible")
    return AffineMap(1 / f.a, -f.b / f.a, f.p)


def aff_norm(f: AffineMap) -> PNorm:
    """max(|a|_p, |b|_p); also the sup of |f(x)|_p over integral x, a
    maximum already attained on {0, 1}."""
    return max(fraction_pabs(f.a, f.p), fraction_pabs(f.b, f.p))


def aff_L(f: AffineMap) -> PNorm:
    """The displacement gauge max(|a - 1|_p, |b|_p) on maps with |a|_p = 1.

    Symmetric under inversion and max-subadditive under composition.
    """
    if fraction_vp(f.a, f.p) != 0:
        raise ValueError("the displacement gauge requires |a|_p = 1")
    return max(fraction_pabs(f.a - 1, f.p), fraction_pabs(f.b, f.p))


def aff_Lprime(f: AffineMap, t=1) -> Union[PNorm, Fraction]:
    """The capped gauge: equal to aff_L on maps with integral coefficients
    and unit |a|_p, and to the cap t >= 1 everywhere else."""
    if not f.invertible:
        raise ValueError("a = 0: not in the invertible group")
    t = Fraction(t)
    if t < 1:
        raise ValueError(f"cap must be >= 1, got {t}")
    if membership(f).in_Astar_Zp:
        return aff_L(f)
    return t


def to_matrix(f: AffineMap) -> UTMatrix:
    """The 2 x 2 matrix ((a, b), (0, 1)); composition becomes matrix
    multiplication and coefficient differences become matrix differences."""
    return UTMatrix(PMatrix(((f.a, f.b), (Fraction(0), Fraction(1))), f.p))


@dataclass(frozen=True)
class AffineMembership:
    in_A_Zp: bool
    in_Astar_Zp: bool
    in_A_Up: bool


def membership(f: AffineMap) -> AffineMembership:
    """Valuation tests for the three distinguished sub-semigroups:
    integral coefficients; integral with unit slope; unit slope."""
    va, vb = fraction_vp(f.a, f.p), fraction_vp(f.b, f.p)
    integral = va >= 0 and vb >= 0
    unit_slope = va == 0
    return AffineMembership(
        in_A_Zp=integral,
        in_Astar_Zp=integral and unit_slope,
        in_A_Up=unit_slope,
    )
