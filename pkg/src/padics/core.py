"""Exact p-adic valuation, absolute value, and the elementary (semi)metrics
built from them on the rationals.

The rationals are a dense, exactly computable model of the p-adic field:
every quantity in this package is determined by the valuation, and the
valuation is exact on Q.  Norm values are therefore never floats; they are
held in exponent form (see :class:`PNorm`) so that fractional exponents
such as 1/2 stay exact as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Union

__all__ = [
    "PRIME_LIMIT",
    "PrimeMismatch",
    "check_prime",
    "parse_rational",
    "PRational",
    "PNorm",
    "fraction_vp",
    "fraction_pabs",
    "vp",
    "pabs",
    "dp",
    "rp",
    "dp_prime",
    "dp_log",
    "pnorm_to_json",
    "pnorm_from_json",
]

# Primality is established by trial division; anything larger is rejected
# rather than silently trusted, since a composite "prime" would corrupt
# every valuation computed with it.
PRIME_LIMIT = 10**6

RationalLike = Union[int, Fraction, str, "PRational"]


class PrimeMismatch(ValueError):
    """Two values carrying different prime contexts were combined."""


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    """Validate a prime modulus by trial division (only p <= 10**6 accepted)."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise ValueError(f"prime must be an int, got {p!r}")
    if p < 2:
        raise ValueError(f"prime must be >= 2, got {p}")
    if p > PRIME_LIMIT:
        raise ValueError(f"prime {p} exceeds the trial-division bound {PRIME_LIMIT}")
    if p in (2, 3):
        return p
    if p % 2 == 0 or p % 3 == 0:
        raise ValueError(f"{p} is not prime")
    d = 5
    while d * d <= p:
        if p % d == 0 or p % (d + 2) == 0:
            raise ValueError(f"{p} is not prime")
        d += 6
    return p


def parse_rational(text: str) -> Fraction:
    """Parse the literal grammar 'num' or 'num/den' (decimal integers only).

    This is deliberately stricter than Fraction(): no decimals, no
    exponents, no whitespace inside the token.
    """
    s = text.strip()
    body = s[1:] if s[:1] in "+-" else s
    num, slash, den = body.partition("/")
    if not num.isdigit() or (slash and not den.isdigit()):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(s)


def format_rational(x: Fraction) -> str:
    return str(x)


def fraction_vp(x: Union[int, Fraction], p: int) -> Union[int, float]:
    """p-adic valuation of a plain rational; math.inf for 0."""
    if x == 0:
        return math.inf
    x = Fraction(x)
    v = 0
    num = x.numerator
    while num % p == 0:
        num //= p
        v += 1
    if v:
        return v
    den = x.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class PRational:
    """An exact rational carried with the prime p of its ambient p-adic field."""

    value: Fraction
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        object.__setattr__(self, "p", check_prime(self.p))

    @property
    def num(self) -> int:
        return self.value.numerator

    @property
    def den(self) -> int:
        return self.value.denominator

    def _coerce(self, other) -> Fraction:
        if isinstance(other, PRational):
            if other.p != self.p:
                raise PrimeMismatch(f"p={self.p} vs p={other.p}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return Fraction(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return PRational(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return PRational(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return PRational(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return PRational(self.value * v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return PRational(self.value / v, self.p)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return PRational(v / self.value, self.p)

    def __neg__(self):
        return PRational(-self.value, self.p)

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)


@total_ordering
@dataclass(frozen=True, eq=False)
class PNorm:
    """The value of a p-adic norm: either 0 or p**(-exponent).

    The exponent is stored as an exact Fraction so that fractional powers
    (the 1/(k-j) roots of matrix entries, the square root on the center of
    the Heisenberg group) remain exact.  ``exponent is None`` encodes the
    zero norm, which compares below every finite value.
    """

    p: int
    exponent: Union[Fraction, None]

    def __post_init__(self):
        object.__setattr__(self, "p", check_prime(self.p))
        if self.exponent is not None:
            object.__setattr__(self, "exponent", Fraction(self.exponent))

    @classmethod
    def zero(cls, p: int) -> "PNorm":
        return cls(p, None)

    @classmethod
    def one(cls, p: int) -> "PNorm":
        return cls(p, Fraction(0))

    @classmethod
    def of(cls, p: int, exponent) -> "PNorm":
        return cls(p, Fraction(exponent))

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def _check_p(self, other: "PNorm"):
        if self.p != other.p:
            raise PrimeMismatch(f"p={self.p} vs p={other.p}")

    def __eq__(self, other):
        if not isinstance(other, PNorm):
            return NotImplemented
        return self.p == other.p and self.exponent == other.exponent

    def __hash__(self):
        return hash((self.p, self.exponent))

    def __lt__(self, other):
        if not isinstance(other, PNorm):
            return NotImplemented
        self._check_p(other)
        if self.is_zero:
            return not other.is_zero
        if other.is_zero:
            return False
        # p**(-q1) < p**(-q2)  iff  q1 > q2
        return self.exponent > other.exponent

    def __mul__(self, other):
        if not isinstance(other, PNorm):
            return NotImplemented
        self._check_p(other)
        if self.is_zero or other.is_zero:
            return PNorm.zero(self.p)
        return PNorm(self.p, self.exponent + other.exponent)

    def power(self, alpha) -> "PNorm":
        """The alpha-th power, alpha a positive rational."""
        alpha = Fraction(alpha)
        if alpha <= 0:
            raise ValueError(f"power requires alpha > 0, got {alpha}")
        if self.is_zero:
            return self
        return PNorm(self.p, self.exponent * alpha)

    def as_fraction(self) -> Fraction:
        """The exact rational value, defined only for integral exponents."""
        if self.is_zero:
            return Fraction(0)
        if self.exponent.denominator != 1:
            raise ValueError(f"p^{-self.exponent} is irrational")
        q = int(self.exponent)
        return Fraction(1, self.p**q) if q >= 0 else Fraction(self.p ** (-q))

    def __str__(self):
        if self.is_zero:
            return "0"
        if self.exponent == 0:
            return "1"
        return f"{self.p}^{-self.exponent}"

    def __repr__(self):
        return f"PNorm({self.p}, {self.exponent!r})"


def fraction_pabs(x: Union[int, Fraction], p: int) -> PNorm:
    """p-adic absolute value of a plain rational."""
    v = fraction_vp(x, p)
    if v is math.inf:
        return PNorm.zero(p)
    return PNorm(p, Fraction(v))


def vp(x: PRational) -> Union[int, float]:
    """The valuation: the unique j with x = p**j * a/b, p dividing neither
    a nor b; math.inf for x = 0."""
    return fraction_vp(x.value, x.p)


def pabs(x: PRational) -> PNorm:
    """p-adic absolute value |x|_p = p**(-vp(x)), 0 at x = 0."""
    return fraction_pabs(x.value, x.p)


def dp(x: PRational, y: PRational) -> PNorm:
    """The p-adic ultrametric |x - y|_p."""
    return pabs(x - y)


def rp(x: PRational) -> PNorm:
    """Gauge on the multiplicative group: max(|x - 1|_p, |1/x - 1|_p).

    Equals |x - 1|_p <= 1 on units, and max(|x|_p, 1/|x|_p) >= p off them.
    """
    if not x:
        raise ValueError("rp is undefined at 0")
    v = vp(x)
    if v == 0:
        return pabs(x - 1)
    return PNorm(x.p, Fraction(-abs(v)))


def dp_prime(x: PRational, y: PRational, t=None) -> Union[PNorm, Fraction]:
    """Capped multiplicative ultrametric on nonzero rationals.

    Equals |x - y|_p / |y|_p when |x|_p = |y|_p, and the cap t otherwise.
    The cap may be any rational in [1, p]; it defaults to p.
    """
    if not x or not y:
        raise ValueError("dp_prime is undefined at 0")
    if x.p != y.p:
        raise PrimeMismatch(f"p={x.p} vs p={y.p}")
    t = Fraction(x.p) if t is None else Fraction(t)
    if not 1 <= t <= x.p:
        raise ValueError(f"cap must lie in [1, p], got {t}")
    if vp(x) == vp(y):
        return pabs(x / y - 1)
    return t


def dp_log(x: PRational, y: PRational) -> int:
    """|log_p |x|_p - log_p |y|_p| = |vp(x) - vp(y)|, an exact integer.

    A translation-invariant semimetric (not ultra) on the multiplicative
    group: distinct points at distance 0 exist whenever |x|_p = |y|_p.
    """
    if not x or not y:
        raise ValueError("dp_log is undefined at 0")
    if x.p != y.p:
        raise PrimeMismatch(f"p={x.p} vs p={y.p}")
    return abs(vp(x) - vp(y))


def pnorm_to_json(n: PNorm) -> dict:
    if n.is_zero:
        return {"kind": "zero"}
    return {"kind": "finite", "exponent": str(n.exponent)}


def pnorm_from_json(d: dict, p: int) -> PNorm:
    if d.get("kind") == "zero":
        return PNorm.zero(p)
    if d.get("kind") == "finite":
        return PNorm(p, Fraction(d["exponent"]))
    raise ValueError(f"not a serialized norm: {d!r}")
