"""Exact ordering and arithmetic for the mixed value domain of semimetrics.

Semimetrics in this package take values that are either plain nonnegative
rationals (indicator gauges, caps, log-gauges) or p-adic norm values
p**(-q) with rational q.  Sums of such values (needed by the triangle
axiom checker once fractional exponents appear) are irrational in
general, so comparisons go through :class:`Exact`: a formal nonnegative
combination sum(c_i * p**e_i).

Comparison is still exact.  Writing u = p**(1/m) with m the common
denominator of the exponents, a difference of two values is an integer
polynomial in u; u has minimal polynomial x**m - p (Eisenstein), so the
difference is zero iff it reduces to zero modulo that relation, and
otherwise its sign is found by interval refinement with integer m-th
roots.  No floating point is involved at any step.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

from .core import PNorm, PrimeMismatch

__all__ = [
    "Value",
    "Exact",
    "as_exact",
    "vcmp",
    "veq",
    "vle",
    "vlt",
    "vmax",
    "vmin",
    "vadd",
    "vmul",
    "vpow",
    "value_str",
]

Value = Union[PNorm, Fraction, int, "Exact"]


def _iroot(n: int, k: int) -> int:
    """Floor of the integer k-th root of n >= 0 (Newton iteration)."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0
    if k == 1:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


class Exact:
    """A nonnegative real of the form sum(c * p**e), c, e rational, c > 0.

    The terms dict maps exponent e (of p itself, not of 1/p) to its
    coefficient.  ``p`` may be None while every exponent is 0, i.e. while
    the value is plain rational.
    """

    __slots__ = ("p", "terms")

    def __init__(self, p, terms: dict):
        clean = {Fraction(e): Fraction(c) for e, c in terms.items() if c != 0}
        if any(c < 0 for c in clean.values()):
            raise ValueError("Exact values are nonnegative combinations")
        if p is None and any(e != 0 for e in clean):
            raise ValueError("prime required for non-rational exponents")
        self.p = p
        self.terms = clean

    @classmethod
    def from_value(cls, v: Value, p=None) -> "Exact":
        if isinstance(v, Exact):
            return v
        if isinstance(v, PNorm):
            if v.is_zero:
                return cls(v.p, {})
            return cls(v.p, {-v.exponent: Fraction(1)})
        c = Fraction(v)
        if c < 0:
            raise ValueError(f"semimetric values are nonnegative, got {c}")
        return cls(p, {Fraction(0): c})

    def _merge_p(self, other: "Exact"):
        if self.p is not None and other.p is not None and self.p != other.p:
            raise PrimeMismatch(f"p={self.p} vs p={other.p}")
        return self.p if self.p is not None else other.p

    def add(self, other: "Exact") -> "Exact":
        p = self._merge_p(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return Exact(p, terms)

    def scale(self, factor: Value) -> "Exact":
        """Multiply by a single norm value or nonnegative rational."""
        f = Exact.from_value(factor)
        if len(f.terms) > 1:
            raise ValueError("can only scale by a single-term value")
        p = self._merge_p(f)
        if not f.terms:
            return Exact(p, {})
        (fe, fc), = f.terms.items()
        return Exact(p, {e + fe: c * fc for e, c in self.terms.items()})

    def compare(self, other: "Exact") -> int:
        """-1, 0, or 1; exact for every representable pair."""
        p = self._merge_p(other)
        diff = dict(self.terms)
        for e, c in other.terms.items():
            diff[e] = diff.get(e, Fraction(0)) - c
        diff = {e: c for e, c in diff.items() if c != 0}
        if not diff:
            return 0
        m = math.lcm(*(e.denominator for e in diff))
        if m == 1:
            total = sum(c * Fraction(p if p is not None else 1) ** int(e)
                        for e, c in diff.items())
            return (total > 0) - (total < 0)
        # Reduce modulo u**m = p, u = p**(1/m): buckets[b] multiplies u**b.
        buckets = [Fraction(0)] * m
        for e, c in diff.items():
            a, b = divmod(int(e * m), m)
            buckets[b] += c * Fraction(p) ** a
        if not any(buckets):
            return 0
        # The value is nonzero, so interval refinement terminates.
        digits = 8
        while True:
            lo = hi = Fraction(0)
            scale = 10**digits
            for b, c in enumerate(buckets):
                if c == 0:
                    continue
                if b == 0:
                    blo = bhi = Fraction(1)
                else:
                    r = _iroot(p**b * scale**m, m)
                    blo, bhi = Fraction(r, scale), Fraction(r + 1, scale)
                if c > 0:
                    lo, hi = lo + c * blo, hi + c * bhi
                else:
                    lo, hi = lo + c * bhi, hi + c * blo
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            digits *= 2

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            if e == 0:
                parts.append(str(c))
            else:
                base = f"{self.p}^{e}"
                parts.append(base if c == 1 else f"{c}*{base}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Exact(p={self.p}, {self.terms!r})"


def as_exact(v: Value, p=None) -> Exact:
    return Exact.from_value(v, p)


def vcmp(a: Value, b: Value) -> int:
    # Fast paths for the homogeneous cases, Exact for everything mixed.
    if isinstance(a, PNorm) and isinstance(b, PNorm):
        if a.p != b.p:
            raise PrimeMismatch(f"p={a.p} vs p={b.p}")
        return (b < a) - (a < b)
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return (a > b) - (a < b)
    return as_exact(a).compare(as_exact(b))


def veq(a: Value, b: Value) -> bool:
    return vcmp(a, b) == 0


def vle(a: Value, b: Value) -> bool:
    return vcmp(a, b) <= 0


def vlt(a: Value, b: Value) -> bool:
    return vcmp(a, b) < 0


def vmax(values: Iterable[Value]) -> Value:
    vs = list(values)
    if not vs:
        raise ValueError("vmax of an empty family")
    best = vs[0]
    for v in vs[1:]:
        if vcmp(v, best) > 0:
            best = v
    return best


def vmin(values: Iterable[Value]) -> Value:
    vs = list(values)
    if not vs:
        raise ValueError("vmin of an empty family")
    best = vs[0]
    for v in vs[1:]:
        if vcmp(v, best) < 0:
            best = v
    return best


def vadd(a: Value, b: Value) -> Value:
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return Fraction(a) + Fraction(b)
    return as_exact(a).add(as_exact(b))


def vmul(a: Value, b: Value) -> Value:
    if isinstance(a, PNorm) and isinstance(b, PNorm):
        return a * b
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return Fraction(a) * Fraction(b)
    ea, eb = as_exact(a), as_exact(b)
    if len(ea.terms) <= 1:
        return eb.scale(a)
    return ea.scale(b)


def vpow(v: Value, alpha) -> Value:
    """The alpha-th power where it stays exactly representable."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("vpow requires alpha > 0")
    if isinstance(v, PNorm):
        return v.power(alpha)
    if isinstance(v, (int, Fraction)):
        c = Fraction(v)
        if c in (0, 1) or alpha.denominator == 1:
            return c ** int(alpha) if alpha.denominator == 1 else c
        k = alpha.denominator
        rn, rd = _iroot(c.numerator, k), _iroot(c.denominator, k)
        if rn**k == c.numerator and rd**k == c.denominator:
            return Fraction(rn, rd) ** alpha.numerator
        raise ValueError(f"{c}^{alpha} is not rational")
    raise ValueError(f"cannot take powers of {v!r}")


def value_str(v: Value) -> str:
    if isinstance(v, (PNorm, Exact)):
        return str(v)
    return str(Fraction(v))
