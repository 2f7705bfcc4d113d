"""Exact matrices over Q as stand-ins for matrices over the p-adic field:
the max-entry ultranorm, GL(n, Z_p) membership, the congruence subgroups
GL_j(n, Z_p), and the three gauges r, r', r'' on the invertible group.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .core import PNorm, PrimeMismatch, check_prime, fraction_pabs, fraction_vp

__all__ = [
    "PVector",
    "PMatrix",
    "vecnorm",
    "matadd",
    "matsub",
    "matmul",
    "matvec",
    "matdet",
    "matinv",
    "matnorm",
    "in_gl_zp",
    "in_gl_j",
    "gl_gauge",
    "gl_gauge_capped",
    "gl_log_gauge",
]


def _coerce(x) -> Fraction:
    return Fraction(x)


@dataclass(frozen=True)
class PVector:
    entries: tuple
    p: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(_coerce(x) for x in self.entries))
        object.__setattr__(self, "p", check_prime(self.p))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, i) -> Fraction:
        return self.entries[i]

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.entries) + ")"


@dataclass(frozen=True)
class PMatrix:
    """A square matrix of exact rationals with one shared prime context."""

    rows: tuple
    p: int

    def __post_init__(self):
        rows = tuple(tuple(_coerce(x) for x in row) for row in self.rows)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ValueError("matrix must be square and nonempty")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "p", check_prime(self.p))

    @classmethod
    def identity(cls, n: int, p: int) -> "PMatrix":
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n))
                         for i in range(n)), p)

    @classmethod
    def zero(cls, n: int, p: int) -> "PMatrix":
        return cls(tuple(tuple(Fraction(0) for _ in range(n))
                         for _ in range(n)), p)

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, j: int, k: int) -> Fraction:
        """The (j, k) entry, 0-indexed."""
        return self.rows[j][k]

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in row)
                               for row in self.rows) + "]"


def _check_pair(a: PMatrix, b: PMatrix):
    if a.p != b.p:
        raise PrimeMismatch(f"p={a.p} vs p={b.p}")
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def matadd(a: PMatrix, b: PMatrix) -> PMatrix:
    _check_pair(a, b)
    return PMatrix(tuple(tuple(x + y for x, y in zip(ra, rb))
                         for ra, rb in zip(a.rows, b.rows)), a.p)


def matsub(a: PMatrix, b: PMatrix) -> PMatrix:
    _check_pair(a, b)
    return PMatrix(tuple(tuple(x - y for x, y in zip(ra, rb))
                         for ra, rb in zip(a.rows, b.rows)), a.p)


def matmul(a: PMatrix, b: PMatrix) -> PMatrix:
    _check_pair(a, b)
    n = a.n
    bt = tuple(zip(*b.rows))
    return PMatrix(
        tuple(tuple(sum(ra[k] * bc[k] for k in range(n)) for bc in bt)
              for ra in a.rows),
        a.p,
    )


def matvec(a: PMatrix, v: PVector) -> PVector:
    if a.p != v.p:
        raise PrimeMismatch(f"p={a.p} vs p={v.p}")
    if a.n != v.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {v.n}")
    return PVector(tuple(sum(row[k] * v[k] for k in range(a.n))
                         for row in a.rows), a.p)


def matdet(a: PMatrix) -> Fraction:
    """Exact determinant by Gaussian elimination with row pivoting."""
    n = a.n
    m = [list(row) for row in a.rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv_piv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = m[r][col] * inv_piv
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return det


def matinv(a: PMatrix) -> PMatrix:
    """Exact inverse by Gauss-Jordan elimination; the product with the
    input is re-verified against the identity before returning."""
    n = a.n
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
        inv_piv = 1 / aug[col][col]
        aug[col] = [x * inv_piv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    inv = PMatrix(tuple(tuple(row[n:]) for row in aug), a.p)
    if matmul(a, inv) != PMatrix.identity(n, a.p):
        raise ArithmeticError("inverse verification failed")
    return inv


def vecnorm(v: PVector) -> PNorm:
    """max of the coordinate p-adic absolute values."""
    return max((fraction_pabs(x, v.p) for x in v.entries),
               default=PNorm.zero(v.p))


def matnorm(a: PMatrix) -> PNorm:
    """The max-entry ultranorm, which is also the operator norm of the
    matrix acting on column vectors with the max ultranorm."""
    return max(fraction_pabs(x, a.p) for row in a.rows for x in row)


def in_gl_zp(a: PMatrix) -> bool:
    """Integral entries and unit determinant norm."""
    if any(fraction_vp(x, a.p) < 0 for row in a.rows for x in row):
        return False
    return fraction_vp(matdet(a), a.p) == 0


def in_gl_j(a: PMatrix, j: int) -> bool:
    """Every entry of A - I has valuation at least j (j >= 1)."""
    if j < 1:
        raise ValueError("the congruence level must be >= 1")
    return all(
        fraction_vp(x - int(r == k), a.p) >= j
        for r, row in enumerate(a.rows)
        for k, x in enumerate(row)
    )


def gl_gauge(a: PMatrix) -> PNorm:
    """r(A) = max(|A - I|, |A^-1 - I|) in the max-entry norm.

    Equals |A - I| <= 1 on GL(n, Z_p) and max(|A|, |A^-1|) >= p off it.
    """
    i = PMatrix.identity(a.n, a.p)
    inv = matinv(a)
    return max(matnorm(matsub(a, i)), matnorm(matsub(inv, i)))


def gl_gauge_capped(a: PMatrix, t=None) -> Union[PNorm, Fraction]:
    """min(r(A), t) with a rational cap t in [1, p]; defaults to t = p."""
    t = Fraction(a.p) if t is None else Fraction(t)
    if not 1 <= t <= a.p:
        raise ValueError(f"cap must lie in [1, p], got {t}")
    r = gl_gauge(a)
    if not r.is_zero and r.exponent < 0:
        # r >= p: compare the exact rational value against the cap.
        if r.as_fraction() > t:
            return t
    return r


def gl_log_gauge(a: PMatrix) -> int:
    """max(log_p |A|, log_p |A^-1|): subadditive, zero exactly on GL(n, Z_p)."""
    inv = matinv(a)
    return max(-int(matnorm(a).exponent), -int(matnorm(inv).exponent))
