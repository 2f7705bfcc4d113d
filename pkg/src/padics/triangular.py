"""Upper-triangular rings and groups with non-isotropic dilations: the
grading by diagonals, the anisotropic norm with its fractional-exponent
roots, nilpotent inverse series, invariant (semi-)ultrametrics on the
unit-norm-diagonal group, and the homogeneous Haar dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .core import PNorm, fraction_pabs, fraction_vp
from .matrices import PMatrix, matadd, matinv, matmul, matsub

__all__ = [
    "UTMatrix",
    "SubgroupProfile",
    "ut_mul",
    "ut_add",
    "ut_inv",
    "grade_component",
    "dilate",
    "tri_norm",
    "nilpotent_inverse",
    "tplus_inverse",
    "left_metric",
    "right_metric",
    "diag_semimetric",
    "haar_dimension",
    "profile_subgroup_member",
    "factor_diagonal_unipotent",
]


@dataclass(frozen=True)
class UTMatrix:
    """A square matrix together with its triangularity flags.

    The flags are computed once at construction:

    - ``upper``: zero below the diagonal
    - ``strict_upper``: upper with zero diagonal
    - ``unit_diagonal``: upper with diagonal entries equal to 1
    - ``unit_norm_diagonal``: upper with diagonal entries of norm 1
    """

    mat: PMatrix
    upper: bool = None
    strict_upper: bool = None
    unit_diagonal: bool = None
    unit_norm_diagonal: bool = None

    def __post_init__(self):
        m, n = self.mat, self.mat.n
        upper = all(m.entry(j, k) == 0 for j in range(n) for k in range(j))
        diag = [m.entry(j, j) for j in range(n)]
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "strict_upper", upper and all(x == 0 for x in diag))
        object.__setattr__(self, "unit_diagonal", upper and all(x == 1 for x in diag))
        object.__setattr__(
            self,
            "unit_norm_diagonal",
            upper and all(fraction_vp(x, m.p) == 0 for x in diag),
        )

    @classmethod
    def of(cls, rows, p: int) -> "UTMatrix":
        return cls(PMatrix(tuple(tuple(row) for row in rows), p))

    @classmethod
    def identity(cls, n: int, p: int) -> "UTMatrix":
        return cls(PMatrix.identity(n, p))

    @property
    def n(self) -> int:
        return self.mat.n

    @property
    def p(self) -> int:
        return self.mat.p

    def entry(self, j: int, k: int) -> Fraction:
        return self.mat.entry(j, k)

    def __str__(self):
        return str(self.mat)


def _require_upper(a: UTMatrix, what: str):
    if not a.upper:
        raise ValueError(f"{what} requires an upper-triangular matrix")


def ut_mul(a: UTMatrix, b: UTMatrix) -> UTMatrix:
    return UTMatrix(matmul(a.mat, b.mat))


def ut_add(a: UTMatrix, b: UTMatrix) -> UTMatrix:
    return UTMatrix(matadd(a.mat, b.mat))


def ut_inv(a: UTMatrix) -> UTMatrix:
    return UTMatrix(matinv(a.mat))


def grade_component(a: UTMatrix, level: int) -> UTMatrix:
    """The part of A supported on the diagonal k - j = level; the sum of
    all components reconstructs A."""
    _require_upper(a, "grading")
    n = a.n
    rows = tuple(
        tuple(a.entry(j, k) if k - j == level else Fraction(0) for k in range(n))
        for j in range(n)
    )
    return UTMatrix(PMatrix(rows, a.p))


def dilate(a: UTMatrix, r) -> UTMatrix:
    """Scale entry (j, k) by r**(k-j): a ring homomorphism of the
    upper-triangular ring for every scalar r, with
    dilate(-, r) o dilate(-, r') = dilate(-, r r')."""
    _require_upper(a, "dilation")
    r = Fraction(r)
    n = a.n
    rows = tuple(
        tuple(a.entry(j, k) * r ** (k - j) if k >= j else Fraction(0)
              for k in range(n))
        for j in range(n)
    )
    return UTMatrix(PMatrix(rows, a.p))


def tri_norm(a: UTMatrix) -> PNorm:
    """The anisotropic norm: max over j < k of |a_jk|_p ** (1/(k-j)).

    Computed entirely in exponent space: the result is p**(-q) with
    q = min over nonzero entries of vp(a_jk)/(k-j).  Zero exactly on
    diagonal matrices.
    """
    _require_upper(a, "the anisotropic norm")
    n = a.n
    best = None
    for j in range(n):
        for k in range(j + 1, n):
            x = a.entry(j, k)
            if x != 0:
                q = Fraction(fraction_vp(x, a.p), k - j)
                if best is None or q < best:
                    best = q
    if best is None:
        return PNorm.zero(a.p)
    return PNorm(a.p, best)


def nilpotent_inverse(b: UTMatrix) -> UTMatrix:
    """(I - B)^-1 = I + B + ... + B**(n-1) for strictly upper-triangular B.

    The product (I - B) times the result is re-verified to be I.
    """
    if not b.strict_upper:
        raise ValueError("nilpotent inverse requires a strictly upper-triangular matrix")
    n, p = b.n, b.p
    total = PMatrix.identity(n, p)
    pw = PMatrix.identity(n, p)
    for _ in range(1, n):
        pw = matmul(pw, b.mat)
        total = matadd(total, pw)
    i_minus_b = matsub(PMatrix.identity(n, p), b.mat)
    if matmul(i_minus_b, total) != PMatrix.identity(n, p):
        raise ArithmeticError("nilpotent inverse verification failed")
    return UTMatrix(total)


def tplus_inverse(a: UTMatrix) -> UTMatrix:
    """Inverse within the unit-diagonal group, via the nilpotent series
    for B = I - A.  Satisfies tri_norm(inverse) = tri_norm(A)."""
    if not a.unit_diagonal:
        raise ValueError("expected a unit-diagonal upper-triangular matrix")
    b = UTMatrix(matsub(PMatrix.identity(a.n, a.p), a.mat))
    return nilpotent_inverse(b)


def _require_ttilde(a: UTMatrix, what: str):
    if not a.unit_norm_diagonal:
        raise ValueError(f"{what} requires unit-norm diagonal entries")


def left_metric(a: UTMatrix, b: UTMatrix) -> PNorm:
    """tri_norm(B^-1 A): a left-invariant semi-ultrametric on the group of
    upper-triangular matrices with unit-norm diagonal (an ultrametric on
    the unit-diagonal subgroup, where the norm vanishes only at I)."""
    _require_ttilde(a, "the left metric")
    _require_ttilde(b, "the left metric")
    return tri_norm(UTMatrix(matmul(matinv(b.mat), a.mat)))


def right_metric(a: UTMatrix, b: UTMatrix) -> PNorm:
    """tri_norm(A B^-1): the right-invariant mirror of left_metric."""
    _require_ttilde(a, "the right metric")
    _require_ttilde(b, "the right metric")
    return tri_norm(UTMatrix(matmul(a.mat, matinv(b.mat))))


def diag_semimetric(a: UTMatrix, b: UTMatrix) -> PNorm:
    """max over j of |a_jj - b_jj|_p: a bi-invariant semi-ultrametric on
    the unit-norm-diagonal group.  Its max with left_metric is a
    left-invariant ultrametric there."""
    if a.n != b.n or a.p != b.p:
        raise ValueError("matrices must share dimension and prime")
    return max(
        fraction_pabs(a.entry(j, j) - b.entry(j, j), a.p) for j in range(a.n)
    )


def haar_dimension(n: int) -> int:
    """The homogeneous dimension: sum over 1 <= j < k <= n of (k - j)."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return sum(k - j for j in range(1, n + 1) for k in range(j + 1, n + 1))


@dataclass(frozen=True)
class SubgroupProfile:
    """Integer exponents (l_1, ..., l_{n-1}) with the superadditivity
    l_{a+b} <= l_a + l_b that makes the congruence conditions a group."""

    levels: tuple

    def __post_init__(self):
        levels = tuple(int(l) for l in self.levels)
        object.__setattr__(self, "levels", levels)
        n1 = len(levels)
        for a in range(1, n1 + 1):
            for b in range(1, n1 + 1 - a):
                if levels[a + b - 1] > levels[a - 1] + levels[b - 1]:
                    raise ValueError(
                        f"profile violates l_{a + b} <= l_{a} + l_{b}: {levels}"
                    )

    @classmethod
    def homogeneous(cls, l: int, n: int) -> "SubgroupProfile":
        """The profile (l, 2l, ..., (n-1)l), which cuts out the ball of
        radius p**(-l) in the anisotropic norm."""
        return cls(tuple(l * d for d in range(1, n)))

    def level(self, d: int) -> int:
        return self.levels[d - 1]


def profile_subgroup_member(a: UTMatrix, profile: SubgroupProfile) -> bool:
    """Entry (j, k) has valuation at least l_{k-j}; requires unit diagonal."""
    if not a.unit_diagonal:
        raise ValueError("profile subgroups live in the unit-diagonal group")
    if len(profile.levels) != a.n - 1:
        raise ValueError(f"profile length {len(profile.levels)} does not match n={a.n}")
    return all(
        fraction_vp(a.entry(j, k), a.p) >= profile.level(k - j)
        for j in range(a.n)
        for k in range(j + 1, a.n)
    )


def factor_diagonal_unipotent(a: UTMatrix):
    """Express a unit-norm-diagonal matrix as D * U with D diagonal (of
    unit norms) and U unit-diagonal; the factors multiply back to A."""
    _require_ttilde(a, "the diagonal factorization")
    n, p = a.n, a.p
    d_rows = tuple(
        tuple(a.entry(j, j) if j == k else Fraction(0) for k in range(n))
        for j in range(n)
    )
    u_rows = tuple(
        tuple(a.entry(j, k) / a.entry(j, j) for k in range(n)) for j in range(n)
    )
    return UTMatrix(PMatrix(d_rows, p)), UTMatrix(PMatrix(u_rows, p))
