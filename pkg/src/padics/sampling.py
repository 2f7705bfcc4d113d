"""Seeded samplers for the verification suites.

The rational sampler draws p**v * (sign) * a/b with v uniform on [-3, 3]
and a, b uniform on [1, 50] coprime to p, which exercises every valuation
branch around the critical value |x|_p = 1.  All samplers take an
explicit random.Random so that suites are deterministic for a fixed seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .affine import AffineMap
from .cells import Cell, cell_canonical
from .core import PRational
from .heisenberg import HPoint
from .matrices import PMatrix, PVector, matdet, matmul
from .triangular import UTMatrix

__all__ = [
    "rational",
    "nonzero_rational",
    "unit",
    "integral",
    "prational",
    "pvector",
    "pmatrix",
    "invertible_matrix",
    "glzp_matrix",
    "tplus_matrix",
    "ttilde_matrix",
    "strict_upper_matrix",
    "hpoint",
    "hpoint_integral",
    "affine_map",
    "affine_unit",
    "affine_star_zp",
    "cell",
]


def _coprime_part(rng: random.Random, p: int) -> int:
    a = rng.randint(1, 50)
    while a % p == 0:
        a = rng.randint(1, 50)
    return a


def nonzero_rational(rng: random.Random, p: int, vmin: int = -3,
                     vmax: int = 3) -> Fraction:
    v = rng.randint(vmin, vmax)
    a = _coprime_part(rng, p)
    b = _coprime_part(rng, p)
    sign = rng.choice((1, -1))
    return sign * Fraction(p) ** v * Fraction(a, b)


def rational(rng: random.Random, p: int, vmin: int = -3, vmax: int = 3,
             zero_weight: float = 0.1) -> Fraction:
    if rng.random() < zero_weight:
        return Fraction(0)
    return nonzero_rational(rng, p, vmin, vmax)


def unit(rng: random.Random, p: int) -> Fraction:
    """|x|_p = 1."""
    return nonzero_rational(rng, p, 0, 0)


def integral(rng: random.Random, p: int, zero_weight: float = 0.1) -> Fraction:
    """x in Z_p: nonnegative valuation."""
    if rng.random() < zero_weight:
        return Fraction(0)
    return nonzero_rational(rng, p, 0, 3)


def prational(rng: random.Random, p: int, **kw) -> PRational:
    return PRational(rational(rng, p, **kw), p)


def pvector(rng: random.Random, p: int, n: int) -> PVector:
    return PVector(tuple(rational(rng, p) for _ in range(n)), p)


def pmatrix(rng: random.Random, p: int, n: int) -> PMatrix:
    return PMatrix(tuple(tuple(rational(rng, p) for _ in range(n))
                         for _ in range(n)), p)


def invertible_matrix(rng: random.Random, p: int, n: int) -> PMatrix:
    while True:
        a = pmatrix(rng, p, n)
        if matdet(a) != 0:
            return a


def glzp_matrix(rng: random.Random, p: int, n: int) -> PMatrix:
    """A member of GL(n, Z_p), built as (unit lower) * (unit-norm upper)
    with a random row permutation; always succeeds."""
    lower = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    upper = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        upper[i][i] = unit(rng, p)
        for j in range(i):
            lower[i][j] = integral(rng, p)
        for j in range(i + 1, n):
            upper[i][j] = integral(rng, p)
    perm = list(range(n))
    rng.shuffle(perm)
    prod = matmul(PMatrix(tuple(tuple(r) for r in lower), p),
                  PMatrix(tuple(tuple(r) for r in upper), p))
    rows = tuple(prod.rows[i] for i in perm)
    return PMatrix(rows, p)


def strict_upper_matrix(rng: random.Random, p: int, n: int) -> UTMatrix:
    rows = tuple(
        tuple(rational(rng, p) if k > j else Fraction(0) for k in range(n))
        for j in range(n)
    )
    return UTMatrix(PMatrix(rows, p))


def tplus_matrix(rng: random.Random, p: int, n: int) -> UTMatrix:
    rows = tuple(
        tuple(Fraction(1) if k == j else
              (rational(rng, p) if k > j else Fraction(0)) for k in range(n))
        for j in range(n)
    )
    return UTMatrix(PMatrix(rows, p))


def ttilde_matrix(rng: random.Random, p: int, n: int) -> UTMatrix:
    rows = tuple(
        tuple(unit(rng, p) if k == j else
              (rational(rng, p) if k > j else Fraction(0)) for k in range(n))
        for j in range(n)
    )
    return UTMatrix(PMatrix(rows, p))


def hpoint(rng: random.Random, p: int, n: int = 1) -> HPoint:
    return HPoint(
        tuple(rational(rng, p) for _ in range(n)),
        tuple(rational(rng, p) for _ in range(n)),
        rational(rng, p),
        p,
    )


def hpoint_integral(rng: random.Random, p: int, n: int = 1) -> HPoint:
    return HPoint(
        tuple(integral(rng, p) for _ in range(n)),
        tuple(integral(rng, p) for _ in range(n)),
        integral(rng, p),
        p,
    )


def affine_map(rng: random.Random, p: int) -> AffineMap:
    return AffineMap(nonzero_rational(rng, p), rational(rng, p), p)


def affine_unit(rng: random.Random, p: int) -> AffineMap:
    """A member of the isometry group: |a|_p = 1, b arbitrary."""
    return AffineMap(unit(rng, p), rational(rng, p), p)


def affine_star_zp(rng: random.Random, p: int) -> AffineMap:
    """A member of the integral invertible group: |a|_p = 1, b in Z_p."""
    return AffineMap(unit(rng, p), integral(rng, p), p)


def cell(rng: random.Random, p: int, kmin: int = -4, kmax: int = 4) -> Cell:
    return cell_canonical(rational(rng, p), rng.randint(kmin, kmax), p)
