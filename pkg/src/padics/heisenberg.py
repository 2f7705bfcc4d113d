"""The Heisenberg group H_n over the rationals with a prime context:
twisted product, inverse, parabolic dilations, conjugation, the two
homogeneous norms, congruence subgroups, and the unipotent-matrix
embedding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import PNorm, PrimeMismatch, check_prime, fraction_vp
from .matrices import PMatrix
from .triangular import UTMatrix

__all__ = [
    "HPoint",
    "h_mul",
    "h_inv",
    "h_dilate",
    "h_conjugate",
    "h_norm",
    "h_norm_tilde",
    "h_subgroup_member",
    "embed_to_triangular",
]


@dataclass(frozen=True)
class HPoint:
    """A point (x, y, t) with x, y in Q**n and t in Q, all sharing one prime."""

    x: tuple
    y: tuple
    t: Fraction
    p: int

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(Fraction(v) for v in self.x))
        object.__setattr__(self, "y", tuple(Fraction(v) for v in self.y))
        object.__setattr__(self, "t", Fraction(self.t))
        object.__setattr__(self, "p", check_prime(self.p))
        if len(self.x) != len(self.y):
            raise ValueError("x and y must have the same length")

    @classmethod
    def identity(cls, n: int, p: int) -> "HPoint":
        return cls((0,) * n, (0,) * n, 0, p)

    @property
    def n(self) -> int:
        return len(self.x)

    def is_identity(self) -> bool:
        return self.t == 0 and not any(self.x) and not any(self.y)

    def __str__(self):
        if self.n == 1:
            return f"({self.x[0]}, {self.y[0]}, {self.t})"
        xs = "[" + ", ".join(str(v) for v in self.x) + "]"
        ys = "[" + ", ".join(str(v) for v in self.y) + "]"
        return f"({xs}, {ys}, {self.t})"


def _check_pair(u: HPoint, v: HPoint):
    if u.p != v.p:
        raise PrimeMismatch(f"p={u.p} vs p={v.p}")
    if u.n != v.n:
        raise ValueError(f"arity mismatch: {u.n} vs {v.n}")


def h_mul(u: HPoint, v: HPoint) -> HPoint:
    """The twisted product: the center coordinate picks up sum(x_j * y'_j)."""
    _check_pair(u, v)
    cross = sum(a * b for a, b in zip(u.x, v.y))
    return HPoint(
        tuple(a + b for a, b in zip(u.x, v.x)),
        tuple(a + b for a, b in zip(u.y, v.y)),
        u.t + v.t + cross,
        u.p,
    )


def h_inv(u: HPoint) -> HPoint:
    """(-x, -y, -t + sum(x_j * y_j)); a two-sided inverse for h_mul."""
    twist = sum(a * b for a, b in zip(u.x, u.y))
    return HPoint(
        tuple(-a for a in u.x),
        tuple(-a for a in u.y),
        -u.t + twist,
        u.p,
    )


def h_dilate(u: HPoint, r) -> HPoint:
    """(r x, r y, r**2 t): a group homomorphism for every scalar r."""
    r = Fraction(r)
    return HPoint(
        tuple(r * a for a in u.x),
        tuple(r * a for a in u.y),
        r * r * u.t,
        u.p,
    )


def h_conjugate(g: HPoint, u: HPoint) -> HPoint:
    """(g * u) * g^-1 in closed form: only the center moves, by
    sum(g.x_j * u.y_j - u.x_j * g.y_j)."""
    _check_pair(g, u)
    twist = sum(gx * uy - ux * gy
                for gx, gy, ux, uy in zip(g.x, g.y, u.x, u.y))
    return HPoint(u.x, u.y, u.t + twist, u.p)


def h_norm(u: HPoint) -> PNorm:
    """max(|x_j|_p, |y_j|_p, |t|_p**(1/2)): homogeneous of degree 1 under
    the dilations, symmetric under inversion, submultiplicative in the
    max sense under the twisted product."""
    exps = [Fraction(v) for v in map(lambda a: fraction_vp(a, u.p), u.x + u.y)
            if v != float("inf")]
    tv = fraction_vp(u.t, u.p)
    if tv != float("inf"):
        exps.append(Fraction(tv, 2))
    if not exps:
        return PNorm.zero(u.p)
    return PNorm(u.p, min(exps))


def h_norm_tilde(u: HPoint) -> PNorm:
    """max(|x_j|_p, |y_j|_p, |t|_p): conjugation-invariant on integral
    points, where it is sandwiched between h_norm**2 and h_norm."""
    exps = [Fraction(v) for v in map(lambda a: fraction_vp(a, u.p),
                                     u.x + u.y + (u.t,))
            if v != float("inf")]
    if not exps:
        return PNorm.zero(u.p)
    return PNorm(u.p, min(exps))


def h_subgroup_member(u: HPoint, k: int, l: int) -> bool:
    """Membership in (p**k Z_p)^n x (p**k Z_p)^n x (p**l Z_p).

    The constraint 2k >= l is required for this set to be a subgroup
    (the twist lands in p**(2k) Z_p); violating it is an error, not False.
    """
    if 2 * k < l:
        raise ValueError(f"need 2k >= l for a subgroup, got k={k}, l={l}")
    return (
        all(fraction_vp(a, u.p) >= k for a in u.x)
        and all(fraction_vp(a, u.p) >= k for a in u.y)
        and fraction_vp(u.t, u.p) >= l
    )


def embed_to_triangular(u: HPoint) -> UTMatrix:
    """The unit-diagonal (n+2) x (n+2) matrix with first row (1, x, t),
    last column (t, y, 1)**T: a group homomorphism into the unipotent
    group, an isomorphism onto the 3 x 3 one when n = 1."""
    n = u.n
    size = n + 2
    rows = [[Fraction(0)] * size for _ in range(size)]
    for j in range(size):
        rows[j][j] = Fraction(1)
    for k in range(n):
        rows[0][k + 1] = u.x[k]
    rows[0][size - 1] = u.t
    for j in range(n):
        rows[j + 1][size - 1] = u.y[j]
    return UTMatrix(PMatrix(tuple(tuple(r) for r in rows), u.p))
