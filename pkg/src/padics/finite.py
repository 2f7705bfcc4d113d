"""Finite quotient rings Z/p**m and exhaustive oracles: coset counting,
Haar-measure scaling by counting, and brute-force group-axiom checks for
the nilpotent group families.

Budgets are explicit.  Exhaustive associativity uses a multiplication
table and vectorized index gathers, which keeps hundreds of millions of
triples affordable; past the triple budget the check switches to seeded
random sampling and records the switch in the report.  The environment
variable PADIC_BUDGET overrides the element budget.
"""

from __future__ import annotations

import itertools
import json
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .cells import cell_canonical, cell_contains
from .core import check_prime
from .triangular import SubgroupProfile, haar_dimension

__all__ = [
    "QuotientRing",
    "FiniteReport",
    "element_budget",
    "coset_cover_check",
    "haar_ball",
    "count_triangular_ball",
    "brute_group_axioms",
]

DEFAULT_ELEMENT_BUDGET = 10**4
DEFAULT_ENUM_BUDGET = 10**6
# Above this many triples the table-based exhaustive check gives way to
# sampling; the table method itself handles ~10**9 in seconds.
DEFAULT_TRIPLE_BUDGET = 10**9
DEFAULT_SAMPLED_TRIPLES = 10**6

MAX_WITNESSES = 10


def element_budget(default: int = DEFAULT_ELEMENT_BUDGET) -> int:
    env = os.environ.get("PADIC_BUDGET")
    return int(env) if env else default


@dataclass(frozen=True)
class QuotientRing:
    """Z / p**k Z with elements represented as integers in [0, p**k)."""

    p: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "p", check_prime(self.p))
        if self.k < 1:
            raise ValueError("k must be >= 1")

    @property
    def modulus(self) -> int:
        return self.p**self.k

    def elements(self) -> range:
        return range(self.modulus)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.modulus

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.modulus

    def neg(self, a: int) -> int:
        return -a % self.modulus

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError(f"{a} is not a unit modulo {self.modulus}")
        return pow(a, -1, self.modulus)

    def valuation(self, a: int) -> int:
        """min(k, vp(a)): 0 is indistinguishable from valuation >= k here."""
        a %= self.modulus
        if a == 0:
            return self.k
        v = 0
        while a % self.p == 0:
            a //= self.p
            v += 1
        return v


@dataclass
class FiniteReport:
    spec: str
    p: int
    m: int
    total: int
    passed: int
    violations: list = field(default_factory=list)
    budget_used: int = 0
    mode: str = "exhaustive"
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> str:
        doc = {
            "spec": self.spec,
            "p": self.p,
            "m": self.m,
            "total": self.total,
            "passed": self.passed,
            "violations": self.violations,
            "budget_used": self.budget_used,
            "mode": self.mode,
        }
        doc.update({k: str(v) for k, v in self.extra.items()})
        return json.dumps(doc, sort_keys=True)


def _note(report: FiniteReport, violation: dict):
    same_axiom = sum(v.get("axiom") == violation.get("axiom")
                     for v in report.violations)
    if same_axiom < MAX_WITNESSES:
        report.violations.append(violation)


def coset_cover_check(p: int, j: int, samples: int = 1000,
                      seed: int = 0) -> FiniteReport:
    """The integer representatives 0..p**j - 1 give p**j pairwise distinct
    cells of scale j, and every sampled integral rational lands in exactly
    one of them (namely its own canonical cell)."""
    check_prime(p)
    if j < 0:
        raise ValueError("j must be >= 0")
    budget = element_budget(DEFAULT_ENUM_BUDGET)
    if p**j > budget:
        raise ValueError(f"p**j = {p ** j} exceeds the budget {budget}")
    cosets = [cell_canonical(c, j, p) for c in range(p**j)]
    report = FiniteReport("coset-cover", p, j, len(cosets), 0,
                          budget_used=p**j)
    if len(set(cosets)) != p**j:
        _note(report, {"axiom": "distinct", "count": len(set(cosets))})
    rng = random.Random(seed)
    hits = 0
    for _ in range(samples):
        num = rng.randrange(-(p**(j + 2)), p**(j + 2))
        den = rng.randrange(1, 50)
        while den % p == 0:
            den = rng.randrange(1, 50)
        x = Fraction(num, den)
        containing = [c for c in cosets if cell_contains(c, x)]
        canonical = cell_canonical(x, j, p)
        if len(containing) != 1 or containing[0] != canonical:
            _note(report, {"axiom": "cover", "x": str(x),
                           "containing": [str(c) for c in containing]})
        else:
            hits += 1
    report.passed = hits
    report.extra["samples"] = samples
    return report


def haar_ball(p: int, l: int) -> Fraction:
    """Measure of the ball p**l Z_p under the normalization H(Z_p) = 1."""
    check_prime(p)
    return Fraction(1, p**l) if l >= 0 else Fraction(p ** (-l))


def count_triangular_ball(p: int, n: int, l: int, m: int,
                          budget: Optional[int] = None) -> FiniteReport:
    """Count unit-diagonal upper-triangular matrices over Z/p**m whose
    (j, k) entry has valuation at least l*(k-j), as a fraction of all of
    them.  The exact ratio is p**(-l*d(n)) with d the homogeneous
    dimension; m >= l*(n-1) keeps every condition resolvable at scale m.
    """
    check_prime(p)
    if n < 2:
        raise ValueError("n must be >= 2")
    if l < 0:
        raise ValueError("l must be >= 0")
    if m < max(1, l * (n - 1)):
        raise ValueError(f"need m >= l*(n-1) = {l * (n - 1)} (and m >= 1)")
    budget = element_budget(DEFAULT_ENUM_BUDGET) if budget is None else budget
    entries = [(j, k) for j in range(n) for k in range(j + 1, n)]
    needed = [l * (k - j) for j, k in entries]
    q = p**m
    total = q ** len(entries)
    if total <= budget:
        mode = "exhaustive"
        count = 0
        for combo in itertools.product(range(q), repeat=len(entries)):
            if all(a % p**c == 0 for a, c in zip(combo, needed)):
                count += 1
        used = total
    else:
        # Entry conditions are independent, so the count factors exactly.
        mode = "formula"
        count = 1
        for c in needed:
            count *= p ** (m - c)
        used = 0
    ratio = Fraction(count, total)
    expected = Fraction(1, p ** (l * haar_dimension(n)))
    report = FiniteReport("triangular-ball", p, m, total, count,
                          budget_used=used, mode=mode)
    report.extra["ratio"] = ratio
    report.extra["expected"] = expected
    if ratio != expected:
        _note(report, {"axiom": "haar-scaling", "ratio": str(ratio),
                       "expected": str(expected)})
    return report


# --- group families over Z/p**m ------------------------------------------

def _h_elements(ring: QuotientRing, n: int) -> list:
    coords = list(ring.elements())
    return [tuple(c) for c in itertools.product(coords, repeat=2 * n + 1)]


def h_product_mod(ring: QuotientRing, n: int, u: tuple, v: tuple) -> tuple:
    q = ring.modulus
    x = tuple((u[i] + v[i]) % q for i in range(n))
    y = tuple((u[n + i] + v[n + i]) % q for i in range(n))
    cross = sum(u[i] * v[n + i] for i in range(n))
    t = (u[2 * n] + v[2 * n] + cross) % q
    return x + y + (t,)


def h_inverse_mod(ring: QuotientRing, n: int, u: tuple) -> tuple:
    q = ring.modulus
    twist = sum(u[i] * u[n + i] for i in range(n))
    return tuple(-c % q for c in u[:2 * n]) + ((-u[2 * n] + twist) % q,)


def _tplus_positions(n: int) -> list:
    return [(j, k) for j in range(n) for k in range(j + 1, n)]


def _tplus_elements(ring: QuotientRing, n: int) -> list:
    pos = _tplus_positions(n)
    return [tuple(c) for c in itertools.product(ring.elements(), repeat=len(pos))]


def tplus_product_mod(ring: QuotientRing, n: int, a: tuple, b: tuple) -> tuple:
    pos = _tplus_positions(n)
    index = {jk: i for i, jk in enumerate(pos)}
    q = ring.modulus
    out = []
    for j, k in pos:
        # unit diagonal: c_jk = a_jk + b_jk + sum over j < i < k
        s = a[index[(j, k)]] + b[index[(j, k)]]
        for i in range(j + 1, k):
            s += a[index[(j, i)]] * b[index[(i, k)]]
        out.append(s % q)
    return tuple(out)


def tplus_inverse_mod(ring: QuotientRing, n: int, a: tuple) -> tuple:
    pos = _tplus_positions(n)
    index = {jk: i for i, jk in enumerate(pos)}
    q = ring.modulus
    # Solve (I + A) X = I column by column; X is strictly upper too.
    out = [0] * len(pos)
    for j, k in sorted(pos, key=lambda jk: jk[1] - jk[0]):
        s = -a[index[(j, k)]]
        for i in range(j + 1, k):
            s -= a[index[(j, i)]] * out[index[(i, k)]]
        out[index[(j, k)]] = s % q
    return tuple(out)


@dataclass(frozen=True)
class _Family:
    name: str
    elements: list
    product: Callable
    inverse: Callable
    identity: tuple


def _make_family(family: str, ring: QuotientRing, n: int,
                 product: Optional[Callable] = None) -> _Family:
    if family == "heisenberg":
        mul = product or (lambda u, v: h_product_mod(ring, n, u, v))
        return _Family(
            f"heisenberg n={n}",
            _h_elements(ring, n),
            mul,
            lambda u: h_inverse_mod(ring, n, u),
            (0,) * (2 * n + 1),
        )
    if family == "tplus":
        mul = product or (lambda a, b: tplus_product_mod(ring, n, a, b))
        return _Family(
            f"tplus n={n}",
            _tplus_elements(ring, n),
            mul,
            lambda a: tplus_inverse_mod(ring, n, a),
            (0,) * (n * (n - 1) // 2),
        )
    raise ValueError(f"unknown family {family!r}")


def _member_predicate(family: str, ring: QuotientRing, n: int,
                      k: int, l: int,
                      profile: Optional[SubgroupProfile]) -> Callable:
    if family == "h-subgroup":
        if 2 * k < l:
            raise ValueError(f"need 2k >= l, got k={k}, l={l}")
        if not (0 <= k <= ring.k and 0 <= l <= ring.k):
            raise ValueError("k and l must be resolvable at the quotient scale")
        return lambda u: (
            all(ring.valuation(c) >= k for c in u[:2 * n])
            and ring.valuation(u[2 * n]) >= l
        )
    if family == "profile-subgroup":
        if profile is None:
            raise ValueError("profile required")
        if any(not 0 <= lev <= ring.k for lev in profile.levels):
            raise ValueError("profile levels must be resolvable at the quotient scale")
        pos = _tplus_positions(n)
        return lambda a: all(
            ring.valuation(a[i]) >= profile.level(kk - jj)
            for i, (jj, kk) in enumerate(pos)
        )
    raise ValueError(f"unknown subgroup family {family!r}")


def _associativity(report: FiniteReport, fam: _Family, table: np.ndarray,
                   triple_budget: int, samples: int, seed: int):
    size = len(fam.elements)
    if size**3 <= triple_budget:
        report.mode = "exhaustive"
        report.budget_used = size**3
        for a in range(size):
            row = table[a]
            lhs = table[row]          # lhs[b, c] = (a b) c
            rhs = row[table]          # rhs[b, c] = a (b c)
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                for b, c in bad[:MAX_WITNESSES]:
                    _note(report, {
                        "axiom": "associativity",
                        "witness": [str(fam.elements[a]),
                                    str(fam.elements[int(b)]),
                                    str(fam.elements[int(c)])],
                    })
                break
    else:
        report.mode = "sampled"
        report.budget_used = samples
        rng = random.Random(seed)
        for _ in range(samples):
            a, b, c = (rng.randrange(size) for _ in range(3))
            ab_c = table[table[a, b], c]
            a_bc = table[a, table[b, c]]
            if ab_c != a_bc:
                _note(report, {
                    "axiom": "associativity",
                    "witness": [str(fam.elements[a]), str(fam.elements[b]),
                                str(fam.elements[c])],
                })


def brute_group_axioms(family: str, p: int, m: int, n: int = 1,
                       k: int = 0, l: int = 0,
                       profile: Optional[Sequence[int]] = None,
                       product: Optional[Callable] = None,
                       normal: Optional[bool] = None,
                       seed: int = 0,
                       budget: Optional[int] = None,
                       triple_budget: int = DEFAULT_TRIPLE_BUDGET,
                       sampled_triples: int = DEFAULT_SAMPLED_TRIPLES,
                       ) -> FiniteReport:
    """Verify group axioms over a finite quotient, exhaustively within
    budgets.

    Families: ``heisenberg`` and ``tplus`` check closure, identity,
    inverses, and associativity of the whole group; ``h-subgroup`` (with
    its k, l) and ``profile-subgroup`` (with its profile) check that the
    congruence conditions cut out a subgroup.  Conjugation closure
    (normality inside the ambient integral group) is additionally checked
    when ``normal`` is set; it defaults to the case l = k, the one where
    the h-subgroup actually is normal (the dilated ball l = 2k is a
    subgroup but not a normal one).  ``product`` substitutes a custom
    multiplication, which is how the negative-control tests inject
    corrupted operations.
    """
    ring = QuotientRing(p, m)
    budget = element_budget() if budget is None else budget

    if family in ("heisenberg", "tplus"):
        fam = _make_family(family, ring, n, product)
        size = len(fam.elements)
        if size > budget:
            raise ValueError(f"{size} elements exceed the budget {budget}")
        report = FiniteReport(fam.name, p, m, size, size)
        index = {e: i for i, e in enumerate(fam.elements)}
        table = np.empty((size, size), dtype=np.int64)
        for i, a in enumerate(fam.elements):
            rowvals = []
            for b in fam.elements:
                c = fam.product(a, b)
                ci = index.get(c)
                if ci is None:
                    _note(report, {"axiom": "closure",
                                   "witness": [str(a), str(b)]})
                    ci = 0
                rowvals.append(ci)
            table[i] = rowvals
        e = index[fam.identity]
        for i, a in enumerate(fam.elements):
            if table[e, i] != i or table[i, e] != i:
                _note(report, {"axiom": "identity", "witness": [str(a)]})
            inv = fam.inverse(a)
            ii = index.get(inv)
            if ii is None or table[i, ii] != e or table[ii, i] != e:
                _note(report, {"axiom": "inverse", "witness": [str(a)]})
        _associativity(report, fam, table, triple_budget, sampled_triples,
                       seed)
        return report

    base = "heisenberg" if family == "h-subgroup" else "tplus"
    fam = _make_family(base, ring, n)
    member = _member_predicate(family, ring, n, k, l,
                               SubgroupProfile(tuple(profile)) if profile else None)
    elements = [g for g in fam.elements if member(g)]
    size = len(elements)
    if size > budget or len(fam.elements) > budget:
        raise ValueError("enumeration exceeds the budget")
    report = FiniteReport(f"{family} (k={k}, l={l})" if family == "h-subgroup"
                          else f"{family} {tuple(profile or ())}",
                          p, m, size, size)
    report.budget_used = size * size
    if not member(fam.identity):
        _note(report, {"axiom": "identity", "witness": []})
    for a in elements:
        if not member(fam.inverse(a)):
            _note(report, {"axiom": "inverse", "witness": [str(a)]})
        for b in elements:
            if not member(fam.product(a, b)):
                _note(report, {"axiom": "closure", "witness": [str(a), str(b)]})
    if normal is None:
        normal = family == "h-subgroup" and k == l
    if normal:
        # Normality inside the integral group: conjugation stays inside.
        for g in fam.elements:
            ginv = fam.inverse(g)
            for s in elements:
                c = fam.product(fam.product(g, s), ginv)
                if not member(c):
                    _note(report, {"axiom": "normality",
                                   "witness": [str(g), str(s)]})
    return report
