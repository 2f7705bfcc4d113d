"""The tree of cells (closed balls of positive radius) in the p-adic
line: canonical coset representatives, the p-regular child/parent tree,
meets, the path metric, the action of invertible affine maps, and the
induced left-invariant semimetric on that group.

A cell c + p**k Z_p is stored canonically: the center is the unique
representative whose digit expansion is supported on exponents below k,
so cell equality is plain field equality.  The tree itself is never
materialized; everything is computed on demand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .affine import AffineMap
from .core import PNorm, PrimeMismatch, check_prime, fraction_vp

__all__ = [
    "Cell",
    "cell_canonical",
    "zp_cell",
    "cell_contains",
    "children",
    "parent",
    "meet",
    "rho",
    "act",
    "cell_semimetric",
    "BoundedWitness",
    "is_bounded_cellset",
    "separating_cell",
    "export_tree",
]


def _canonical_center(c: Fraction, k: int, p: int) -> Fraction:
    """The representative of c + p**k Z_p with digits on [vp(c), k) only."""
    if c == 0:
        return Fraction(0)
    v = fraction_vp(c, p)
    if v >= k:
        return Fraction(0)
    unit = c * Fraction(p) ** (-v)
    modulus = p ** (k - v)
    m = unit.numerator * pow(unit.denominator, -1, modulus) % modulus
    return Fraction(p) ** v * m


@dataclass(frozen=True)
class Cell:
    """The ball center + p**scale Z_p, in canonical form."""

    center: Fraction
    scale: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "center", Fraction(self.center))
        object.__setattr__(self, "scale", int(self.scale))
        object.__setattr__(self, "p", check_prime(self.p))
        if self.center != _canonical_center(self.center, self.scale, self.p):
            raise ValueError(
                f"center {self.center} is not canonical at scale {self.scale};"
                " use cell_canonical()"
            )

    @property
    def diameter(self) -> PNorm:
        return PNorm(self.p, Fraction(self.scale))

    def __str__(self):
        return f"({self.center}, {self.scale})"

    def to_json(self) -> dict:
        return {"center": str(self.center), "scale": self.scale, "p": self.p}

    @classmethod
    def from_json(cls, d: dict) -> "Cell":
        return cell_canonical(Fraction(d["center"]), int(d["scale"]), int(d["p"]))


def cell_canonical(c, k: int, p: int) -> Cell:
    """The cell c + p**k Z_p with its center put in canonical form."""
    return Cell(_canonical_center(Fraction(c), k, p), k, p)


def zp_cell(p: int) -> Cell:
    return Cell(Fraction(0), 0, p)


def cell_contains(cell: Cell, x) -> bool:
    return fraction_vp(Fraction(x) - cell.center, cell.p) >= cell.scale


def children(cell: Cell) -> list:
    """The p sub-cells one scale finer: pairwise disjoint, union the cell."""
    k, p = cell.scale, cell.p
    return [cell_canonical(cell.center + j * Fraction(p) ** k, k + 1, p)
            for j in range(p)]


def parent(cell: Cell) -> Cell:
    """The unique cell one scale coarser containing this one."""
    return cell_canonical(cell.center, cell.scale - 1, cell.p)


def meet(a: Cell, b: Cell) -> Cell:
    """The smallest cell containing both: scale min(k, k', vp(c - c'))."""
    if a.p != b.p:
        raise PrimeMismatch(f"p={a.p} vs p={b.p}")
    sep = fraction_vp(a.center - b.center, a.p)
    scale = min(a.scale, b.scale)
    if sep < scale:
        scale = int(sep)
    return cell_canonical(a.center, scale, a.p)


def rho(a: Cell, b: Cell) -> int:
    """The tree path metric: edges to the meet from either side."""
    m = meet(a, b)
    return (a.scale - m.scale) + (b.scale - m.scale)


def act(f: AffineMap, cell: Cell) -> Cell:
    """The image cell f(C) = (a c + b) + p**(k + vp(a)) Z_p.

    A tree automorphism: children map onto children, so the path metric
    is preserved.
    """
    if f.p != cell.p:
        raise PrimeMismatch(f"p={f.p} vs p={cell.p}")
    if not f.invertible:
        raise ValueError("a = 0 does not act on cells")
    shift = fraction_vp(f.a, f.p)
    return cell_canonical(f.a * cell.center + f.b, cell.scale + shift, cell.p)


def cell_semimetric(f: AffineMap, g: AffineMap) -> int:
    """rho(f(Z_p), g(Z_p)): a left-invariant semimetric on the invertible
    affine group, vanishing exactly when g^-1 o f fixes Z_p."""
    if not f.invertible or not g.invertible:
        raise ValueError("both maps must be invertible")
    base = zp_cell(f.p)
    return rho(act(f, base), act(g, base))


@dataclass(frozen=True)
class BoundedWitness:
    bounded: bool
    hull: Cell
    min_diameter: PNorm


def is_bounded_cellset(cells: Sequence[Cell]) -> BoundedWitness:
    """Any finite family of cells is bounded in the path metric; the
    witness is the common hull (iterated meet) and the smallest diameter."""
    cells = list(cells)
    if not cells:
        raise ValueError("empty cell family")
    hull = cells[0]
    finest = cells[0].scale
    for c in cells[1:]:
        hull = meet(hull, c)
        finest = max(finest, c.scale)
    return BoundedWitness(True, hull, PNorm(hull.p, Fraction(finest)))


def separating_cell(f: AffineMap, g: AffineMap) -> Optional[Cell]:
    """A cell moved differently by two distinct invertible maps.

    The maps differ at x = 0 or x = 1; a ball around that point finer
    than the image separation is separated, and the needed scale is
    computable from the coefficient valuations.  Returns None only for
    equal maps.
    """
    if not f.invertible or not g.invertible:
        raise ValueError("both maps must be invertible")
    if f.p != g.p:
        raise PrimeMismatch(f"p={f.p} vs p={g.p}")
    if f.b != g.b:
        base, delta = Fraction(0), f.b - g.b
    elif f.a != g.a:
        base, delta = Fraction(1), f.a - g.a
    else:
        return None
    shift = min(fraction_vp(f.a, f.p), fraction_vp(g.a, g.p))
    scale = int(fraction_vp(delta, f.p)) - int(shift) + 1
    cell = cell_canonical(base, scale, f.p)
    if act(f, cell) == act(g, cell):
        raise ArithmeticError("separation depth bound failed")
    return cell


def export_tree(root: Cell, depth: int, fmt: str = "dot",
                node_limit: int = 10000) -> str:
    """Render the subtree below ``root`` to the given depth as DOT or JSON.

    Output is deterministic: children are emitted in digit order.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    p = root.p
    total = (p ** (depth + 1) - 1) // (p - 1)
    if total > node_limit:
        raise ValueError(f"{total} nodes exceeds the limit {node_limit}")

    if fmt == "json":
        def build(cell: Cell, d: int) -> dict:
            doc = cell.to_json()
            if d < depth:
                doc["children"] = [build(c, d + 1) for c in children(cell)]
            return doc

        return json.dumps(build(root, 0), sort_keys=True)

    if fmt != "dot":
        raise ValueError(f"unknown format {fmt!r}")

    def node_id(cell: Cell) -> str:
        return f"{cell.center}|{cell.scale}"

    lines = ["digraph cells {"]
    frontier = [root]
    lines.append(f'  "{node_id(root)}" [label="{root}"];')
    for _ in range(depth):
        nxt = []
        for cell in frontier:
            for child in children(cell):
                lines.append(f'  "{node_id(child)}" [label="{child}"];')
                lines.append(f'  "{node_id(cell)}" -> "{node_id(child)}";')
                nxt.append(child)
        frontier = nxt
    lines.append("}")
    return "\n".join(lines) + "\n"
