"""Finite coloring structures, monochromaticity, and class membership.

A coloring structure is a finite universe of integers together with a total
coloring of its nonempty subsets, where a subset of size n receives an
n-ary symbol. A subset is monochromatic when, for each size, all its
equal-size subsets share a color; the class of a diagram set consists of
the structures whose monochromatic subsets all have allowed diagrams.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Union

from .diagrams import Diagram, RelSymbol
from .rank import InfiniteDiagram, infinite_diagram_consistent

Subset = tuple[int, ...]


@dataclass(frozen=True)
class ColoringStructure:
    """A finite universe with a total coloring of its nonempty subsets."""

    universe: tuple[int, ...]
    colors: dict[Subset, RelSymbol]

    def __post_init__(self) -> None:
        if tuple(sorted(set(self.universe))) != self.universe:
            raise ValueError("universe must be sorted and duplicate-free")

    @staticmethod
    def build(universe: Iterable[int], colors: dict[Subset, RelSymbol]) -> "ColoringStructure":
        return ColoringStructure(tuple(sorted(universe)), dict(colors))

    def color(self, subset: Iterable[int]) -> RelSymbol:
        return self.colors[tuple(sorted(subset))]

    def size(self) -> int:
        return len(self.universe)

    def subsets(self, size: Optional[int] = None) -> list[Subset]:
        sizes = range(1, len(self.universe) + 1) if size is None else [size]
        out: list[Subset] = []
        for n in sizes:
            out.extend(combinations(self.universe, n))
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ColoringStructure)
            and self.universe == other.universe
            and self.colors == other.colors
        )

    def __hash__(self) -> int:
        return hash((self.universe, tuple(sorted(self.colors.items()))))


def validate_structure(m: ColoringStructure) -> None:
    """Raise unless the coloring is total and arity-disciplined."""
    for subset in m.subsets():
        sym = m.colors.get(subset)
        if sym is None:
            raise ValueError(f"subset {subset} is uncolored")
        if sym.arity != len(subset):
            raise ValueError(f"subset {subset} carries arity-{sym.arity} symbol {sym}")
    extras = set(m.colors) - set(m.subsets())
    if extras:
        raise ValueError(f"colors assigned outside the universe: {sorted(extras)!r}")


def is_monochromatic(m: ColoringStructure, subset: Iterable[int]) -> bool:
    """Direct check: all equal-size subsets share a color, for every size."""
    a = tuple(sorted(subset))
    if not a:
        raise ValueError("the empty set has no color")
    for size in range(1, len(a) + 1):
        colors = {m.color(b) for b in combinations(a, size)}
        if len(colors) > 1:
            return False
    return True


def diagram_of(m: ColoringStructure, subset: Iterable[int]) -> Diagram:
    """The diagram of a monochromatic subset: its common color at each size."""
    a = tuple(sorted(subset))
    if not is_monochromatic(m, a):
        raise ValueError(f"subset {a} is not monochromatic")
    return tuple(m.color(a[:size]) for size in range(1, len(a) + 1))


def monochromatic_table(m: ColoringStructure) -> dict[Subset, Optional[Diagram]]:
    """Diagrams of all monochromatic subsets, None for the rest.

    A set is monochromatic exactly when all its one-smaller subsets are
    monochromatic with a common diagram, which gives a single pass over the
    subset lattice by size.
    """
    table: dict[Subset, Optional[Diagram]] = {}
    for subset in m.subsets():
        if len(subset) == 1:
            table[subset] = (m.colors[subset],)
            continue
        sub_diagrams = {table[b] for b in combinations(subset, len(subset) - 1)}
        if len(sub_diagrams) == 1 and None not in sub_diagrams:
            (common,) = sub_diagrams
            table[subset] = common + (m.colors[subset],)
        else:
            table[subset] = None
    return table


@dataclass(frozen=True)
class MembershipReport:
    ok: bool
    violating_subset: Optional[Subset] = None
    diagram: Optional[Diagram] = None

    def __bool__(self) -> bool:
        return self.ok


def in_class(m: ColoringStructure, family) -> MembershipReport:
    """Check every monochromatic subset's diagram against the family.

    Subsets are visited by size and then lexicographically, so a failure
    reports the minimal violating subset. ``family`` is anything with an
    ``allows`` method.
    """
    table = monochromatic_table(m)
    for subset in m.subsets():
        diagram = table[subset]
        if diagram is not None and not family.allows(diagram):
            return MembershipReport(False, subset, diagram)
    return MembershipReport(True)


def monochromatic_model(
    d: Union[Diagram, InfiniteDiagram], n: int, universe: Optional[Iterable[int]] = None
) -> ColoringStructure:
    """The structure on n points whose every size-k subset is colored d(k)."""
    if isinstance(d, InfiniteDiagram):
        prefix = d.prefix(n)
    else:
        if n > len(d):
            raise ValueError(f"diagram of length {len(d)} cannot color {n} points")
        prefix = d[:n]
    points = tuple(sorted(universe)) if universe is not None else tuple(range(n))
    if len(points) != n:
        raise ValueError("universe size does not match n")
    colors = {}
    for size in range(1, n + 1):
        for subset in combinations(points, size):
            colors[subset] = prefix[size - 1]
    return ColoringStructure(points, colors)


def restrict(m: ColoringStructure, subset: Iterable[int]) -> ColoringStructure:
    """The substructure on a subset of the universe."""
    points = tuple(sorted(subset))
    if not set(points) <= set(m.universe):
        raise ValueError("not a subset of the universe")
    colors = {
        s: m.colors[s]
        for size in range(1, len(points) + 1)
        for s in combinations(points, size)
    }
    return ColoringStructure(points, colors)


def is_substructure(small: ColoringStructure, big: ColoringStructure) -> bool:
    """Containment of universes plus agreement of colors on the small side."""
    if not set(small.universe) <= set(big.universe):
        return False
    return all(big.colors[s] == c for s, c in small.colors.items())


@dataclass(frozen=True)
class TripleExtension:
    """Three structures grown around a common fresh set, embeddings the identity."""

    n1: ColoringStructure
    n2: ColoringStructure
    n3: ColoringStructure
    added: tuple[int, ...]


def extend_triple(
    m1: ColoringStructure,
    m2: ColoringStructure,
    m3: ColoringStructure,
    fresh: Iterable[int],
    d: InfiniteDiagram,
    family=None,
) -> TripleExtension:
    """Extend a nested triple by a fresh set, coloring new subsets along d.

    Subsets inside an old universe keep their colors; every subset meeting
    the fresh set gets d at its size. When a family is supplied, d must be
    consistent with it deep enough to cover the largest new structure.
    """
    fresh = tuple(sorted(fresh))
    if not (is_substructure(m1, m2) and is_substructure(m1, m3)):
        raise ValueError("the first structure must be a substructure of the other two")
    occupied = set(m2.universe) | set(m3.universe)
    if occupied & set(fresh):
        raise ValueError("the fresh set must be disjoint from both universes")
    depth = max(m2.size(), m3.size()) + len(fresh)
    if family is not None and depth >= 1 and not infinite_diagram_consistent(family, d, depth):
        raise ValueError("the infinite diagram is not allowed to the required depth")

    def grow(m: ColoringStructure) -> ColoringStructure:
        points = tuple(sorted(set(m.universe) | set(fresh)))
        colors = {}
        for size in range(1, len(points) + 1):
            for subset in combinations(points, size):
                if set(subset) <= set(m.universe):
                    colors[subset] = m.colors[subset]
                else:
                    colors[subset] = d(size)
        return ColoringStructure(points, colors)

    return TripleExtension(grow(m1), grow(m2), grow(m3), fresh)


# -- JSON interchange -------------------------------------------------------

def subset_key(subset: Subset) -> str:
    return json.dumps(list(subset), separators=(",", ":"))


def structure_to_json(m: ColoringStructure) -> dict:
    return {
        "universe": list(m.universe),
        "colors": {subset_key(s): [sym.arity, sym.id] for s, sym in sorted(m.colors.items())},
    }


def structure_from_json(data: dict) -> ColoringStructure:
    universe = tuple(sorted(int(x) for x in data["universe"]))
    colors = {}
    for key, pair in data["colors"].items():
        subset = tuple(sorted(int(x) for x in json.loads(key)))
        colors[subset] = RelSymbol(int(pair[0]), int(pair[1]))
    m = ColoringStructure(universe, colors)
    validate_structure(m)
    return m
