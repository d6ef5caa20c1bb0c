"""Relational languages, diagrams, and prefix-closed diagram sets.

A diagram is a finite sequence of relation symbols with the arity at
position k equal to k; a diagram set is a finite prefix-closed collection
of diagrams, viewed as a tree rooted at the empty diagram. The two tree
surgeries used everywhere downstream live here as well: pruning to the
members comparable with a given set, and quotienting by a fixed stem.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional

from .ordinal import CardinalExpr, FiniteCardinal, kappa_expr
from .ordinal import OMEGA


class RelSymbol(NamedTuple):
    """A relation symbol, identified structurally by (arity, id)."""

    arity: int
    id: int


Diagram = tuple[RelSymbol, ...]

EMPTY_DIAGRAM: Diagram = ()


def make_diagram(pairs: Iterable[tuple[int, int]]) -> Diagram:
    return tuple(RelSymbol(a, i) for a, i in pairs)


@dataclass(frozen=True)
class Language:
    """Per-arity symbol counts, tracked up to a maximum arity.

    ``counts`` maps a contiguous arity range starting at 1 to the number of
    symbols at each arity (at least one each). Every language implicitly
    carries one symbol at each arity beyond the tracked maximum, matching
    the ambient guarantee of at least one relation per arity; with
    ``repeat=True`` the count of the largest tracked arity persists
    instead, which is how richer unbounded languages are described
    finitely.
    """

    counts: tuple[tuple[int, int], ...]
    repeat: bool = False

    def __post_init__(self) -> None:
        for arity, count in self.counts:
            if count < 1:
                raise ValueError(f"arity {arity} must have at least one symbol")
        tracked = [a for a, _ in self.counts]
        if tracked != list(range(1, len(tracked) + 1)):
            raise ValueError("counts must cover a contiguous arity range starting at 1")

    @staticmethod
    def of(counts: dict[int, int], repeat: bool = False) -> "Language":
        return Language(tuple(sorted(counts.items())), repeat)

    @cached_property
    def _count_map(self) -> dict[int, int]:
        return dict(self.counts)

    @property
    def max_tracked_arity(self) -> int:
        return self.counts[-1][0] if self.counts else 0

    def count(self, arity: int) -> int:
        """Number of symbols of the given arity; never below one."""
        if arity < 1:
            return 0
        if arity in self._count_map:
            return self._count_map[arity]
        if self.repeat and self.counts:
            return self._count_map[self.max_tracked_arity]
        return 1

    def symbols(self, arity: int) -> list[RelSymbol]:
        return [RelSymbol(arity, i) for i in range(self.count(arity))]

    def has_symbol(self, sym: RelSymbol) -> bool:
        return 0 <= sym.id < self.count(sym.arity)

    def size(self) -> CardinalExpr:
        """Size of the tracked fragment: finite, or the first infinite cardinal when repeating."""
        if self.repeat:
            return kappa_expr(OMEGA)
        return FiniteCardinal(sum(c for _, c in self.counts))

    def shift(self, k: int) -> "Language":
        """The language whose n-ary symbols are the original (n+k)-ary ones."""
        if k < 0:
            raise ValueError("shift must be non-negative")
        if k == 0:
            return self
        shifted = tuple((a - k, c) for a, c in self.counts if a > k)
        return Language(shifted, self.repeat)


@dataclass(frozen=True)
class DiagramSet:
    """A finite prefix-closed set of diagrams over a language."""

    language: Language
    members: frozenset[Diagram]

    @staticmethod
    def of(language: Language, members: Iterable[Diagram]) -> "DiagramSet":
        return DiagramSet(language, frozenset(members))

    @cached_property
    def sorted_members(self) -> tuple[Diagram, ...]:
        """Members in canonical order: lexicographic on symbol sequences."""
        return tuple(sorted(self.members))

    @cached_property
    def _children_index(self) -> dict[Diagram, tuple[Diagram, ...]]:
        index: dict[Diagram, list[Diagram]] = {m: [] for m in self.members}
        for m in self.sorted_members:
            if m:
                parent = m[:-1]
                if parent in index:
                    index[parent].append(m)
        return {k: tuple(v) for k, v in index.items()}

    def __contains__(self, w: Diagram) -> bool:
        return w in self.members

    def allows(self, w: Diagram) -> bool:
        return w in self.members

    def children(self, w: Diagram) -> tuple[Diagram, ...]:
        return self._children_index.get(w, ())

    def level(self, n: int) -> set[Diagram]:
        """All members of length n; level 0 is the singleton of the empty diagram."""
        return {m for m in self.members if len(m) == n}

    def depth(self) -> int:
        return max((len(m) for m in self.members), default=0)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    diagram: Optional[Diagram] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate(ds: DiagramSet) -> ValidationReport:
    """Check nonemptiness, arity discipline, symbol bounds, and prefix closure.

    Reports the first violating diagram in canonical order.
    """
    if EMPTY_DIAGRAM not in ds.members:
        return ValidationReport(False, None, "the empty diagram is missing")
    for m in ds.sorted_members:
        for pos, sym in enumerate(m, start=1):
            if sym.arity != pos:
                return ValidationReport(
                    False, m, f"arity mismatch at position {pos}: symbol has arity {sym.arity}"
                )
            if not ds.language.has_symbol(sym):
                return ValidationReport(
                    False, m, f"symbol {sym} not in the language at position {pos}"
                )
        if m and m[:-1] not in ds.members:
            return ValidationReport(False, m, "missing prefix")
    return ValidationReport(True)


def prune(ds: DiagramSet, keep: Iterable[Diagram]) -> DiagramSet:
    """Restrict to members comparable (prefix or extension) with some kept diagram."""
    keep = set(keep)
    if not keep:
        raise ValueError("prune needs at least one diagram to keep")
    missing = keep - ds.members
    if missing:
        raise ValueError(f"prune set is not contained in the diagram set: {sorted(missing)!r}")

    def comparable(w: Diagram, u: Diagram) -> bool:
        k = min(len(w), len(u))
        return w[:k] == u[:k]

    members = {w for w in ds.members if any(comparable(w, u) for u in keep)}
    return DiagramSet(ds.language, frozenset(members))


def quotient(ds: DiagramSet, stem: Diagram) -> tuple[Language, DiagramSet]:
    """Chop a stem off the tree and shift arities down by its length.

    The result collects the suffixes of all members extending ``stem``; a
    symbol of original arity n+k reappears with arity n and the same id.
    """
    k = len(stem)
    if k < 1:
        raise ValueError("the stem must be a nonempty diagram")
    if stem not in ds.members:
        raise ValueError("the stem is not a member of the diagram set")
    language = ds.language.shift(k)
    suffixes = set()
    for w in ds.members:
        if len(w) >= k and w[:k] == stem:
            suffixes.add(tuple(RelSymbol(sym.arity - k, sym.id) for sym in w[k:]))
    return language, DiagramSet(language, frozenset(suffixes))


@dataclass(frozen=True)
class FullTree:
    """The intensional tree of all arity-disciplined diagrams over a language.

    The tree has unbounded depth since every arity carries a symbol;
    membership and child enumeration stay finite at every node.
    """

    language: Language

    def allows(self, w: Diagram) -> bool:
        return all(
            sym.arity == pos and self.language.has_symbol(sym)
            for pos, sym in enumerate(w, start=1)
        )

    def children(self, w: Diagram) -> tuple[Diagram, ...]:
        return tuple(w + (sym,) for sym in self.language.symbols(len(w) + 1))


def full_tree_set(language: Language, depth: int) -> DiagramSet:
    """The extensional truncation of the full tree at a given depth."""
    members: set[Diagram] = {EMPTY_DIAGRAM}
    frontier: list[Diagram] = [EMPTY_DIAGRAM]
    while frontier:
        w = frontier.pop()
        if len(w) >= depth:
            continue
        for sym in language.symbols(len(w) + 1):
            child = w + (sym,)
            members.add(child)
            frontier.append(child)
    return DiagramSet(language, frozenset(members))


# -- JSON interchange -------------------------------------------------------

def language_to_json(lang: Language) -> dict:
    out: dict = {"arities": {str(a): c for a, c in lang.counts}}
    if lang.repeat:
        out["repeat"] = True
    return out


def language_from_json(data: dict) -> Language:
    counts = {int(a): int(c) for a, c in data["arities"].items()}
    return Language.of(counts, bool(data.get("repeat", False)))


def diagram_to_json(w: Diagram) -> list:
    return [[sym.arity, sym.id] for sym in w]


def diagram_from_json(data: list) -> Diagram:
    return tuple(RelSymbol(int(a), int(i)) for a, i in data)


def diagram_key(w: Diagram) -> str:
    """Canonical string key for a diagram, used in JSON maps."""
    return json.dumps(diagram_to_json(w), separators=(",", ":"))


def diagram_set_to_json(ds: DiagramSet) -> dict:
    out = language_to_json(ds.language)
    out["members"] = [diagram_to_json(m) for m in ds.sorted_members]
    return out


def diagram_set_from_json(data: dict) -> DiagramSet:
    language = language_from_json(data)
    members = frozenset(diagram_from_json(m) for m in data["members"])
    return DiagramSet(language, members)
