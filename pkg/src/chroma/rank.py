"""The existence rank on diagram trees and its bounded exploration.

On a finite extensional tree the rank of a node is the usual well-founded
tree rank: leaves are 0 and every other node is ``1 + max`` over its
children, always a natural number. Intensional, finitely branching trees
are explored against a node budget instead, which captures the
finite-surrogate content of the infinite-rank threshold: a finitely
branching tree whose rank exceeds every budget carries an infinite branch.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from .diagrams import Diagram, DiagramSet, RelSymbol
from .ordinal import CardinalExpr, Ordinal, beth_expr, bound_index


def rank_table(ds: DiagramSet) -> dict[Diagram, int]:
    """Ranks for every member, computed bottom-up by decreasing length."""
    ranks: dict[Diagram, int] = {}
    for w in sorted(ds.members, key=len, reverse=True):
        kids = ds.children(w)
        ranks[w] = 1 + max(ranks[k] for k in kids) if kids else 0
    return ranks


def er_rank(ds: DiagramSet, w: Diagram) -> int:
    """The existence rank of a member of a finite diagram set."""
    if w not in ds.members:
        raise ValueError(f"diagram {w!r} is not a member")
    return rank_table(ds)[w]


def check_rank_table(ds: DiagramSet, table: dict[Diagram, int]) -> list[Diagram]:
    """Nodes violating the rank law (leaves 0, parents 1 + max over children)."""
    bad = []
    for w in ds.sorted_members:
        kids = ds.children(w)
        expected = 1 + max(table[k] for k in kids) if kids else 0
        if table.get(w) != expected:
            bad.append(w)
    return bad


def rank_witness_chain(ds: DiagramSet, k: int) -> list[Diagram]:
    """A chain from the root whose ranks step down by one at each level.

    Returns diagrams w_0 = () through w_k with rank(w_j) = rank(()) - j,
    choosing the lexicographically first qualifying child at each step;
    raises if the root rank is below k.
    """
    if k < 0:
        raise ValueError("chain length must be non-negative")
    ranks = rank_table(ds)
    root_rank = ranks[()]
    if root_rank < k:
        raise ValueError(f"root rank {root_rank} is smaller than the requested chain length {k}")
    chain = [()]
    for j in range(1, k + 1):
        target = root_rank - j
        step = next(c for c in sorted(ds.children(chain[-1])) if ranks[c] == target)
        chain.append(step)
    return chain


def max_model_bound(
    w: Diagram,
    rank_strict_bound: Union[int, Ordinal],
    langsize: CardinalExpr,
) -> CardinalExpr:
    """Symbolic size bound for models of the class pruned to ``w``.

    ``rank_strict_bound`` is a strict upper bound b + k on the rank of w;
    the bound is beth with index b + n*k + k*(k-1)/2 over the language size,
    where n is the length of w.
    """
    beta, k = Ordinal.of(rank_strict_bound).split()
    return beth_expr(bound_index(beta, len(w), k), langsize)


class InfiniteDiagram:
    """A total assignment of one n-ary symbol to every positive n."""

    def __init__(self, fn: Callable[[int], RelSymbol]):
        self._fn = fn

    def __call__(self, n: int) -> RelSymbol:
        if n < 1:
            raise ValueError("positions start at 1")
        sym = self._fn(n)
        if sym.arity != n:
            raise ValueError(f"generator returned arity {sym.arity} at position {n}")
        return sym

    def prefix(self, n: int) -> Diagram:
        return tuple(self(k) for k in range(1, n + 1))

    @staticmethod
    def from_symbols(symbols, tail: Optional[Callable[[int], RelSymbol]] = None) -> "InfiniteDiagram":
        """Wrap a finite symbol sequence, deferring to ``tail`` beyond it.

        Without a tail, positions past the sequence default to symbol id 0.
        """
        symbols = tuple(symbols)

        def fn(n: int) -> RelSymbol:
            if n <= len(symbols):
                return symbols[n - 1]
            if tail is not None:
                return tail(n)
            return RelSymbol(n, 0)

        return InfiniteDiagram(fn)


def infinite_diagram_consistent(family, d: InfiniteDiagram, depth: int) -> bool:
    """True when every prefix of d up to the given depth is an allowed diagram.

    ``family`` is anything with an ``allows`` method: an extensional
    diagram set or an intensional tree.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    return all(family.allows(d.prefix(n)) for n in range(1, depth + 1))


class BranchFamily:
    """The prefix closure of a single infinite diagram, as an intensional tree."""

    def __init__(self, d: InfiniteDiagram):
        self._d = d

    def allows(self, w: Diagram) -> bool:
        return w == self._d.prefix(len(w))

    def children(self, w: Diagram) -> tuple[Diagram, ...]:
        if not self.allows(w):
            return ()
        return (w + (self._d(len(w) + 1),),)


@dataclass(frozen=True)
class RankVerdict:
    """Either an exact finite rank or a certificate that the rank meets the budget."""

    exact: Optional[int] = None
    at_least: Optional[int] = None

    def __str__(self) -> str:
        return str(self.exact) if self.exact is not None else f">= {self.at_least}"


def has_infinite_rank_surrogate(tree, budget: int) -> RankVerdict:
    """Explore a finitely branching tree to a budget.

    Returns the exact root rank when it is below the budget and the
    certificate ``at_least=budget`` otherwise. ``tree`` needs a
    ``children`` enumerator; extensional diagram sets qualify.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")

    def explore(w: Diagram, cap: int) -> RankVerdict:
        if cap == 0:
            return RankVerdict(at_least=0)
        kids = tree.children(w)
        if not kids:
            return RankVerdict(exact=0)
        best = 0
        for kid in kids:
            sub = explore(kid, cap - 1)
            if sub.exact is None:
                return RankVerdict(at_least=cap)
            best = max(best, sub.exact)
        return RankVerdict(exact=1 + best)

    return explore((), budget)
