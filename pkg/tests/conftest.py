"""Shared fixtures: the reference tree, random tree generators, brute oracles."""

from __future__ import annotations

import random
from itertools import combinations, product

import pytest

from chroma.diagrams import Diagram, DiagramSet, Language, RelSymbol

A = RelSymbol(1, 0)
B = RelSymbol(1, 1)
C = RelSymbol(2, 0)
D = RelSymbol(2, 1)
E = RelSymbol(3, 0)

T1_LANGUAGE = Language.of({1: 2, 2: 2, 3: 1})
T1_MEMBERS = [(), (A,), (B,), (A, C), (A, D), (A, C, E)]


def t1_set() -> DiagramSet:
    return DiagramSet.of(T1_LANGUAGE, T1_MEMBERS)


@pytest.fixture
def t1() -> DiagramSet:
    return t1_set()


def naive_rank(members, w) -> int:
    """Independent recursive rank: leaves 0, parents one above their best child."""
    exts = [u for u in members if len(u) == len(w) + 1 and u[: len(w)] == w]
    if not exts:
        return 0
    return 1 + max(naive_rank(members, u) for u in exts)


def random_prefix_tree(rng: random.Random, max_nodes: int = 60, max_arity: int = 5) -> DiagramSet:
    """A random prefix-closed tree over a random small language."""
    counts = {n: rng.randint(1, 5) for n in range(1, max_arity + 1)}
    language = Language.of(counts)
    members = {()}
    frontier = [()]
    while frontier and len(members) < max_nodes:
        w = frontier.pop(rng.randrange(len(frontier)))
        arity = len(w) + 1
        if arity > max_arity:
            continue
        symbols = language.symbols(arity)
        n_children = rng.randint(0 if w else 1, min(len(symbols), 3))
        for sym in rng.sample(symbols, n_children):
            child = w + (sym,)
            if len(members) >= max_nodes:
                break
            members.add(child)
            frontier.append(child)
    return DiagramSet.of(language, members)


def grow_exact_rank(members: set, prefix: Diagram, target: int, language: Language, rng: random.Random) -> None:
    """Attach children below ``prefix`` so its rank is exactly ``target``."""
    if target == 0:
        return
    arity = len(prefix) + 1
    symbols = language.symbols(arity)
    picks = rng.sample(symbols, min(len(symbols), rng.randint(1, 2)))
    for i, sym in enumerate(picks):
        child = prefix + (sym,)
        members.add(child)
        grow_exact_rank(members, child, target - 1 if i == 0 else rng.randint(0, target - 1), language, rng)


def tree_with_level1_ranks(ranks: list[int], rng: random.Random, language: Language | None = None) -> DiagramSet:
    """A tree whose level-1 nodes have exactly the given ranks, in symbol order."""
    if language is None:
        language = Language.of({1: max(2, len(ranks)), 2: 2, 3: 2, 4: 2, 5: 2, 6: 2}, repeat=True)
    members: set = {()}
    for i, r in enumerate(ranks):
        head = (RelSymbol(1, i),)
        members.add(head)
        grow_exact_rank(members, head, r, language, rng)
    return DiagramSet.of(language, members)


def split_everywhere(ds: DiagramSet) -> DiagramSet:
    """Add a sibling with a different top symbol next to each level-2 member.

    Guarantees every level-1 node has two extensions at a common level with
    distinct last symbols, which the constructive amalgamator requires.
    """
    members = set(ds.members)
    for w in list(members):
        if len(w) == 2:
            other = RelSymbol(2, 1 - w[1].id) if ds.language.count(2) > 1 else None
            if other is not None:
                members.add(w[:1] + (other,))
    for head in {m[:1] for m in members if len(m) >= 1}:
        level2 = {m for m in members if len(m) == 2 and m[:1] == head}
        if len({m[-1] for m in level2}) < 2:
            ids = [s.id for s in ds.language.symbols(2)]
            for i in ids[:2]:
                members.add(head + (RelSymbol(2, i),))
    return DiagramSet.of(ds.language, members)


def brute_in_class(universe, colors, members) -> bool:
    """Membership decided from first principles, avoiding the library's machinery."""
    universe = tuple(sorted(universe))
    for size in range(1, len(universe) + 1):
        for subset in combinations(universe, size):
            mono = True
            for k in range(1, size + 1):
                seen = {colors[s] for s in combinations(subset, k)}
                if len(seen) > 1:
                    mono = False
                    break
            if mono:
                diagram = tuple(colors[subset[:k]] for k in range(1, size + 1))
                if diagram not in members:
                    return False
    return True


def brute_system_unsat(system, ds: DiagramSet) -> bool:
    """Confirm a refuted system by trying every total coloring of the missing sets."""
    universe = tuple(sorted(system.x + (system.a1, system.a2)))
    preset = {**system.c1.colors, **system.c2.colors}
    missing = [
        s
        for size in range(1, len(universe) + 1)
        for s in combinations(universe, size)
        if s not in preset
    ]
    domains = [ds.language.symbols(len(s)) for s in missing]
    for choice in product(*domains):
        colors = {**preset, **dict(zip(missing, choice))}
        if brute_in_class(universe, colors, ds.members):
            return False
    return True
