"""Special two-extension systems and complete desk-scale amalgamation solvers.

A special system is a pair of one-point extension colorings of a common
base that agree on the base. Disjoint amalgamation for models of a given
size reduces to extending every such system to a coloring of the union, so
the solvers here work on systems directly: a complete backtracking search
(``dap_search``), the identification-or-search split (``ap_search``), the
three-case constructive amalgamator (``dap_from_ap``), two direct
constructions that bypass search, and a spectra scanner.

Search order is fixed for reproducibility: missing subsets are colored by
increasing size and then lexicographically, candidate symbols by id, and a
branch dies as soon as a freshly decided monochromatic subset has a
diagram outside the allowed set.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Callable, Iterator, Optional

from .diagrams import Diagram, DiagramSet, Language, RelSymbol, quotient
from .rank import InfiniteDiagram, infinite_diagram_consistent
from .structures import (
    ColoringStructure,
    Subset,
    in_class,
    monochromatic_table,
    restrict,
    validate_structure,
)


class InvalidSystemError(ValueError):
    """The input system breaks an invariant (shape, agreement, or membership)."""


class HypothesesError(ValueError):
    """The finite-surrogate hypotheses of the constructive amalgamator fail."""


class BudgetExhausted(Exception):
    """Internal signal: the node budget ran out mid-search."""


@dataclass(frozen=True)
class SpecialSystem:
    """Two one-point extension colorings of a common base.

    ``c1`` colors the base plus ``a1`` and ``c2`` the base plus ``a2``; the
    two must agree on every subset of the base.
    """

    x: tuple[int, ...]
    a1: int
    a2: int
    c1: ColoringStructure
    c2: ColoringStructure

    def base_subsets(self) -> list[Subset]:
        out: list[Subset] = []
        for size in range(0, len(self.x) + 1):
            out.extend(combinations(self.x, size))
        return out


def validate_system(sys: SpecialSystem, family=None) -> None:
    """Raise InvalidSystemError unless all system invariants hold.

    With a family given, both extensions must also belong to its class.
    """
    if sys.a1 == sys.a2:
        raise InvalidSystemError("the two fresh points must differ")
    if sys.a1 in sys.x or sys.a2 in sys.x:
        raise InvalidSystemError("fresh points may not lie in the base")
    if tuple(sorted(set(sys.x))) != sys.x:
        raise InvalidSystemError("base must be sorted and duplicate-free")
    for label, c, a in (("first", sys.c1, sys.a1), ("second", sys.c2, sys.a2)):
        expected = tuple(sorted(sys.x + (a,)))
        if c.universe != expected:
            raise InvalidSystemError(f"{label} coloring must cover the base plus its point")
        validate_structure(c)
    for subset in sys.base_subsets():
        if subset and sys.c1.colors[subset] != sys.c2.colors[subset]:
            raise InvalidSystemError(f"colorings disagree on base subset {subset}")
    if family is not None:
        for label, c in (("first", sys.c1), ("second", sys.c2)):
            report = in_class(c, family)
            if not report:
                raise InvalidSystemError(
                    f"{label} coloring leaves the class at subset {report.violating_subset}"
                )


@dataclass(frozen=True)
class RefutationBranch:
    """Why one candidate color of the first missing subset cannot work."""

    color: RelSymbol
    violating_subset: Subset
    diagram: Diagram


@dataclass(frozen=True)
class AmalgamResult:
    status: str  # witness | identification | unsat | budget-exhausted
    method: str  # search | case1 | case2 | case3 | infinite-diagram | quotient
    witness: Optional[ColoringStructure] = None
    identified: Optional[dict] = None
    refutation: tuple[RefutationBranch, ...] = ()
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.status in ("witness", "identification")


class CompletionSearch:
    """Backtracking completion of a partial coloring to a class member.

    The preset region must be closed under subsets; the remaining subsets
    are assigned in (size, lex) order. Monochromaticity of a subset is
    decided the moment its own color lands, because all smaller subsets are
    colored by then, so pruning needs exactly one diagram check per node.
    """

    def __init__(
        self,
        universe,
        preset: dict[Subset, RelSymbol],
        language: Language,
        family,
        budget: Optional[int] = None,
        rng: Optional[random.Random] = None,
    ):
        self.universe = tuple(sorted(universe))
        self.preset = dict(preset)
        self.language = language
        self.family = family
        self.budget = budget
        self.rng = rng
        self.nodes = 0
        self.branch_failures: dict[RelSymbol, tuple[Subset, Diagram]] = {}
        self._root_color: Optional[RelSymbol] = None

        all_subsets: list[Subset] = []
        for size in range(1, len(self.universe) + 1):
            if self.language.count(size) < 1:
                raise InvalidSystemError(f"the language has no symbols of arity {size}")
            all_subsets.extend(combinations(self.universe, size))
        self.missing = [s for s in all_subsets if s not in self.preset]

        self._table: dict[Subset, Optional[Diagram]] = {}
        for subset in all_subsets:
            if subset not in self.preset:
                continue
            for smaller in combinations(subset, len(subset) - 1):
                if smaller and smaller not in self.preset:
                    raise InvalidSystemError("preset region is not closed under subsets")
            diag = self._decide(subset, self.preset[subset])
            if diag is not None and not self.family.allows(diag):
                raise InvalidSystemError(
                    f"preset subset {subset} is monochromatic with forbidden diagram"
                )
            self._table[subset] = diag

    def _decide(self, subset: Subset, color: RelSymbol) -> Optional[Diagram]:
        if len(subset) == 1:
            return (color,)
        sub_diagrams = {self._table[b] for b in combinations(subset, len(subset) - 1)}
        if len(sub_diagrams) == 1 and None not in sub_diagrams:
            (common,) = sub_diagrams
            return common + (color,)
        return None

    def _candidates(self, size: int) -> list[RelSymbol]:
        symbols = self.language.symbols(size)
        if self.rng is not None:
            symbols = list(symbols)
            self.rng.shuffle(symbols)
        return symbols

    def solutions(self) -> Iterator[dict[Subset, RelSymbol]]:
        """All completions, lazily, in deterministic order (unless shuffled)."""
        assignment: dict[Subset, RelSymbol] = {}
        yield from self._search(0, assignment)

    def _search(self, idx: int, assignment: dict[Subset, RelSymbol]) -> Iterator[dict]:
        if idx == len(self.missing):
            yield dict(assignment)
            return
        subset = self.missing[idx]
        for color in self._candidates(len(subset)):
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise BudgetExhausted
            if idx == 0:
                self._root_color = color
            diag = self._decide(subset, color)
            if diag is not None and not self.family.allows(diag):
                if self._root_color is not None:
                    self.branch_failures.setdefault(self._root_color, (subset, diag))
                continue
            self._table[subset] = diag
            assignment[subset] = color
            yield from self._search(idx + 1, assignment)
            del assignment[subset]
            del self._table[subset]

    def first_solution(self) -> Optional[dict[Subset, RelSymbol]]:
        return next(self.solutions(), None)


def _system_universe(sys: SpecialSystem) -> tuple[int, ...]:
    return tuple(sorted(sys.x + (sys.a1, sys.a2)))


def _system_preset(sys: SpecialSystem) -> dict[Subset, RelSymbol]:
    return {**sys.c1.colors, **sys.c2.colors}


def _agreement_holds(sys: SpecialSystem) -> bool:
    for subset in sys.base_subsets():
        left = sys.c1.colors[tuple(sorted(subset + (sys.a1,)))]
        right = sys.c2.colors[tuple(sorted(subset + (sys.a2,)))]
        if left != right:
            return False
    return True


def dap_search(sys: SpecialSystem, family, budget: Optional[int] = None) -> AmalgamResult:
    """Complete search for a class coloring of the union extending both sides.

    Returns a witness, an exhaustively verified refutation with one
    violating monochromatic subset per candidate branch, or a
    budget-exhausted report.
    """
    validate_system(sys, family)
    search = CompletionSearch(
        _system_universe(sys), _system_preset(sys), family.language, family, budget
    )
    try:
        solution = search.first_solution()
    except BudgetExhausted:
        return AmalgamResult("budget-exhausted", "search", nodes=search.nodes)
    if solution is None:
        branches = tuple(
            RefutationBranch(color, subset, diag)
            for color, (subset, diag) in search.branch_failures.items()
        )
        return AmalgamResult("unsat", "search", refutation=branches, nodes=search.nodes)
    witness = ColoringStructure(
        _system_universe(sys), {**_system_preset(sys), **solution}
    )
    return AmalgamResult("witness", "search", witness=witness, nodes=search.nodes)


def ap_search(sys: SpecialSystem, family, budget: Optional[int] = None) -> AmalgamResult:
    """Identification amalgam when both extensions match pointwise, else search.

    When the two extensions agree on every set through their fresh points,
    mapping both points to one element makes the first extension itself the
    amalgam. Otherwise the points must stay distinct and the disjoint
    search decides the instance.
    """
    validate_system(sys, family)
    if _agreement_holds(sys):
        return AmalgamResult(
            "identification",
            "search",
            witness=sys.c1,
            identified={"a1": sys.a1, "a2": sys.a2, "as": sys.a1},
        )
    return dap_search(sys, family, budget)


def check_amalgamator_hypotheses(ds: DiagramSet, base_size: int) -> None:
    """Raise HypothesesError unless the constructive amalgamator can run.

    Needs more than one symbol at every arity from 2 up to twice the base
    size plus four, and a pair of extensions with distinct top symbols at a
    common level above every length-1 member.
    """
    for k in range(2, 2 * base_size + 5):
        if ds.language.count(k) < 2:
            raise HypothesesError(f"need at least two symbols of arity {k}")
    for w in sorted(ds.level(1)):
        if _split_levels(ds, w) == []:
            raise HypothesesError(f"no splitting extensions above {w}")


def _split_levels(ds: DiagramSet, w: Diagram) -> list[int]:
    """Levels carrying two extensions of w that disagree on their last symbol."""
    levels = []
    for n in range(len(w) + 1, ds.depth() + 1):
        tops = {u[-1] for u in ds.level(n) if u[: len(w)] == w}
        if len(tops) > 1:
            levels.append(n)
    return levels


def dap_from_ap(
    sys: SpecialSystem,
    ds: DiagramSet,
    ap_oracle: Callable[[SpecialSystem, DiagramSet], AmalgamResult],
) -> AmalgamResult:
    """Build a disjoint amalgam from an amalgamation oracle, by case split.

    Case 1: the extensions disagree somewhere over the base, so any amalgam
    the oracle finds already keeps the fresh points apart. Case 2: some
    allowed extension of the fresh point's diagram is realized by no
    monochromatic set on the first side, and coloring the joint sets along
    it blocks monochromaticity above its level. Case 3: every allowed
    extension is realized; recolor one oversized set on the first side to
    force a disagreement, solve by case 1, and restore the color.
    """
    validate_system(sys, ds)
    check_amalgamator_hypotheses(ds, len(sys.x))
    universe = _system_universe(sys)
    preset = _system_preset(sys)

    if not _agreement_holds(sys):
        result = ap_oracle(sys, ds)
        if result.status == "witness":
            return replace(result, method="case1")
        return result

    point_diagram = (sys.c1.colors[(sys.a1,)],)
    mono = monochromatic_table(sys.c1)
    realized: dict[int, set[Diagram]] = {}
    for subset, diag in mono.items():
        if diag is not None:
            realized.setdefault(len(subset), set()).add(diag)

    # Case 2: hunt for an unrealized allowed extension, smallest level first.
    for k in range(2, ds.depth() + 1):
        options = sorted(
            u for u in ds.level(k) if u[:1] == point_diagram and u not in realized.get(k, set())
        )
        if options:
            w = options[0]
            colors = dict(preset)
            for c_size in range(0, len(sys.x) + 1):
                for c in combinations(sys.x, c_size):
                    joint = tuple(sorted(c + (sys.a1, sys.a2)))
                    if c_size <= k - 2:
                        colors[joint] = w[c_size + 1]
                    else:
                        colors[joint] = RelSymbol(c_size + 2, 0)
            witness = ColoringStructure(universe, colors)
            _require_member(witness, ds, "case 2 amalgam")
            return AmalgamResult("witness", "case2", witness=witness)

    # Case 3: every allowed extension is realized somewhere on the first side.
    anchor = _case3_anchor(sys, ds, mono)
    if anchor is None:
        raise HypothesesError(
            "every extension is realized but none by sets through the fresh point"
        )
    n, w1, w2, b1, b2 = anchor
    k = _case3_recolor_arity(ds.language, n, len(sys.x))
    if k is None:
        raise HypothesesError(
            f"no arity above {2 * n - 1} fits inside a base of size {len(sys.x)}"
        )
    core = tuple(sorted({sys.a1, *b1, *b2}))
    fillers = [p for p in sorted(sys.x) if p not in core]
    target = tuple(sorted(core + tuple(fillers[: k - len(core)])))
    if len(target) != k:
        raise HypothesesError(
            f"cannot assemble a {k}-element recoloring set around the realizations"
        )
    old_color = sys.c1.colors[target]
    new_color = next(
        s for s in ds.language.symbols(k) if s != old_color
    )
    recolored = dict(sys.c1.colors)
    recolored[target] = new_color
    c1_prime = ColoringStructure(sys.c1.universe, recolored)
    _require_member(c1_prime, ds, "recolored side")
    result = ap_oracle(SpecialSystem(sys.x, sys.a1, sys.a2, c1_prime, sys.c2), ds)
    if result.status != "witness":
        return result
    final_colors = dict(result.witness.colors)
    final_colors[target] = old_color
    witness = ColoringStructure(universe, final_colors)
    _require_member(witness, ds, "case 3 amalgam")
    return AmalgamResult("witness", "case3", witness=witness)


def _case3_anchor(
    sys: SpecialSystem, ds: DiagramSet, mono: dict[Subset, Optional[Diagram]]
) -> Optional[tuple[int, Diagram, Diagram, Subset, Subset]]:
    """A level with two realized extensions splitting at their last symbol.

    Realizations must pass through the fresh point so that removing it
    leaves base subsets.
    """
    point_diagram = (sys.c1.colors[(sys.a1,)],)
    through_point: dict[Diagram, Subset] = {}
    for subset, diag in sorted(mono.items()):
        if diag is not None and sys.a1 in subset and diag not in through_point:
            through_point[diag] = tuple(p for p in subset if p != sys.a1)
    for n in range(2, ds.depth() + 1):
        level = sorted(u for u in ds.level(n) if u[:1] == point_diagram)
        for w1, w2 in combinations(level, 2):
            if w1[-1] == w2[-1]:
                continue
            if w1 in through_point and w2 in through_point:
                return n, w1, w2, through_point[w1], through_point[w2]
    return None


def _case3_recolor_arity(language: Language, n: int, base_size: int) -> Optional[int]:
    for k in range(2 * n, base_size + 2):
        if language.count(k) > 1:
            return k
    return None


def _require_member(m: ColoringStructure, family, what: str) -> None:
    report = in_class(m, family)
    if not report:
        raise RuntimeError(
            f"{what} left the class at {report.violating_subset}; this is a bug"
        )


def amalgamate_infinite(
    sys: SpecialSystem, family, d: Optional[InfiniteDiagram] = None
) -> AmalgamResult:
    """Amalgamate along an infinite diagram.

    With distinct singleton colors no joint set can be monochromatic and
    the joint colors are free (canonically symbol id 0). With matching
    singleton colors the sets through both fresh points follow d at their
    size, so d must start at the common color and be allowed deep enough.
    """
    validate_system(sys, family)
    colors = _system_preset(sys)
    c1_point = sys.c1.colors[(sys.a1,)]
    c2_point = sys.c2.colors[(sys.a2,)]
    if c1_point != c2_point:
        for size in range(0, len(sys.x) + 1):
            for c in combinations(sys.x, size):
                joint = tuple(sorted(c + (sys.a1, sys.a2)))
                colors[joint] = RelSymbol(size + 2, 0)
    else:
        if d is None:
            raise ValueError("matching singleton colors require an infinite diagram")
        if d(1) != c1_point:
            raise ValueError("the diagram must start at the common singleton color")
        if not infinite_diagram_consistent(family, d, len(sys.x) + 2):
            raise ValueError("the diagram is not allowed to the required depth")
        for size in range(0, len(sys.x) + 1):
            for c in combinations(sys.x, size):
                joint = tuple(sorted(c + (sys.a1, sys.a2)))
                colors[joint] = d(size + 2)
    witness = ColoringStructure(_system_universe(sys), colors)
    _require_member(witness, family, "infinite-diagram amalgam")
    return AmalgamResult("witness", "infinite-diagram", witness=witness)


def amalgamate_quotient(
    sys: SpecialSystem,
    ds: DiagramSet,
    stem: Diagram,
    cstar: ColoringStructure,
) -> AmalgamResult:
    """Amalgamate through a length-2 stem and a quotient-class coloring.

    The joint pair takes the stem's top color and every larger joint set
    takes the quotient coloring of its base part, shifted back up by two.
    """
    validate_system(sys, ds)
    c1_point = sys.c1.colors[(sys.a1,)]
    if sys.c2.colors[(sys.a2,)] != c1_point:
        raise ValueError("quotient amalgamation needs matching singleton colors")
    if len(stem) != 2 or stem not in ds.members:
        raise ValueError("the stem must be a length-2 member")
    if stem[0] != c1_point:
        raise ValueError("the stem must start at the common singleton color")
    _, quotient_set = quotient(ds, stem)
    if cstar.universe != sys.x:
        raise ValueError("the quotient coloring must cover exactly the base")
    if sys.x:
        validate_structure(cstar)
        report = in_class(cstar, quotient_set)
        if not report:
            raise ValueError(
                f"the quotient coloring leaves its class at {report.violating_subset}"
            )
    colors = _system_preset(sys)
    colors[(min(sys.a1, sys.a2), max(sys.a1, sys.a2))] = stem[1]
    for size in range(1, len(sys.x) + 1):
        for c in combinations(sys.x, size):
            joint = tuple(sorted(c + (sys.a1, sys.a2)))
            colors[joint] = RelSymbol(size + 2, cstar.colors[c].id)
    witness = ColoringStructure(_system_universe(sys), colors)
    _require_member(witness, ds, "quotient amalgam")
    return AmalgamResult("witness", "quotient", witness=witness)


def amalgamate_triple(
    m1: ColoringStructure,
    m2: ColoringStructure,
    m3: ColoringStructure,
    family,
    budget: Optional[int] = None,
) -> AmalgamResult:
    """Convenience wrapper: amalgamate a nested triple point by point.

    Adds the points of the third structure beyond the base in id order,
    completing the coloring after each step. Steps do not backtrack across
    each other, so an unsat outcome here is not a refutation.
    """
    shared = set(m2.universe) & set(m3.universe)
    if shared != set(m1.universe):
        raise InvalidSystemError("the outer universes must overlap exactly in the base")
    current = m2
    kept = list(m1.universe)
    total_nodes = 0
    for b in sorted(set(m3.universe) - set(m1.universe)):
        part = restrict(m3, set(kept) | {b})
        universe = tuple(sorted(set(current.universe) | {b}))
        preset = {**current.colors, **part.colors}
        search = CompletionSearch(universe, preset, family.language, family, budget)
        try:
            solution = search.first_solution()
        except BudgetExhausted:
            return AmalgamResult("budget-exhausted", "search", nodes=total_nodes + search.nodes)
        total_nodes += search.nodes
        if solution is None:
            return AmalgamResult("unsat", "search", nodes=total_nodes)
        current = ColoringStructure(universe, {**preset, **solution})
        kept.append(b)
    return AmalgamResult("witness", "search", witness=current, nodes=total_nodes)


# -- system enumeration and spectra ------------------------------------------

def enumerate_extensions(
    base: ColoringStructure, point: int, family, budget: Optional[int] = None
) -> Iterator[ColoringStructure]:
    """All class colorings of the base universe plus one point, canonically ordered."""
    universe = tuple(sorted(set(base.universe) | {point}))
    search = CompletionSearch(universe, dict(base.colors), family.language, family, budget)
    for solution in search.solutions():
        yield ColoringStructure(universe, {**base.colors, **solution})


def enumerate_bases(size: int, family, budget: Optional[int] = None) -> Iterator[ColoringStructure]:
    """All class colorings of {0..size-1}, canonically ordered."""
    universe = tuple(range(size))
    search = CompletionSearch(universe, {}, family.language, family, budget)
    for solution in search.solutions():
        yield ColoringStructure(universe, dict(solution))


def _relabel(m: ColoringStructure, mapping: dict[int, int]) -> ColoringStructure:
    universe = tuple(sorted(mapping.get(p, p) for p in m.universe))
    colors = {}
    for subset, color in m.colors.items():
        colors[tuple(sorted(mapping.get(p, p) for p in subset))] = color
    return ColoringStructure(universe, colors)


def enumerate_special_systems(
    size: int, family, budget: Optional[int] = None
) -> Iterator[SpecialSystem]:
    """All special systems over base {0..size-1}, fresh points size and size+1.

    Unordered pairs are produced once, with the first extension never later
    than the second in the canonical extension order.
    """
    a1, a2 = size, size + 1
    for base in enumerate_bases(size, family, budget):
        extensions = list(enumerate_extensions(base, a1, family, budget))
        for i, c1 in enumerate(extensions):
            for c2 in extensions[i:]:
                yield SpecialSystem(
                    tuple(range(size)), a1, a2, c1, _relabel(c2, {a1: a2})
                )


def sample_special_system(
    size: int, family, rng: random.Random, budget: Optional[int] = None
) -> Optional[SpecialSystem]:
    """One random special system, or None when the class has no base of this size."""
    a1, a2 = size, size + 1
    base_search = CompletionSearch(tuple(range(size)), {}, family.language, family, budget, rng)
    base_solution = base_search.first_solution()
    if base_solution is None:
        return None
    base = ColoringStructure(tuple(range(size)), base_solution)

    def random_extension(point: int) -> Optional[ColoringStructure]:
        universe = tuple(sorted(set(base.universe) | {point}))
        search = CompletionSearch(universe, dict(base.colors), family.language, family, budget, rng)
        solution = search.first_solution()
        if solution is None:
            return None
        return ColoringStructure(universe, {**base.colors, **solution})

    c1 = random_extension(a1)
    c2 = random_extension(a2)
    if c1 is None or c2 is None:
        return None
    return SpecialSystem(tuple(range(size)), a1, a2, c1, c2)


@dataclass(frozen=True)
class ScanEntry:
    dap: str  # yes | no | unknown
    ap: str
    dap_certificate: Optional[SpecialSystem] = None
    ap_certificate: Optional[SpecialSystem] = None


def spectra_scan(
    family,
    lam_max: int,
    mode: str = "exhaustive",
    seed: int = 0,
    trials: int = 100,
    budget: Optional[int] = None,
) -> dict[int, ScanEntry]:
    """Per-size amalgamation verdicts from 0 up to ``lam_max``.

    Exhaustive mode sweeps every special system in canonical order, so a
    refuting system is the first one in that order. Sampled mode draws
    seeded random systems and can only ever answer no or unknown.
    """
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    table: dict[int, ScanEntry] = {}
    for lam in range(lam_max + 1):
        if mode == "exhaustive":
            table[lam] = _scan_exhaustive(lam, family, budget)
        else:
            table[lam] = _scan_sampled(lam, family, random.Random(seed * 1000003 + lam), trials, budget)
    return table


def _scan_exhaustive(lam: int, family, budget: Optional[int]) -> ScanEntry:
    dap_verdict, ap_verdict = "yes", "yes"
    dap_cert = ap_cert = None
    try:
        for sys in enumerate_special_systems(lam, family, budget):
            if dap_verdict != "no":
                res = dap_search(sys, family, budget)
                if res.status == "unsat":
                    dap_verdict, dap_cert = "no", sys
                elif res.status == "budget-exhausted":
                    dap_verdict = "unknown"
            if ap_verdict != "no":
                res = ap_search(sys, family, budget)
                if res.status == "unsat":
                    ap_verdict, ap_cert = "no", sys
                elif res.status == "budget-exhausted":
                    ap_verdict = "unknown"
            if dap_verdict == "no" and ap_verdict == "no":
                break
    except BudgetExhausted:
        if dap_verdict != "no":
            dap_verdict = "unknown"
        if ap_verdict != "no":
            ap_verdict = "unknown"
    return ScanEntry(dap_verdict, ap_verdict, dap_cert, ap_cert)


def _scan_sampled(
    lam: int, family, rng: random.Random, trials: int, budget: Optional[int]
) -> ScanEntry:
    dap_verdict, ap_verdict = "unknown", "unknown"
    dap_cert = ap_cert = None
    for _ in range(trials):
        try:
            sys = sample_special_system(lam, family, rng, budget)
        except BudgetExhausted:
            continue
        if sys is None:
            continue
        if dap_verdict != "no":
            res = dap_search(sys, family, budget)
            if res.status == "unsat":
                dap_verdict, dap_cert = "no", sys
        if ap_verdict != "no":
            res = ap_search(sys, family, budget)
            if res.status == "unsat":
                ap_verdict, ap_cert = "no", sys
        if dap_verdict == "no" and ap_verdict == "no":
            break
    return ScanEntry(dap_verdict, ap_verdict, dap_cert, ap_cert)
