"""Coloring classes at desk scale.

Structures whose subset colorings are constrained by a prefix-closed tree
of allowed diagrams, with exact tree ranks, complete amalgamation search
on one-point extension systems, and the splitting constructions that build
large models from high ranks.
"""

from .ordinal import (
    Ordinal,
    CardinalExpr,
    FiniteCardinal,
    KappaCardinal,
    BethCardinal,
    PowerSetCardinal,
    SupremumCardinal,
    compare,
    split,
    fundamental_sequence,
    bound_index,
    parse_ordinal,
    render_ordinal,
)
from .diagrams import (
    RelSymbol,
    Diagram,
    Language,
    DiagramSet,
    FullTree,
    make_diagram,
    validate,
    prune,
    quotient,
)
from .rank import (
    er_rank,
    rank_table,
    rank_witness_chain,
    max_model_bound,
    InfiniteDiagram,
    BranchFamily,
    infinite_diagram_consistent,
    has_infinite_rank_surrogate,
    RankVerdict,
)
from .structures import (
    ColoringStructure,
    TripleExtension,
    is_monochromatic,
    diagram_of,
    monochromatic_table,
    in_class,
    monochromatic_model,
    extend_triple,
    restrict,
    is_substructure,
)
from .amalgamation import (
    SpecialSystem,
    AmalgamResult,
    dap_search,
    ap_search,
    dap_from_ap,
    amalgamate_infinite,
    amalgamate_quotient,
    amalgamate_triple,
    spectra_scan,
    validate_system,
)
from .constructions import (
    kappa,
    BinaryStringUniverse,
    delta,
    delta_sequence,
    s_pattern,
    build_limit_sum,
    build_pair_splitting,
    build_k_splitting,
    build_interval_splitting,
    IntervalBlock,
)
from . import walpha

__version__ = "0.1.0"
