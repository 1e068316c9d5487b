"""Finitely separated graphs: admissible paths, Condition (N),
decompositions, orientations, partial actions, and graph monoids."""

from .graph_core import (
    Edge,
    GraphFormatError,
    Group,
    SeparatedGraph,
    VertexSet,
    full_subgraph,
    is_c_saturated,
    is_hereditary,
    isolated_vertices,
    parse,
    quotient_graph,
    serialize,
    vertex_set,
)
from .admissibility import (
    Path,
    Symbol,
    TransitionDigraph,
    Word,
    allows_return,
    cycle_nodes,
    enumerate_paths,
    inv,
    is_admissible,
    is_base_simple,
    is_cycle,
    meet,
    parse_path,
    path_literal,
    shortest_walk,
    sym_range,
    sym_source,
    symbol_key,
    transition_allowed,
    transition_digraph,
    trivial_word,
    word,
    word_mul,
)
from .condition_n import (
    ConditionNReport,
    FailureWitness,
    LocalOrientation,
    Port,
    RealizablePairs,
    check_condition_n,
    iota,
    is_branching,
    local_orientation,
    port,
    ports_at,
    realizable_pairs,
    tau,
)
from .decomposition import (
    Decomposition,
    HookRelation,
    Stratification,
    decompose,
    hook_relation,
    is_return_free,
    stratify_branch_free,
)
from .orientation import (
    Orientation,
    OrientationReport,
    classify_edges,
    decompose_oriented,
    parse_orientation,
    serialize_orientation,
    synthesize_orientation,
    verify_orientation,
)
from .dynamics import (
    Pattern,
    act,
    check_pattern,
    domain_nonempty,
    enumerate_patterns,
    folner_mean_check,
    folner_ratio,
    folner_set,
    free_words_distinct,
    linear_folner,
    pattern_containing,
    pattern_dump,
    stabilizer_witness,
)
from .monoid import (
    CHECKS,
    DEFAULT_BOUND,
    MonoidPresentation,
    TriBool,
    check_almost_unperforation,
    check_pseudo_cancellation,
    check_separation,
    check_unperforation,
    class_closure,
    equal,
    leq,
    parse_element,
    presentation,
    pseudo_cancellation_violation,
    render_element,
)

__version__ = "0.1.0"
