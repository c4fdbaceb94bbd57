"""Threshold-graph toolkit: recognition, set-family enumeration for single
graphs and covers, split-graph support, and exact solving of knapsack
instances whose conflict graph captures feasibility."""

from .graphs import (
    CapacityError,
    ContractError,
    Graph,
    GraphFormatError,
    ShapeMismatchError,
    VertexRangeError,
    canonical_family,
    clique_number,
    complement,
    format_graph,
    induced_subgraph,
    intersect_graphs,
    is_clique,
    is_independent_set,
    maximal_cliques,
    parse_graph,
    union_graphs,
)
from .knapsack import (
    BpInstance,
    DkpInstance,
    DkpItem,
    EquivalenceReport,
    InstanceFormatError,
    KpInstance,
    KpItem,
    NotEquivalentError,
    Solution,
    bp_lower_bound,
    check_equivalence_dkp,
    check_equivalence_kp,
    conflict_cover_dkp,
    conflict_graph_dkp,
    conflict_graph_kp,
    dbp_lower_bound,
    dvp_lower_bound,
    format_instance,
    format_rational,
    format_report,
    format_solution,
    parse_instance,
    per_dimension_instances,
    rational,
    solve_dkp_equivalent,
    solve_kp_equivalent,
)
from .kthreshold import (
    CoverFormatError,
    ThresholdCover,
    TwoThresholdPartition,
    alpha_k,
    cover_from_graphs,
    cover_from_sequences,
    enumerate_im_k,
    enumerate_is_k,
    enumerate_mc_intersection,
    enumerate_mis_2t,
    enumerate_mis_k,
    format_cover,
    omega_intersection,
    parse_cover,
    two_threshold_partition,
)
from .split import (
    NormalizedPartition,
    count_mis_split,
    enumerate_mis_split,
    normalize_partition,
    recognize_split,
)
from .threshold import (
    CreationSequence,
    RecognitionFailure,
    SequenceFormatError,
    SplitPartition,
    alpha_omega,
    complement_sequence,
    count_im,
    count_is,
    count_mc,
    count_mis,
    creation_sequence_to_graph,
    enumerate_im,
    enumerate_is,
    enumerate_max_cliques,
    enumerate_mis,
    parse_sequence,
    recognize_threshold,
    sequence_from_bits,
    serialize_sequence,
    split_partition,
    threshold_to_kp,
)

__all__ = [name for name in dir() if not name.startswith("_")]
