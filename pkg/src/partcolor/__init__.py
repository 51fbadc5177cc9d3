"""Degree-constrained graph partitions, Brooks-type colorings and the
critical-graph classifier, each with an independent checker."""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    Graph,
    InducedSubgraph,
    build_complete,
    build_cycle,
    build_edgeless,
    build_o_n,
    build_petersen,
    components,
    degeneracy,
    is_complete,
    is_odd_cycle,
    isomorphic,
    join,
    max_clique_size,
    min_degree_in_host,
    non_cut_vertices,
    o_n_roles,
)
from .partition import (  # noqa: E402
    DegenCertificate,
    EngineError,
    OrderedPartition,
    PartitionCertificate,
    PreconditionError,
    borodin_partition,
    cost_f,
    find_partition_t1,
    find_partition_t2,
    is_obstruction,
    local_search_f,
    movable_subgraph,
)
from .coloring import (  # noqa: E402
    Coloring,
    CriticalStructure,
    Verdict,
    brooks_color,
    classify_critical,
    color_via_partition,
    extract_critical_structure,
    high_subgraph,
    omega_d,
)
from .oracle import (  # noqa: E402
    enumerate_graphs,
    exact_chi,
    extract_critical_subgraph,
    is_vertex_critical,
)
from .verify import verify_certificate  # noqa: E402
