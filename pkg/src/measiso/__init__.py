"""Graph equivalences that measurement sets of squared edge lengths can see.

Graph isomorphism, 1-isomorphism (splits), 2-isomorphism (Whitney reversals),
cycle isomorphism, and d-measurement isomorphism via realization of
squared-edge-length vectors in R^d.
"""

from .cycles import CycleCapExceeded, cycle_isomorphic, enumerate_cycles, is_cycle_subset
from .graph import (
    BlockDecomposition,
    Graph,
    GraphError,
    block_decomposition,
    cut_vertices,
    delete_edges,
    graph_isomorphic,
    is_forest,
    load_graph,
    parse_graph,
)
from .measurement import (
    Configuration,
    EdgeAxisMap,
    MeasurementPoint,
    MembershipVerdict,
    SolverOptions,
    cycle_realizable_exact,
    distinguish_witness,
    is_member,
    lengths_squared,
    project_point,
    realize,
    reflect_across_cut_pair,
    sample_measurement_set,
)
from .whitney import (
    SearchResult,
    SplitSpec,
    TwoSeparation,
    enumerate_two_separations,
    one_isomorphic,
    reversal,
    split,
    two_isomorphic,
    two_isomorphic_search,
)

__version__ = "0.1.0"
