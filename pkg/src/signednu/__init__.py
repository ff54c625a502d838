"""Signed multigraphs, their minor-closed level-two class, and the matrices
attached to them.

The package decides whether a signed graph stays at level two (no fully odd
four-clique minor, no three-path doubled-triangle minor) along two independent
routes: a structural pipeline of splits and leaf classifications emitting
machine-checkable certificates, and a brute-force minor search.  A numerical
module samples and checks the positive semidefinite matrices that motivate
the classes.
"""

from .canonical import canonical_key, labeled_key, pair_counts, signed_isomorphic
from .classify import (
    PlaneEmbedding,
    embed_plane,
    is_almost_bipartite,
    is_double_prism,
    is_planar,
    plane_embedding,
    planar_embeddings,
    two_odd_faces,
)
from .core import (
    Edge,
    SignedGraph,
    Walk,
    all_cycles,
    components,
    contract_edge,
    delete_edge,
    delete_vertex,
    edge_subgraph,
    is_bipartite,
    is_block,
    is_connected,
    is_two_connected,
    odd_cycle,
    parity_coloring,
    resign,
    sign_equivalent,
    strip_isolated,
    vertex_induced,
    walk_parity,
)
from .deltawye import (
    Move,
    ReductionTrace,
    apply_move,
    check_trace,
    reduce_to_k2eq,
    replay,
    trace_from_records,
    trace_to_records,
    try_reduce,
)
from .errors import CapacityError, InputError, InternalInconsistencyError, MoveError
from .families import cycle_graph, double_prism, k2_eq, k3_eq, k4_odd, path_graph, target
from .graphio import (
    graph_from_raw,
    graph_to_dot,
    graph_to_raw,
    graph_to_records,
    graph_to_text,
    load_graph,
    parse_any,
    parse_graph_records,
    parse_graph_text,
)
from .kernels import backend_name, have_compiled
from .matrix import (
    PatternMatrix,
    SapResult,
    bipartite_inverse_sign_check,
    canonical_witness,
    delta_y_extension,
    kernel_support_check,
    lift_sap_witness,
    pattern_check,
    pattern_violations,
    psd_nullity,
    sample_psd,
    sap_check,
    schur_complement,
)
from .pipeline import (
    MinorWitness,
    Verdict,
    brute_force_minor,
    decide_nu,
    even_cycle_matroid_matrix,
    validate_verdict,
    verify_minor_witness,
)
from .splits import (
    SplitDescription,
    find_01_split,
    find_2_split,
    find_3_split,
    split_nu_recurrence,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
