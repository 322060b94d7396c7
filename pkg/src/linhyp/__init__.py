"""Linear 3-uniform hypergraphs, rank-3 paving matroids and exact counting.

The package couples a hypergraph layer (triple systems, shadows, pattern
detection) with a matroid layer (paving line sets, loop/parallel-class
decompositions, stable families), a parity-split codec between them, exact
enumeration and extremal search kernels, and exact verifiers for the
counting inequalities these objects satisfy.
"""

from ._kernels import BACKEND_NAME
from .hypergraph import Graph, Triple, TripleSystem, induced, make_system, shadow, unique_triangle_property
from .patterns import MatchMode, Pattern, contains_pattern, is_free, is_rs
from .matroid3 import (
    PavingLines,
    Rank3Matroid,
    SparsePaving,
    dependent_triples,
    has_minor_w3_mk4,
    has_restriction,
    sparse_from_hypergraph,
    validate_sparse,
    weak_map_leq,
)
from .codec import CodecPair, TripleChain, consecutive_triples, decode, encode
from .constructions import bose_burton, fan, fano, graham_sloane, mk4, whirl3
from .search import (
    CountsTable,
    SearchBudget,
    count_f,
    count_linear_systems,
    count_paving,
    count_rank3,
    count_sparse_paving,
    extremal_max,
    rs_max,
)
from .bounds import (
    BoundReport,
    binary_entropy,
    entropy_count_bound,
    gs_lower_check,
    trivial_f_bound,
    verify_blowup,
)

__version__ = "0.1.0"
