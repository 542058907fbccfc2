"""Graph parity factors, certified spectral radii, and extremal verification."""

from .exact import IntPolynomial, char_poly_exact, compare_largest_roots
from .factors import (
    CapacityError,
    DeficiencyCertificate,
    FactorResult,
    FactorSpec,
    GadgetInfeasible,
    GadgetMap,
    GeneralFactorSpec,
    build_gadget,
    decide_enum,
    decide_lovasz,
    decide_matching,
    eta_general,
    eta_parity,
    liu_lu_check,
    q_count,
    validate_factor,
)
from .formats import FormatError, parse_edge_list, parse_graph6, write_edge_list, write_graph6
from .graphs import (
    DEFAULT_VERTEX_CAP,
    Graph,
    GraphError,
    GraphSizeError,
    clique_join,
    complement,
    complete,
    complete_bipartite,
    components,
    cycle,
    degree,
    degree_in_deleted,
    degree_sequence,
    disjoint_union,
    e_between,
    e_within,
    empty,
    from_edges,
    from_rows,
    h_extremal,
    is_connected,
    join,
    l_graph,
    min_degree,
    path,
    petersen,
    random_graph,
    recognize_h_extremal,
    star,
)
from .harness import (
    LemmaReport,
    ScanReport,
    enumerate_cosparse,
    verify_lemma_no_factor,
    verify_main_theorem,
    verify_spectral_lemmas,
    verify_zhw,
)
from .matching import max_matching
from .spectral import (
    CompareResult,
    Order,
    QuotientMatrix,
    SpectralEnclosure,
    Spectrum,
    compare_radius,
    full_spectrum,
    hong_bound,
    kopr_threshold,
    lemma6_poly_values,
    quotient_lambda1,
    quotient_matrix,
    spectral_radius,
    theorem_n_bound,
)

__version__ = "0.1.0"
