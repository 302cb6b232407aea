"""Exact squarefree powers and squarefree symbolic powers of edge ideals,
their Castelnuovo-Mumford regularity, and admissible lower-bound invariants.
"""

from .admissible import (
    AdmissibleCertificate,
    adm_number,
    ind_number,
    lower_bound_check,
    validate_certificate,
)
from .errors import BudgetExceeded, InputClassError, ParseError, SqfpowError, UniverseMismatch
from .homology import QQ, FieldChoice
from .hypergraph import (
    Hypergraph,
    complete_graph,
    cover_number,
    cycle_graph,
    disjoint_edges,
    disjoint_union,
    graph,
    independence_number,
    induced,
    induced_matching_number,
    matching_number,
    minimal_vertex_covers,
    neighborhoods,
    path_graph,
)
from .ideals import GenIdeal, SqfIdeal
from .io import from_graph6, parse_graph, to_graph6
from .powers import (
    Filtration,
    PowerKind,
    check_del_condition,
    check_splf_axioms,
    is_principal_full_support,
    mixed_sum,
    nu_F,
    power,
    sqf_power,
    sqf_symbolic_power,
)
from .regularity import (
    BettiTable,
    RegularityCache,
    betti_table,
    betti_table_koszul,
    regularity,
    verify_mixed_sum_regularity,
)

__version__ = "0.1.0"
