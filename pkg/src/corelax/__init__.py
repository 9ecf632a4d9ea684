"""Weighted constraint network solving by unsatisfiable-core relaxation.

Soft table constraints are sliced into cost layers; selecting one layer per
constraint induces a hard network, and exploring those selections in cost
order yields the optimum. Cores of failed networks focus the exploration
(complete mode) or drive a single greedy relaxation path (upper bounds).
"""

from .hardcn import (
    CN,
    Budget,
    HardConstraint,
    ResourceLimit,
    propagate_gac,
    solve_cn,
    to_cn_eq,
    to_cn_leq,
)
from .lattice import BottomForbidden, Front, FrontQueue, bottom_front, front_cost, successors
from .model import (
    WCN,
    BadWeight,
    DuplicateTuple,
    EmptyRelation,
    Layer,
    ModelError,
    SoftConstraint,
    Variable,
    bounded_add,
    build_layers,
    evaluate_cost,
    lift_hard,
    lift_violable,
)
from .muc import NotUnsat, extract_muc, restrict_wcn
from .search import (
    Outcome,
    RelaxExhausted,
    SearchStats,
    SearchTrace,
    Status,
    TooLarge,
    brute_force_optimum,
    complete_search,
    complete_search_no_muc,
    incomplete_search,
    relax,
    solve_mode,
)
from .wcsp import (
    ArityMismatch,
    BadHeader,
    BadParams,
    ValueOutOfDomain,
    WcspError,
    WcspSyntaxError,
    emit_result,
    parse_wcsp,
    random_instance,
    serialize_wcsp,
)

__version__ = "0.1.0"
