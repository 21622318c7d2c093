"""Fuzzy EOQ model for imperfect-quality lots with rework, order overlapping
and a purchase discount.

Demand is a triangular fuzzy number, defuzzified with the graded mean
integration representation.
"""

from fuzzyeoq.errors import (
    FuzzyOrderingError,
    InvalidParamsError,
    ModelDomainError,
    ProfitOrderingError,
    UnboundedObjectiveError,
)
from fuzzyeoq.fuzzy import (
    TriangularFuzzyNumber,
    fp_binary,
    fp_scale,
    gmir,
    membership,
    tfn_new,
)
from fuzzyeoq.model import (
    CostBreakdown,
    CycleGeometry,
    FeasibilityReport,
    ModelParams,
    ProfitTriple,
    check_feasibility,
    cost_breakdown,
    cycle_geometry,
    defuzzified_profit,
    profit_rate_crisp,
    profit_triple,
    uwx,
)
from fuzzyeoq.optimizer import (
    ConcavityCheck,
    PolicyResult,
    concavity_check,
    grid_search_oracle,
    optimal_q,
    optimal_q_classic,
)

__version__ = "0.1.0"

__all__ = [
    "ConcavityCheck",
    "CostBreakdown",
    "CycleGeometry",
    "FeasibilityReport",
    "FuzzyOrderingError",
    "InvalidParamsError",
    "ModelDomainError",
    "ModelParams",
    "PolicyResult",
    "ProfitOrderingError",
    "ProfitTriple",
    "TriangularFuzzyNumber",
    "UnboundedObjectiveError",
    "check_feasibility",
    "concavity_check",
    "cost_breakdown",
    "cycle_geometry",
    "defuzzified_profit",
    "fp_binary",
    "fp_scale",
    "gmir",
    "grid_search_oracle",
    "membership",
    "optimal_q",
    "optimal_q_classic",
    "profit_rate_crisp",
    "profit_triple",
    "tfn_new",
    "uwx",
]
