"""Per-cycle cost accounting and profit-rate functions.

Random fractions r_s (scrap) and r_w (reworkable) enter through their
expectations. Every function of ``q`` also accepts a numpy array of lot sizes
so the grid-search oracle can evaluate the objective in bulk.
"""

from __future__ import annotations

import dataclasses
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from fuzzyeoq.errors import InvalidParamsError, ModelDomainError, ProfitOrderingError
from fuzzyeoq.fuzzy import TriangularFuzzyNumber, gmir

# Short names used by configs, sweeps and tables -> ModelParams field.
PARAM_ALIASES = {
    "x": "screening_rate",
    "A": "ordering_cost",
    "s": "selling_price",
    "w": "salvage_value",
    "d": "inspection_cost",
    "c": "purchase_cost",
    "h_w": "holding_rework",
    "h_s": "holding_scrap",
    "e_r_s": "e_scrap",
    "E(r_s)": "e_scrap",
    "e_r_w": "e_rework",
    "E(r_w)": "e_rework",
    "e_one_minus_rs_sq": "e_one_minus_scrap_sq",
    "E[(1-r_s)^2]": "e_one_minus_scrap_sq",
}

JENSEN_TOL = 1e-12


def resolve_param(name: str) -> str:
    """Map a short or long parameter name onto a ModelParams field name."""
    if name in PARAM_ALIASES:
        return PARAM_ALIASES[name]
    if name in _FIELD_NAMES:
        return name
    raise KeyError(f"unknown parameter {name!r}")


@dataclass(frozen=True)
class ModelParams:
    demand: TriangularFuzzyNumber
    screening_rate: float
    ordering_cost: float
    selling_price: float
    salvage_value: float
    inspection_cost: float
    purchase_cost: float
    holding_rework: float
    holding_scrap: float
    e_scrap: float
    e_rework: float
    e_one_minus_scrap_sq: float

    def __post_init__(self):
        if not isinstance(self.demand, TriangularFuzzyNumber):
            object.__setattr__(self, "demand", _coerce_demand(self.demand))
        if self.demand.low <= 0:
            raise InvalidParamsError("demand", f"must be positive, got {self.demand.to_list()}")
        for name in ("screening_rate", "selling_price", "purchase_cost",
                     "holding_rework", "holding_scrap"):
            if not getattr(self, name) > 0:
                raise InvalidParamsError(name, f"must be positive, got {getattr(self, name)!r}")
        # ordering_cost = 0 is allowed: the objective is then linear in q
        for name in ("ordering_cost", "salvage_value", "inspection_cost"):
            if not getattr(self, name) >= 0:
                raise InvalidParamsError(name, f"must be nonnegative, got {getattr(self, name)!r}")
        for name in ("e_scrap", "e_rework"):
            value = getattr(self, name)
            if not 0 <= value < 1:
                raise InvalidParamsError(name, f"must lie in [0, 1), got {value!r}")
        if not self.e_scrap + self.e_rework < 1:
            raise InvalidParamsError(
                "e_rework", f"e_scrap + e_rework must be < 1, got {self.e_scrap + self.e_rework!r}"
            )
        if not 0 < self.e_one_minus_scrap_sq <= 1:
            raise InvalidParamsError(
                "e_one_minus_scrap_sq", f"must lie in (0, 1], got {self.e_one_minus_scrap_sq!r}"
            )
        if not self.holding_rework > self.holding_scrap:
            raise InvalidParamsError(
                "holding_rework",
                f"must exceed holding_scrap ({self.holding_rework!r} <= {self.holding_scrap!r})",
            )

    @property
    def consistency_warnings(self) -> list[str]:
        """Soft checks that do not block computation."""
        out = []
        if self.e_one_minus_scrap_sq < (1 - self.e_scrap) ** 2 - JENSEN_TOL:
            out.append(
                f"e_one_minus_scrap_sq={self.e_one_minus_scrap_sq!r} is below "
                f"(1 - e_scrap)^2={(1 - self.e_scrap) ** 2!r}; no distribution has these moments"
            )
        return out

    def replace(self, **changes) -> ModelParams:
        """Copy with fields changed; short names such as ``h_w`` are accepted."""
        return dataclasses.replace(self, **{resolve_param(k): v for k, v in changes.items()})

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        out["demand"] = self.demand.to_list()
        return out

    @classmethod
    def from_dict(cls, data: dict) -> ModelParams:
        return cls(**{resolve_param(k): v for k, v in data.items()})


_FIELD_NAMES = {f.name for f in dataclasses.fields(ModelParams)}


def _coerce_demand(value) -> TriangularFuzzyNumber:
    if isinstance(value, (int, float)):
        return TriangularFuzzyNumber.crisp(float(value))
    try:
        return TriangularFuzzyNumber.from_list(list(value))
    except TypeError:
        raise InvalidParamsError("demand", f"expected a number or 3 values, got {value!r}") from None


def base_params(**changes) -> ModelParams:
    """The reference crisp scenario (D = 50000) used in examples and tests."""
    p = ModelParams(
        demand=TriangularFuzzyNumber.crisp(50000.0),
        screening_rate=175200.0,
        ordering_cost=100.0,
        selling_price=50.0,
        salvage_value=20.0,
        inspection_cost=0.5,
        purchase_cost=25.0,
        holding_rework=5.0,
        holding_scrap=2.0,
        e_scrap=0.02,
        e_rework=0.05,
        e_one_minus_scrap_sq=0.9605,
    )
    return p.replace(**changes) if changes else p


@dataclass(frozen=True)
class FeasibilityReport:
    """Screening-rate check ``x >= D / (1 - E(r_s) - E(r_w))``.

    Evaluated at the defuzzified demand and, conservatively, at the upper
    support point of the demand triple.
    """

    screening_rate: float
    threshold_gmir: float
    threshold_upper: float
    feasible_gmir: bool
    feasible_upper: bool

    @property
    def feasible(self) -> bool:
        return self.feasible_gmir and self.feasible_upper

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class CycleGeometry:
    t1: float
    cycle_length: float
    total_inventory_area: float
    holding_scrap_cost: float
    holding_rework_cost: float


@dataclass(frozen=True)
class CostBreakdown:
    ordering: float
    screening: float
    purchasing: float
    holding: float
    total: float
    revenue: float
    profit: float
    implied_discount_rate: float
    discount_warning: bool = False


@dataclass(frozen=True)
class ProfitTriple:
    a1: float
    b1: float
    c1: float
    u: float = field(default=math.nan, compare=False)
    w: float = field(default=math.nan, compare=False)

    def as_tfn(self) -> TriangularFuzzyNumber:
        return TriangularFuzzyNumber(self.a1, self.b1, self.c1)

    def to_list(self) -> list[float]:
        return [self.a1, self.b1, self.c1]


def check_feasibility(p: ModelParams) -> FeasibilityReport:
    good = 1.0 - p.e_scrap - p.e_rework
    t_mid = gmir(p.demand) / good
    t_up = p.demand.high / good
    return FeasibilityReport(
        screening_rate=p.screening_rate,
        threshold_gmir=t_mid,
        threshold_upper=t_up,
        feasible_gmir=p.screening_rate >= t_mid,
        feasible_upper=p.screening_rate >= t_up,
    )


def _check_positive(name: str, value) -> None:
    if np.any(np.asarray(value) <= 0):
        raise ModelDomainError(f"{name} must be positive, got {value!r}")


def cycle_geometry(p: ModelParams, q: float, demand_value: float) -> CycleGeometry:
    """Screening time, cycle length and holding-cost areas for one cycle.

    The stock-after-screening triangle uses E[(1-r_s)^2] for the expected
    squared good quantity, which keeps TP / T equal to the profit rate.
    """
    _check_positive("q", q)
    _check_positive("demand_value", demand_value)
    x, rs = p.screening_rate, p.e_scrap
    t1 = q / x
    cycle_length = (1.0 - rs) * q / demand_value
    scrap_area = q * q * rs / (2.0 * x)
    area = (scrap_area + q * q * (1.0 - rs) / x
            + q * q * p.e_one_minus_scrap_sq / (2.0 * demand_value))
    return CycleGeometry(
        t1=t1,
        cycle_length=cycle_length,
        total_inventory_area=area,
        holding_scrap_cost=p.holding_scrap * scrap_area,
        holding_rework_cost=p.holding_rework * area,
    )


def cost_breakdown(p: ModelParams, q: float, demand_value: float) -> CostBreakdown:
    _check_positive("q", q)
    _check_positive("demand_value", demand_value)
    x, rs, rw = p.screening_rate, p.e_scrap, p.e_rework
    alpha = rw * q / demand_value
    ordering = p.ordering_cost
    screening = p.inspection_cost * q
    purchasing = p.purchase_cost * q * (1.0 - alpha)
    holding = ((p.holding_scrap + p.holding_rework) * q * q * rs / (2.0 * x)
               + p.holding_rework * q * q * (1.0 - rs) / x
               + p.holding_rework * q * q * p.e_one_minus_scrap_sq / (2.0 * demand_value))
    total = ordering + screening + purchasing + holding
    revenue = p.selling_price * q * (1.0 - rs) + p.salvage_value * q * rs
    flag = bool(np.any(np.asarray(alpha) >= 1.0))
    if flag:
        warnings.warn(f"implied discount rate {alpha!r} >= 1 is outside the model's regime",
                      RuntimeWarning, stacklevel=2)
    return CostBreakdown(
        ordering=ordering,
        screening=screening,
        purchasing=purchasing,
        holding=holding,
        total=total,
        revenue=revenue,
        profit=revenue - total,
        implied_discount_rate=alpha,
        discount_warning=flag,
    )


def uwx(p: ModelParams, q: float) -> tuple[float, float, float]:
    """Coefficients (u, W, X) with profit rate = D (u - W) + c E(r_w) q / (1 - E(r_s)) - q X."""
    _check_positive("q", q)
    rs = p.e_scrap
    hw, hs = p.holding_rework, p.holding_scrap
    u = (p.selling_price * (1.0 - rs) + p.salvage_value * rs - p.purchase_cost
         - p.inspection_cost - p.ordering_cost / q) / (1.0 - rs)
    w = q * (2.0 * hw - hw * rs + hs * rs) / (2.0 * p.screening_rate * (1.0 - rs))
    x = hw * p.e_one_minus_scrap_sq / (2.0 * (1.0 - rs))
    return u, w, x


def _q_terms(p: ModelParams, q):
    # demand-independent part of the profit rate
    _, _, x = uwx(p, q)
    return p.purchase_cost * p.e_rework * q / (1.0 - p.e_scrap) - q * x


def profit_rate_crisp(p: ModelParams, q: float, demand_value: float) -> float:
    """Expected profit per unit time at a crisp demand value."""
    _check_positive("demand_value", demand_value)
    u, w, _ = uwx(p, q)
    return demand_value * (u - w) + _q_terms(p, q)


def profit_triple(p: ModelParams, q: float) -> ProfitTriple:
    u, w, _ = uwx(p, q)
    if u < w:
        raise ProfitOrderingError(u, w)
    rest = _q_terms(p, q)
    d = p.demand
    a1, b1, c1 = (v * (u - w) + rest for v in (d.low, d.peak, d.high))
    return ProfitTriple(a1, b1, c1, u=u, w=w)


def defuzzified_profit(p: ModelParams, q: float) -> float:
    """GMIR of the fuzzy profit rate, computed in closed form.

    Does not require u >= W, unlike :func:`profit_triple`.
    """
    u, w, _ = uwx(p, q)
    return gmir(p.demand) * (u - w) + _q_terms(p, q)
