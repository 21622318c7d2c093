"""Closed-form optimal lot size plus the numeric checks used to trust it."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from fuzzyeoq.errors import ModelDomainError, ProfitOrderingError, UnboundedObjectiveError
from fuzzyeoq.fuzzy import gmir
from fuzzyeoq.model import (
    FeasibilityReport,
    ModelParams,
    ProfitTriple,
    check_feasibility,
    defuzzified_profit,
    profit_triple,
)

FD_REL_STEP = 1e-4
CONCAVITY_REL_TOL = 1e-3
ORACLE_CHUNK = 1 << 20


@dataclass(frozen=True)
class PolicyResult:
    q_star: float
    profit: float
    profit_triple: Optional[ProfitTriple]
    denominator: float
    feasibility: FeasibilityReport
    concave: bool
    discount_rate: float
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "q_star": self.q_star,
            "profit": self.profit,
            "profit_triple": self.profit_triple.to_list() if self.profit_triple else None,
            "denominator": self.denominator,
            "feasibility": self.feasibility.to_dict(),
            "concave": self.concave,
            "discount_rate": self.discount_rate,
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_dict(cls, data: dict) -> PolicyResult:
        triple = data.get("profit_triple")
        return cls(
            q_star=data["q_star"],
            profit=data["profit"],
            profit_triple=ProfitTriple(*triple) if triple is not None else None,
            denominator=data["denominator"],
            feasibility=FeasibilityReport(**data["feasibility"]),
            concave=data["concave"],
            discount_rate=data["discount_rate"],
            warnings=list(data.get("warnings", [])),
        )


class OracleResult(NamedTuple):
    q_best: float
    profit_best: float


@dataclass(frozen=True)
class ConcavityCheck:
    concave: bool
    numeric: float
    analytic: float
    diagnostic: str = ""

    def __bool__(self) -> bool:
        return self.concave


def demand_weight(p: ModelParams) -> float:
    """``low + 4 peak + high`` of the demand triple (six times its GMIR)."""
    d = p.demand
    return d.low + 4.0 * d.peak + d.high


def lot_size_denominator(p: ModelParams) -> float:
    s = demand_weight(p)
    hw, hs, rs = p.holding_rework, p.holding_scrap, p.e_scrap
    return (s * (2.0 * hw - hw * rs + hs * rs) / p.screening_rate
            - 12.0 * p.purchase_cost * p.e_rework
            + 6.0 * hw * p.e_one_minus_scrap_sq)


def optimal_q(p: ModelParams) -> PolicyResult:
    """Maximise the defuzzified profit rate over the lot size.

    Raises :class:`UnboundedObjectiveError` when the denominator is not
    positive. An infeasible screening rate is reported as a warning only.
    """
    den = lot_size_denominator(p)
    if den <= 0:
        raise UnboundedObjectiveError(den)
    if p.ordering_cost <= 0:
        raise ModelDomainError("no interior optimum: ordering cost is zero, objective is linear in Q")
    q = math.sqrt(2.0 * p.ordering_cost * demand_weight(p) / den)

    notes = list(p.consistency_warnings)
    feas = check_feasibility(p)
    if not feas.feasible_upper:
        notes.append(
            f"screening rate {p.screening_rate:g} below {feas.threshold_upper:.6g} "
            "needed at the upper demand; shortages possible during screening"
        )
    try:
        triple = profit_triple(p, q)
    except ProfitOrderingError as exc:
        triple = None
        notes.append(str(exc))
    alpha = p.e_rework * q / gmir(p.demand)
    if alpha >= 1:
        notes.append(f"implied discount rate {alpha:.6g} >= 1")
    return PolicyResult(
        q_star=q,
        profit=float(defuzzified_profit(p, q)),
        profit_triple=triple,
        denominator=den,
        feasibility=feas,
        concave=concavity_check(p, q).concave,
        discount_rate=alpha,
        warnings=notes,
    )


def optimal_q_classic(p: ModelParams) -> float:
    """Lot size with instant screening, no rework and no discount."""
    d = gmir(p.demand)
    return math.sqrt(2.0 * p.ordering_cost * d / (p.holding_rework * p.e_one_minus_scrap_sq))


def _best_on_chunk(p: ModelParams, q_min: float, step: float, start: int, stop: int):
    q = q_min + step * np.arange(start, stop, dtype=float)
    values = defuzzified_profit(p, q)
    i = int(np.argmax(values))  # first maximum, i.e. smallest q on ties
    return float(q[i]), float(values[i])


def grid_search_oracle(
    p: ModelParams,
    q_min: Optional[float] = None,
    q_max: Optional[float] = None,
    step: float = 0.01,
    workers: int = 1,
) -> OracleResult:
    """Brute-force maximiser of the defuzzified profit on an even grid.

    Only meant for testing the closed form. The default bracket is
    ``[1, 10 * q_est]`` with ``q_est`` the classic EOQ, so nothing here
    depends on :func:`optimal_q`.
    """
    if q_min is None:
        q_min = 1.0
    if q_max is None:
        q_max = 10.0 * optimal_q_classic(p)
    if not (0 < q_min < q_max) or not step > 0:
        raise ModelDomainError(f"empty grid: q_min={q_min!r}, q_max={q_max!r}, step={step!r}")
    n = int(math.floor((q_max - q_min) / step + 1e-9)) + 1
    bounds = [(lo, min(lo + ORACLE_CHUNK, n)) for lo in range(0, n, ORACLE_CHUNK)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda b: _best_on_chunk(p, q_min, step, *b), bounds))
    else:
        parts = [_best_on_chunk(p, q_min, step, *b) for b in bounds]
    best_q, best_v = parts[0]
    for q, v in parts[1:]:
        if v > best_v:
            best_q, best_v = q, v
    return OracleResult(best_q, best_v)


def concavity_check(p: ModelParams, q: float) -> ConcavityCheck:
    """Second central difference of the objective against its analytic value."""
    if q <= 0:
        raise ModelDomainError(f"q must be positive, got {q!r}")
    h = FD_REL_STEP * q
    f0 = defuzzified_profit(p, q)
    numeric = (defuzzified_profit(p, q + h) - 2.0 * f0 + defuzzified_profit(p, q - h)) / (h * h)
    analytic = -2.0 * p.ordering_cost * gmir(p.demand) / (q ** 3 * (1.0 - p.e_scrap))
    if p.ordering_cost == 0:
        return ConcavityCheck(False, numeric, analytic, "linear objective: no interior optimum")
    if abs(numeric - analytic) > CONCAVITY_REL_TOL * abs(analytic):
        return ConcavityCheck(
            False, numeric, analytic,
            f"finite difference {numeric:.6g} disagrees with analytic {analytic:.6g}",
        )
    return ConcavityCheck(numeric < 0, numeric, analytic)
