"""Monte Carlo renewal-reward simulation of the inventory cycle.

Each cycle draws realised scrap and rework fractions, books the per-cycle
profit and length, and audits whether screening keeps up with demand. The
long-run profit rate is estimated as total profit over total time.

Cycles are generated in fixed-size blocks. Block ``i`` draws from its own
stream, ``SeedSequence(seed, spawn_key=(i,))``, so the result does not
depend on how many workers process the blocks.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from fuzzyeoq.fuzzy import gmir
from fuzzyeoq.model import ModelParams

BLOCK_SIZE = 1 << 16
Z_95 = 1.959963984540054
MAX_REDRAW_ROUNDS = 1000


@dataclass(frozen=True)
class PointMass:
    value: float
    kind: str = field(default="point", init=False)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return np.full(n, self.value)

    @property
    def support(self) -> tuple[float, float]:
        return self.value, self.value

    def moments(self) -> tuple[float, float]:
        """(E[r], E[r^2])"""
        return self.value, self.value ** 2


@dataclass(frozen=True)
class Uniform:
    low: float
    high: float
    kind: str = field(default="uniform", init=False)

    def __post_init__(self):
        if not self.low <= self.high:
            raise ValueError(f"uniform needs low <= high, got ({self.low}, {self.high})")

    def sample(self, rng, n):
        return rng.uniform(self.low, self.high, n)

    @property
    def support(self):
        return self.low, self.high

    def moments(self):
        lo, hi = self.low, self.high
        return (lo + hi) / 2.0, (lo * lo + lo * hi + hi * hi) / 3.0


@dataclass(frozen=True)
class ScaledBeta:
    """``high * Beta(a, b)``."""

    a: float
    b: float
    high: float
    kind: str = field(default="beta", init=False)

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0 and self.high > 0):
            raise ValueError("beta needs a, b, high > 0")

    def sample(self, rng, n):
        return self.high * rng.beta(self.a, self.b, n)

    @property
    def support(self):
        return 0.0, self.high

    def moments(self):
        a, b, hi = self.a, self.b, self.high
        mean = a / (a + b)
        second = a * (a + 1) / ((a + b) * (a + b + 1))
        return hi * mean, hi * hi * second


Distribution = Union[PointMass, Uniform, ScaledBeta]


def distribution_from_dict(spec: dict) -> Distribution:
    spec = dict(spec)
    kind = spec.pop("kind", None)
    if kind == "point":
        return PointMass(float(spec["value"]))
    if kind == "uniform":
        return Uniform(float(spec["low"]), float(spec["high"]))
    if kind == "beta":
        return ScaledBeta(float(spec["a"]), float(spec["b"]), float(spec["high"]))
    raise ValueError(f"unknown distribution kind {kind!r}; expected point, uniform or beta")


def distribution_to_dict(dist: Distribution) -> dict:
    return dataclasses.asdict(dist)


@dataclass(frozen=True)
class SimulationConfig:
    params: ModelParams
    q: float
    scrap_dist: Optional[Distribution] = None
    rework_dist: Optional[Distribution] = None
    n_cycles: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if self.scrap_dist is None:
            object.__setattr__(self, "scrap_dist", Uniform(0.0, 2.0 * self.params.e_scrap))
        if self.rework_dist is None:
            object.__setattr__(self, "rework_dist", Uniform(0.0, 2.0 * self.params.e_rework))
        if not self.q > 0:
            raise ValueError(f"q must be positive, got {self.q!r}")
        if not (isinstance(self.n_cycles, int) and self.n_cycles > 0):
            raise ValueError(f"n_cycles must be a positive integer, got {self.n_cycles!r}")
        for name in ("scrap_dist", "rework_dist"):
            lo, hi = getattr(self, name).support
            if lo < 0 or hi >= 1:
                raise ValueError(f"{name} support [{lo}, {hi}] must lie inside [0, 1)")
        if self.scrap_dist.support[0] + self.rework_dist.support[0] >= 1:
            raise ValueError("r_s + r_w >= 1 on the whole joint support")


@dataclass(frozen=True)
class SimulationResult:
    mean_profit_rate: float
    ci_halfwidth: float
    shortages_detected: int
    cycles_run: int
    rejected_draws: int = 0

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> SimulationResult:
        return cls(**data)


@dataclass(frozen=True)
class MomentReport:
    e_scrap: float
    e_rework: float
    e_one_minus_scrap_sq: float
    dev_e_scrap: float
    dev_e_rework: float
    dev_e_one_minus_scrap_sq: float

    def flagged(self, tol: float = 1e-9) -> list[str]:
        return [name for name in ("e_scrap", "e_rework", "e_one_minus_scrap_sq")
                if getattr(self, "dev_" + name) > tol]

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def verify_moments(config: SimulationConfig) -> MomentReport:
    """Analytic moments of the configured draws versus the model's expectations."""
    p = config.params
    ms, ms2 = config.scrap_dist.moments()
    mw, _ = config.rework_dist.moments()
    e_sq = 1.0 - 2.0 * ms + ms2
    return MomentReport(
        e_scrap=ms,
        e_rework=mw,
        e_one_minus_scrap_sq=e_sq,
        dev_e_scrap=abs(ms - p.e_scrap),
        dev_e_rework=abs(mw - p.e_rework),
        dev_e_one_minus_scrap_sq=abs(e_sq - p.e_one_minus_scrap_sq),
    )


def params_matching(config: SimulationConfig) -> ModelParams:
    """Model parameters with expectations replaced by the draws' exact moments."""
    m = verify_moments(config)
    return dataclasses.replace(config.params, e_scrap=m.e_scrap, e_rework=m.e_rework,
                               e_one_minus_scrap_sq=m.e_one_minus_scrap_sq)


@dataclass
class _BlockStats:
    n: int
    sum_profit: float
    sum_length: float
    mean_p: float
    mean_t: float
    m2_p: float
    m2_t: float
    c_pt: float
    shortages: int
    rejected: int


def _draw(config: SimulationConfig, rng: np.random.Generator, n: int):
    rs = config.scrap_dist.sample(rng, n)
    rw = config.rework_dist.sample(rng, n)
    bad = np.flatnonzero(rs + rw >= 1.0)
    rejected = 0
    for _ in range(MAX_REDRAW_ROUNDS):
        if bad.size == 0:
            break
        rejected += bad.size
        rs[bad] = config.scrap_dist.sample(rng, bad.size)
        rw[bad] = config.rework_dist.sample(rng, bad.size)
        bad = bad[rs[bad] + rw[bad] >= 1.0]
    else:
        raise RuntimeError("rejection sampling for r_s + r_w < 1 did not terminate")
    return rs, rw, rejected


def _run_block(config: SimulationConfig, index: int, n: int) -> _BlockStats:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(config.seed, spawn_key=(index,))))
    rs, rw, rejected = _draw(config, rng, n)
    p = config.params
    q, x = config.q, p.screening_rate
    dem = gmir(p.demand)
    hw, hs = p.holding_rework, p.holding_scrap
    good = q * (1.0 - rs)
    profit = (p.selling_price * good + p.salvage_value * q * rs
              - p.ordering_cost - p.inspection_cost * q
              - p.purchase_cost * q * (1.0 - rw * q / dem)
              - (hs + hw) * q * q * rs / (2.0 * x)
              - hw * q * q * (1.0 - rs) / x
              - hw * good * good / (2.0 * dem))
    length = good / dem
    shortages = int(np.count_nonzero(x * (1.0 - rs - rw) < dem))
    mp, mt = profit.mean(), length.mean()
    dp, dt = profit - mp, length - mt
    return _BlockStats(n, float(profit.sum()), float(length.sum()), float(mp), float(mt),
                       float(dp @ dp), float(dt @ dt), float(dp @ dt), shortages, rejected)


def _merge(a: _BlockStats, b: _BlockStats) -> _BlockStats:
    # pairwise co-moment update (Chan et al.)
    n = a.n + b.n
    dp, dt = b.mean_p - a.mean_p, b.mean_t - a.mean_t
    f = a.n * b.n / n
    return _BlockStats(
        n, a.sum_profit + b.sum_profit, a.sum_length + b.sum_length,
        a.mean_p + dp * b.n / n, a.mean_t + dt * b.n / n,
        a.m2_p + b.m2_p + dp * dp * f, a.m2_t + b.m2_t + dt * dt * f,
        a.c_pt + b.c_pt + dp * dt * f,
        a.shortages + b.shortages, a.rejected + b.rejected,
    )


def simulate(config: SimulationConfig, workers: int = 1) -> SimulationResult:
    """Run ``config.n_cycles`` cycles and estimate the long-run profit rate.

    ``ci_halfwidth`` is a 95% normal-approximation half-width for the ratio
    estimator (delta method on ``profit - rate * length``).
    """
    sizes = [min(BLOCK_SIZE, config.n_cycles - lo) for lo in range(0, config.n_cycles, BLOCK_SIZE)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            blocks = list(pool.map(lambda a: _run_block(config, *a), enumerate(sizes)))
    else:
        blocks = [_run_block(config, i, n) for i, n in enumerate(sizes)]
    total = blocks[0]
    for b in blocks[1:]:
        total = _merge(total, b)

    rate = total.sum_profit / total.sum_length
    n = total.n
    if n > 1:
        var_z = (total.m2_p - 2.0 * rate * total.c_pt + rate * rate * total.m2_t) / (n - 1)
        half = Z_95 * math.sqrt(max(var_z, 0.0) / n) / total.mean_t
    else:
        half = math.inf
    return SimulationResult(
        mean_profit_rate=rate,
        ci_halfwidth=half,
        shortages_detected=total.shortages,
        cycles_run=n,
        rejected_draws=total.rejected,
    )
