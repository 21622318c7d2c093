"""One-way parameter sweeps and tornado-diagram data."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from dataclasses import dataclass
from typing import Iterable, Literal, Optional, Sequence

from fuzzyeoq.errors import InvalidParamsError, ModelDomainError
from fuzzyeoq.model import ModelParams, resolve_param
from fuzzyeoq.optimizer import optimal_q

Metric = Literal["q_star", "profit"]

SWEEPABLE = ("x", "h_w", "h_s", "A", "d", "s", "c", "w", "E(r_s)", "E(r_w)")
_SWEEPABLE_FIELDS = {resolve_param(n): n for n in SWEEPABLE}

# Low / high experimental values of the reference study, keyed by short name.
REFERENCE_RANGES: list[tuple[str, float, float]] = [
    ("x", 87600.0, 262800.0),
    ("h_w", 2.5, 10.0),
    ("h_s", 1.0, 4.0),
    ("A", 50.0, 200.0),
    ("d", 0.25, 1.0),
    ("s", 25.0, 100.0),
    ("c", 12.5, 50.0),
    ("w", 10.0, 40.0),
    ("E(r_s)", 0.01, 0.03),
    ("E(r_w)", 0.025, 0.075),
]

SWEEP_COLUMNS = ["parameter", "value", "q_star", "profit", "error"]
TORNADO_COLUMNS = ["parameter", "low_value", "high_value", "metric_at_low", "metric_at_high", "span"]


class SensitivityError(ValueError):
    pass


@dataclass(frozen=True)
class SweepRow:
    parameter: str
    value: float
    q_star: Optional[float]
    profit: Optional[float]
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class TornadoBar:
    parameter: str
    low_value: float
    high_value: float
    metric_at_low: float
    metric_at_high: float
    span: float


def canonical_name(parameter: str) -> str:
    """Short display name for any accepted spelling of a sweepable parameter."""
    try:
        field_name = resolve_param(parameter)
    except KeyError:
        field_name = None
    if field_name not in _SWEEPABLE_FIELDS:
        raise SensitivityError(
            f"unknown sweep parameter {parameter!r}; expected one of {', '.join(SWEEPABLE)}"
        )
    return _SWEEPABLE_FIELDS[field_name]


def _evaluate(base: ModelParams, name: str, value: float) -> SweepRow:
    try:
        result = optimal_q(base.replace(**{name: value}))
    except (InvalidParamsError, ModelDomainError) as exc:
        return SweepRow(name, value, None, None, str(exc))
    return SweepRow(name, value, result.q_star, result.profit)


def one_way_sweep(base: ModelParams, parameter: str, values: Iterable[float]) -> list[SweepRow]:
    """Re-optimise with one parameter changed at a time, in input order.

    Invalid or unbounded settings become rows carrying ``error``; the sweep
    keeps going.
    """
    name = canonical_name(parameter)
    return [_evaluate(base, name, float(v)) for v in values]


def tornado(
    base: ModelParams,
    ranges: Sequence[tuple[str, float, float]],
    metric: Metric = "q_star",
) -> list[TornadoBar]:
    if metric not in ("q_star", "profit"):
        raise SensitivityError(f"metric must be 'q_star' or 'profit', got {metric!r}")
    if not ranges:
        raise SensitivityError("tornado needs at least one parameter range")
    bars = []
    for parameter, low, high in ranges:
        lo_row, hi_row = one_way_sweep(base, parameter, [low, high])
        for row in (lo_row, hi_row):
            if not row.ok:
                raise SensitivityError(f"{row.parameter}={row.value!r}: {row.error}")
        at_low, at_high = getattr(lo_row, metric), getattr(hi_row, metric)
        bars.append(TornadoBar(lo_row.parameter, float(low), float(high),
                               at_low, at_high, abs(at_high - at_low)))
    bars.sort(key=lambda b: (-b.span, b.parameter))
    return bars


def _rows_as_dicts(rows) -> list[dict]:
    return [dataclasses.asdict(r) for r in rows]


def to_csv(rows, columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n",
                            extrasaction="ignore")
    writer.writeheader()
    for row in _rows_as_dicts(rows):
        writer.writerow({k: ("" if v is None else repr(v) if isinstance(v, float) else v)
                         for k, v in row.items()})
    return buf.getvalue()


def sweep_to_csv(rows: Sequence[SweepRow]) -> str:
    return to_csv(rows, SWEEP_COLUMNS)


def tornado_to_csv(bars: Sequence[TornadoBar]) -> str:
    return to_csv(bars, TORNADO_COLUMNS)


def to_json(rows) -> str:
    return json.dumps(_rows_as_dicts(rows), indent=2)
