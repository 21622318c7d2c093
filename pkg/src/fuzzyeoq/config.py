"""YAML scenario files.

Model parameters sit at the top level under their short names; ``demand``
is a scalar or a ``[low, peak, high]`` list. Optional sections:
``simulation``, ``sweep`` (a list of ``{parameter, values}``) and
``tornado`` (``metric`` plus ``ranges``). Errors name the key and its line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import yaml

from fuzzyeoq.errors import FuzzyOrderingError, InvalidParamsError
from fuzzyeoq.model import ModelParams
from fuzzyeoq.sensitivity import SensitivityError, canonical_name
from fuzzyeoq.simulation import Distribution, distribution_from_dict

PARAM_KEYS = {
    "demand": "demand",
    "A": "ordering_cost",
    "x": "screening_rate",
    "h_w": "holding_rework",
    "h_s": "holding_scrap",
    "s": "selling_price",
    "d": "inspection_cost",
    "w": "salvage_value",
    "c": "purchase_cost",
    "e_r_s": "e_scrap",
    "e_r_w": "e_rework",
    "e_one_minus_rs_sq": "e_one_minus_scrap_sq",
}
_FIELD_TO_KEY = {v: k for k, v in PARAM_KEYS.items()}
SECTIONS = ("simulation", "sweep", "tornado")
SIM_KEYS = {"q", "n_cycles", "seed", "workers", "scrap", "rework"}


class ConfigError(ValueError):
    pass


@dataclass
class SimulationSection:
    q: Optional[float] = None
    n_cycles: int = 100_000
    seed: int = 0
    workers: int = 1
    scrap: Optional[Distribution] = None
    rework: Optional[Distribution] = None


@dataclass
class TornadoSection:
    metric: str = "q_star"
    ranges: list[tuple[str, float, float]] = field(default_factory=list)


@dataclass
class ScenarioConfig:
    params: ModelParams
    simulation: Optional[SimulationSection] = None
    sweeps: list[tuple[str, list[float]]] = field(default_factory=list)
    tornado: Optional[TornadoSection] = None


class _Lines:
    """Line numbers of mapping keys in the composed YAML tree."""

    def __init__(self, node):
        self.node = node

    def of(self, *path) -> Optional[int]:
        node = self.node
        line = None
        for key in path:
            if isinstance(node, yaml.MappingNode):
                for k, v in node.value:
                    if k.value == key:
                        line, node = k.start_mark.line + 1, v
                        break
                else:
                    return line
            elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
                node = node.value[key]
                line = node.start_mark.line + 1
            else:
                return line
        return line


def _fail(lines: _Lines, message: str, *path) -> ConfigError:
    line = lines.of(*path)
    where = f"line {line}: " if line else ""
    return ConfigError(f"{where}{message}")


def _number(lines, value, *path) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _fail(lines, f"{path[-1]!s}: expected a number, got {value!r}", *path)
    return float(value)


def load_config(path) -> ScenarioConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from None
    return parse_config(text)


def parse_config(text: str) -> ScenarioConfig:
    try:
        data = yaml.safe_load(text)
        lines = _Lines(yaml.compose(text))
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a mapping of parameter names to values")

    unknown = sorted(set(data) - set(PARAM_KEYS) - set(SECTIONS))
    if unknown:
        raise _fail(lines, f"unknown key {unknown[0]!r}", unknown[0])
    missing = [k for k in PARAM_KEYS if k not in data]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}")

    values: dict[str, Any] = {}
    for key, field_name in PARAM_KEYS.items():
        raw = data[key]
        if key == "demand":
            if isinstance(raw, list):
                values[field_name] = [_number(lines, v, key, i) for i, v in enumerate(raw)]
            else:
                values[field_name] = _number(lines, raw, key)
        else:
            values[field_name] = _number(lines, raw, key)
    try:
        params = ModelParams(**values)
    except InvalidParamsError as exc:
        key = _FIELD_TO_KEY.get(exc.field, exc.field)
        raise _fail(lines, f"{key}: {str(exc).split(': ', 1)[1]}", key) from None
    except FuzzyOrderingError as exc:
        raise _fail(lines, f"demand: {exc}", "demand") from None

    return ScenarioConfig(
        params=params,
        simulation=_simulation(lines, data["simulation"]) if "simulation" in data else None,
        sweeps=_sweeps(lines, data["sweep"]) if "sweep" in data else [],
        tornado=_tornado(lines, data["tornado"]) if "tornado" in data else None,
    )


def _simulation(lines, raw) -> SimulationSection:
    if raw is None:
        return SimulationSection()
    if not isinstance(raw, dict):
        raise _fail(lines, "simulation: expected a mapping", "simulation")
    extra = sorted(set(raw) - SIM_KEYS)
    if extra:
        raise _fail(lines, f"simulation: unknown key {extra[0]!r}", "simulation", extra[0])
    sec = SimulationSection()
    if raw.get("q") is not None:
        sec.q = _number(lines, raw["q"], "simulation", "q")
    for key in ("n_cycles", "seed", "workers"):
        if key in raw:
            v = raw[key]
            if isinstance(v, bool) or not isinstance(v, int):
                raise _fail(lines, f"simulation.{key}: expected an integer, got {v!r}", "simulation", key)
            setattr(sec, key, v)
    for key in ("scrap", "rework"):
        if key in raw:
            try:
                setattr(sec, key, distribution_from_dict(raw[key]))
            except (KeyError, TypeError, ValueError) as exc:
                raise _fail(lines, f"simulation.{key}: {exc}", "simulation", key) from None
    return sec


def _sweeps(lines, raw) -> list[tuple[str, list[float]]]:
    if isinstance(raw, dict):
        raw = [raw]
    if not isinstance(raw, list):
        raise _fail(lines, "sweep: expected a list of {parameter, values}", "sweep")
    out = []
    for i, item in enumerate(raw):
        if not isinstance(item, dict) or "parameter" not in item or "values" not in item:
            raise _fail(lines, f"sweep[{i}]: needs 'parameter' and 'values'", "sweep", i)
        try:
            name = canonical_name(str(item["parameter"]))
        except SensitivityError as exc:
            raise _fail(lines, f"sweep[{i}]: {exc}", "sweep", i) from None
        vals = item["values"]
        if not isinstance(vals, list):
            raise _fail(lines, f"sweep[{i}].values: expected a list", "sweep", i)
        out.append((name, [_number(lines, v, "sweep", i) for v in vals]))
    return out


def _tornado(lines, raw) -> TornadoSection:
    if not isinstance(raw, dict):
        raise _fail(lines, "tornado: expected a mapping with 'ranges'", "tornado")
    sec = TornadoSection(metric=str(raw.get("metric", "q_star")))
    if sec.metric not in ("q_star", "profit"):
        raise _fail(lines, f"tornado.metric: expected q_star or profit, got {sec.metric!r}",
                    "tornado", "metric")
    for i, item in enumerate(raw.get("ranges") or []):
        if isinstance(item, dict):
            item = [item.get("parameter"), item.get("low"), item.get("high")]
        if not isinstance(item, list) or len(item) != 3:
            raise _fail(lines, f"tornado.ranges[{i}]: expected [parameter, low, high]",
                        "tornado", "ranges", i)
        try:
            name = canonical_name(str(item[0]))
        except SensitivityError as exc:
            raise _fail(lines, f"tornado.ranges[{i}]: {exc}", "tornado", "ranges", i) from None
        low = _number(lines, item[1], "tornado", "ranges", i)
        high = _number(lines, item[2], "tornado", "ranges", i)
        sec.ranges.append((name, low, high))
    return sec
