"""Recompute the reference study's tables and compare with its printed values.

The printed numbers below are only used for comparison; every CSV cell is
computed from the model.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

from fuzzyeoq.fuzzy import TriangularFuzzyNumber, gmir
from fuzzyeoq.model import ModelParams, base_params
from fuzzyeoq.optimizer import optimal_q
from fuzzyeoq.sensitivity import REFERENCE_RANGES, one_way_sweep, tornado, tornado_to_csv

BASE_DEMAND = 50000.0

# (triple, printed GMIR, printed % difference from the crisp demand)
PRINTED_TABLE1 = [
    ((5000, 34250, 68000), 35000, -30),
    ((12000, 37500, 78000), 40000, -20),
    ((20000, 45000, 70000), 45000, -10),
    ((29000, 52000, 93000), 55000, 10),
    ((42000, 61000, 94000), 60000, 20),
    ((33000, 61500, 111000), 65000, 30),
]

# (Q*, % change Q*, profit, % change profit), same row order as PRINTED_TABLE1
PRINTED_TABLE2 = [
    (1277.64, -8, 848731.233, -30),
    (1322.81, -5, 970116.010, -20),
    (1361.45, -2, 1091503.127, -10),
    (1424.23, 2, 1334281.969, 10),
    (1465.76, 5, 1536600.692, 27),
    (1473.15, 6, 1577064.666, 30),
]

# parameter -> [(value, Q*, profit)]
PRINTED_TABLE4 = {
    "x": [(87600, 1119.7, 1210274.6), (175200, 1394.9, 1212072), (262800, 1544.2, 1212779.7)],
    "h_w": [(2.5, 2746.9, 1215672.9), (5, 1394.9, 1212072), (10, 885, 1207858)],
    "A": [(50, 986.4, 1214215.1), (100, 1394.9, 1212072), (200, 1972, 1209042.5)],
    "d": [(0.25, 1394.9, 1224827.6), (0.5, 1394.9, 1212072), (1, 1394.9, 1186562.3)],
    "h_s": [(1, 1395.7, 212076.6), (2, 1394.9, 1212072), (4, 1393.4, 1212064.4)],
    "s": [(25, 1394.9, -37927.4), (50, 1394.9, 1212072), (100, 1394.9, 3712072.5)],
    "c": [(12.5, 1251.1, 1848986.5), (25, 1394.9, 1212072), (50, 1946.5, -61364.6)],
    "w": [(10, 1394.9, 1201868.5), (20, 1394.9, 1212072), (40, 1394.9, 1232480.7)],
    "E(r_w)": [(0.025, 1251.1, 121123.3), (0.05, 1394.9, 1212072), (0.075, 1603.5, 1213024)],
    "E(r_s)": [(0.01, 1393.8, 1214974.9), (0.02, 1394.9, 1212072), (0.03, 1396.1, 1209110.4)],
}

TOL = {
    "table1_gmir": 0.01,
    "table2_q": 0.05,
    "table2_profit": 0.5,
    "table4_q": 0.1,
    "table4_profit": 1.0,
}


@dataclass(frozen=True)
class Deviation:
    table: str
    row: str
    column: str
    printed: float
    computed: float
    tolerance: float

    def __str__(self) -> str:
        return (f"{self.table} row {self.row} column {self.column}: printed {self.printed}, "
                f"computed {self.computed:.6f} (difference {self.computed - self.printed:+.6f}, "
                f"tolerance {self.tolerance:g})")


def fuzzy_rows() -> list[TriangularFuzzyNumber]:
    return [TriangularFuzzyNumber(*map(float, t)) for t, _, _ in PRINTED_TABLE1]


def pct(new: float, old: float) -> float:
    return 100.0 * (new / old - 1.0)


def table1(base: ModelParams | None = None) -> list[dict]:
    rows = []
    for tfn in fuzzy_rows():
        g = gmir(tfn)
        rows.append({"demand_low": tfn.low, "demand_peak": tfn.peak, "demand_high": tfn.high,
                     "gmir": g, "p_D": pct(g, BASE_DEMAND)})
    return rows


def table2(base: ModelParams | None = None) -> list[dict]:
    base = base or base_params()
    crisp = optimal_q(base)
    rows = []
    for tfn in fuzzy_rows():
        r = optimal_q(base.replace(demand=tfn))
        rows.append({"demand": tfn.to_list(), "q_star": r.q_star, "pct_q": pct(r.q_star, crisp.q_star),
                     "profit": r.profit, "pct_profit": pct(r.profit, crisp.profit)})
    return rows


def table4(base: ModelParams | None = None) -> list[dict]:
    base = base or base_params()
    rows = []
    for name, printed in PRINTED_TABLE4.items():
        for row in one_way_sweep(base, name, [v for v, _, _ in printed]):
            rows.append({"parameter": row.parameter, "value": row.value,
                         "q_star": row.q_star, "profit": row.profit})
    return rows


def deviations(base: ModelParams | None = None) -> list[Deviation]:
    out = []
    for i, (row, (_, g, pd)) in enumerate(zip(table1(base), PRINTED_TABLE1), start=1):
        if abs(row["gmir"] - g) > TOL["table1_gmir"]:
            out.append(Deviation("table1", str(i), "gmir", g, row["gmir"], TOL["table1_gmir"]))
        if round(row["p_D"]) != pd:
            out.append(Deviation("table1", str(i), "p_D", pd, row["p_D"], 0.5))
    for i, (row, printed) in enumerate(zip(table2(base), PRINTED_TABLE2), start=1):
        q, pq, prof, pprof = printed
        if abs(row["q_star"] - q) > TOL["table2_q"]:
            out.append(Deviation("table2", str(i), "q_star", q, row["q_star"], TOL["table2_q"]))
        if round(row["pct_q"]) != pq:
            out.append(Deviation("table2", str(i), "pct_q", pq, row["pct_q"], 0.5))
        if abs(row["profit"] - prof) > TOL["table2_profit"]:
            out.append(Deviation("table2", str(i), "profit", prof, row["profit"], TOL["table2_profit"]))
        if round(row["pct_profit"]) != pprof:
            out.append(Deviation("table2", str(i), "pct_profit", pprof, row["pct_profit"], 0.5))
    computed = iter(table4(base))
    for name, printed in PRINTED_TABLE4.items():
        for value, q, prof in printed:
            row = next(computed)
            label = f"{name}={value:g}"
            if abs(row["q_star"] - q) > TOL["table4_q"]:
                out.append(Deviation("table4", label, "q_star", q, row["q_star"], TOL["table4_q"]))
            if abs(row["profit"] - prof) > TOL["table4_profit"]:
                out.append(Deviation("table4", label, "profit", prof, row["profit"], TOL["table4_profit"]))
    return out


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    path.write_text(buf.getvalue())


def reproduce(output_dir, base: ModelParams | None = None) -> list[Path]:
    """Write table1/2/4, both tornado files and deviations.txt into ``output_dir``."""
    base = base or base_params()
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)

    _write_csv(out / "table1.csv",
               ["demand_low", "demand_peak", "demand_high", "gmir_display", "p_D_display", "gmir", "p_D"],
               [[r["demand_low"], r["demand_peak"], r["demand_high"], f"{r['gmir']:.2f}",
                 f"{r['p_D']:.0f}", r["gmir"], r["p_D"]] for r in table1(base)])
    _write_csv(out / "table2.csv",
               ["demand", "q_star_display", "pct_q_display", "profit_display", "pct_profit_display",
                "q_star", "pct_q", "profit", "pct_profit"],
               [[" ".join(f"{v:g}" for v in r["demand"]), f"{r['q_star']:.2f}", f"{r['pct_q']:.0f}",
                 f"{r['profit']:.3f}", f"{r['pct_profit']:.0f}",
                 r["q_star"], r["pct_q"], r["profit"], r["pct_profit"]] for r in table2(base)])
    _write_csv(out / "table4.csv",
               ["parameter", "value", "q_star_display", "profit_display", "q_star", "profit"],
               [[r["parameter"], r["value"], f"{r['q_star']:.1f}", f"{r['profit']:.1f}",
                 r["q_star"], r["profit"]] for r in table4(base)])
    (out / "tornado_q.csv").write_text(tornado_to_csv(tornado(base, REFERENCE_RANGES, "q_star")))
    (out / "tornado_profit.csv").write_text(tornado_to_csv(tornado(base, REFERENCE_RANGES, "profit")))

    devs = deviations(base)
    lines = [f"# {len(devs)} printed value(s) differ from the computed value beyond tolerance"]
    lines += [str(d) for d in devs]
    (out / "deviations.txt").write_text("\n".join(lines) + "\n")
    return [out / n for n in ("table1.csv", "table2.csv", "table4.csv", "tornado_q.csv",
                              "tornado_profit.csv", "deviations.txt")]
