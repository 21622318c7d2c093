"""Exit criteria for the package, one test per criterion.

Run alone with ``pytest tests/test_acceptance.py``; the terminal summary
prints one PASS/FAIL line per check.
"""

import math

import numpy as np
import pytest

from fuzzyeoq.fuzzy import TriangularFuzzyNumber, fp_binary, fp_scale, gmir
from fuzzyeoq.model import base_params, defuzzified_profit, profit_rate_crisp, profit_triple, uwx
from fuzzyeoq.optimizer import (
    concavity_check,
    demand_weight,
    grid_search_oracle,
    optimal_q,
    optimal_q_classic,
)
from fuzzyeoq.reproduce import (
    PRINTED_TABLE1,
    PRINTED_TABLE2,
    PRINTED_TABLE4,
    deviations,
    fuzzy_rows,
    table1,
    table2,
    table4,
)
from fuzzyeoq.sensitivity import REFERENCE_RANGES, tornado
from fuzzyeoq.simulation import PointMass, SimulationConfig, params_matching, simulate
from strategies import random_params

# Printed cells known to be misprints, checked against recomputed values instead.
TYPO_CELLS = {("h_s", 1.0): 1212076.6, ("E(r_w)", 0.025): 1211231.0}


def test_c01_base_case(criterion):
    r = optimal_q(base_params())
    criterion(1, f"Q* = {r.q_star:.4f} within 0.1 of 1394.9", abs(r.q_star - 1394.9) <= 0.1)
    criterion(1, f"profit = {r.profit:.3f} within 1 of 1212072", abs(r.profit - 1212072) <= 1)
    criterion.verify()


def test_c02_table1(criterion):
    rows = table1()
    for i, (row, (_, printed, _)) in enumerate(zip(rows, PRINTED_TABLE1), start=1):
        if i == 5:
            continue
        criterion(2, f"row {i} GMIR {row['gmir']!r} == {printed}", row["gmir"] == printed)
    g5 = rows[4]["gmir"]
    criterion(2, f"row 5 GMIR {g5:.4f} within 0.01 of 63333.33", abs(g5 - 63333.33) <= 0.01)
    flagged = any(d.table == "table1" and d.row == "5" and d.column == "gmir" for d in deviations())
    criterion(2, "row 5 flagged as a print deviation", flagged)
    criterion.verify()


def test_c03_table2(criterion):
    for i, (row, printed) in enumerate(zip(table2(), PRINTED_TABLE2), start=1):
        q, _, profit, _ = printed
        criterion(3, f"row {i} Q* {row['q_star']:.4f} within 0.05 of {q}", abs(row["q_star"] - q) <= 0.05)
        criterion(3, f"row {i} profit {row['profit']:.3f} within 0.5 of {profit}",
                  abs(row["profit"] - profit) <= 0.5)
    criterion.verify()


def test_c04_table4(criterion):
    computed = iter(table4())
    devs = {(d.table, d.row, d.column) for d in deviations()}
    for name, printed in PRINTED_TABLE4.items():
        for value, q, profit in printed:
            row = next(computed)
            label = f"{name}={value:g}"
            criterion(4, f"{label} Q* {row['q_star']:.4f} within 0.1 of {q}", abs(row["q_star"] - q) <= 0.1)
            if (name, float(value)) in TYPO_CELLS:
                target = TYPO_CELLS[(name, float(value))]
                criterion(4, f"{label} profit {row['profit']:.3f} within 2 of recomputed {target}",
                          abs(row["profit"] - target) <= 2)
                criterion(4, f"{label} profit listed in deviations.txt",
                          ("table4", label, "profit") in devs)
            else:
                criterion(4, f"{label} profit {row['profit']:.3f} within 1 of {profit}",
                          abs(row["profit"] - profit) <= 1)
    criterion.verify()


def test_c05_tornado(criterion):
    base = base_params()
    q_bars = tornado(base, REFERENCE_RANGES, "q_star")
    top = q_bars[0]
    criterion(5, f"widest Q* bar is h_w (got {top.parameter})", top.parameter == "h_w")
    criterion(5, f"h_w Q* endpoints ({top.metric_at_low:.2f}, {top.metric_at_high:.2f}) ~ (2746.9, 885)",
              abs(top.metric_at_low - 2746.9) <= 0.1 and abs(top.metric_at_high - 885) <= 0.1)
    p_bars = tornado(base, REFERENCE_RANGES, "profit")
    top = p_bars[0]
    criterion(5, f"widest profit bar is d (got {top.parameter}, span {top.span:.1f})", top.parameter == "d")
    d_bar = next(b for b in p_bars if b.parameter == "d")
    criterion(5, f"d profit endpoints ({d_bar.metric_at_low:.2f}, {d_bar.metric_at_high:.2f}) "
                 "~ (1224827.6, 1186562.3)",
              abs(d_bar.metric_at_low - 1224827.6) <= 1 and abs(d_bar.metric_at_high - 1186562.3) <= 1)
    criterion.verify()


def test_c06_oracle(criterion):
    base = base_params()
    for label, p in [("base", base)] + [(f"fuzzy row {i + 1}", base.replace(demand=t))
                                        for i, t in enumerate(fuzzy_rows())]:
        q = optimal_q(p).q_star
        best, _ = grid_search_oracle(p, step=0.01)
        criterion(6, f"{label}: oracle {best:.2f} vs closed form {q:.4f}", abs(best - q) <= 0.01)
    rng = np.random.default_rng(20240601)
    worst = 0.0
    for _ in range(50):
        p = random_params(rng)
        q = optimal_q(p).q_star
        best, _ = grid_search_oracle(p, step=0.01)
        worst = max(worst, abs(best - q))
    criterion(6, f"50 random sets: worst oracle gap {worst:.4f} <= 0.01", worst <= 0.01)
    criterion.verify()


def test_c07_reductions(criterion):
    p = base_params(**{"E(r_w)": 0.0, "x": 1e12})
    q, q_classic = optimal_q(p).q_star, optimal_q_classic(p)
    rel = abs(q - q_classic) / q_classic
    criterion(7, f"no rework, instant screening: relative gap {rel:.2e} <= 1e-6", rel <= 1e-6)
    p1 = p.replace(e_one_minus_scrap_sq=1.0)
    eoq = math.sqrt(2 * 100 * 50000 / 5)
    classic = optimal_q_classic(p1)
    criterion(7, f"classic with E[(1-r_s)^2]=1 equals sqrt(2AD/h_w) ({classic!r} vs {eoq!r})",
              abs(classic - eoq) <= 4 * math.ulp(eoq))
    rel = abs(optimal_q(p1).q_star - eoq) / eoq
    criterion(7, f"closed form with E[(1-r_s)^2]=1: relative gap {rel:.2e} <= 1e-6", rel <= 1e-6)
    criterion.verify()


def test_c08_fuzzy_properties(criterion):
    rng = np.random.default_rng(8)
    worst_scale = worst_add = 0.0
    for _ in range(2000):
        a = TriangularFuzzyNumber(*np.sort(rng.uniform(-1e5, 1e5, 3)))
        b = TriangularFuzzyNumber(*np.sort(rng.uniform(-1e5, 1e5, 3)))
        k = rng.uniform(-100, 100)
        ulp_k = math.ulp(abs(k) * max(map(abs, a)))
        worst_scale = max(worst_scale, abs(gmir(fp_scale(a, k)) - k * gmir(a)) / ulp_k)
        ulp_ab = math.ulp(max(map(abs, (*a, *b))))
        worst_add = max(worst_add, abs(gmir(fp_binary("add", a, b)) - gmir(a) - gmir(b)) / ulp_ab)
    criterion(8, f"GMIR under scaling exact to {worst_scale:.1f} ulp (<= 4)", worst_scale <= 4)
    criterion(8, f"GMIR under addition exact to {worst_add:.1f} ulp (<= 4)", worst_add <= 4)

    ok = True
    for _ in range(200):
        p = random_params(rng, fuzzy=False)
        d = p.demand.peak
        r = optimal_q(p)
        for q in (r.q_star, r.q_star * rng.uniform(0.2, 5)):
            ok &= abs(defuzzified_profit(p, q) - profit_rate_crisp(p, q, d)) <= 1e-9 * abs(profit_rate_crisp(p, q, d)) + 1e-9
            if r.profit_triple is not None:
                t = r.profit_triple
                ok &= t.a1 == t.b1 == t.c1
    criterion(8, "degenerate demand: pipeline equals the crisp model on 200 random sets", ok)

    worst = 0.0
    for _ in range(200):
        p = random_params(rng)
        q = optimal_q(p).q_star
        u, w, _ = uwx(p, q)
        if u < w:
            continue
        t, d = profit_triple(p, q), p.demand
        scale = abs(t.a1) + abs(t.c1)
        worst = max(worst,
                    abs((t.b1 - t.a1) - (d.peak - d.low) * (u - w)) / scale,
                    abs((t.c1 - t.b1) - (d.high - d.peak) * (u - w)) / scale)
    criterion(8, f"profit triple spacing = demand spacing x (u - W), worst rel {worst:.1e}", worst <= 1e-12)
    criterion.verify()


def test_c09_first_order_and_concavity(criterion):
    cases = [("base", base_params())] + [(f"fuzzy row {i + 1}", base_params(demand=t))
                                         for i, t in enumerate(fuzzy_rows())]
    rng = np.random.default_rng(9)
    cases += [(f"random {i}", random_params(rng)) for i in range(20)]
    worst_fo = worst_so = 0.0
    for _, p in cases:
        r = optimal_q(p)
        q = r.q_star
        h = 1e-4 * q
        deriv = (defuzzified_profit(p, q + h) - defuzzified_profit(p, q - h)) / (2 * h)
        worst_fo = max(worst_fo, abs(deriv) * q / abs(r.profit))
        chk = concavity_check(p, q)
        analytic = -2 * p.ordering_cost * (demand_weight(p) / 6) / (q ** 3 * (1 - p.e_scrap))
        worst_so = max(worst_so, abs(chk.numeric - analytic) / abs(analytic))
    criterion(9, f"first-order condition at Q*: worst relative derivative {worst_fo:.1e} <= 1e-6",
              worst_fo <= 1e-6)
    criterion(9, f"second derivative vs finite differences: worst rel {worst_so:.1e} <= 1e-3",
              worst_so <= 1e-3)
    criterion.verify()


def test_c10_simulation(criterion):
    base = base_params()
    q = optimal_q(base).q_star
    cfg = SimulationConfig(base, q, PointMass(0.02), PointMass(0.05), n_cycles=10_000, seed=1)
    res = simulate(cfg)
    expected = profit_rate_crisp(params_matching(cfg), q, 50000)
    rel = abs(res.mean_profit_rate - expected) / expected
    criterion(10, f"point masses: estimator vs analytic rel {rel:.1e} <= 1e-9", rel <= 1e-9)

    cfg = SimulationConfig(base, q, n_cycles=1_000_000, seed=2024)
    res = simulate(cfg)
    rel = abs(res.mean_profit_rate - 1212072) / 1212072
    criterion(10, f"uniform defaults, 1e6 cycles: {res.mean_profit_rate:.1f} within 1% (rel {rel:.1e})",
              rel <= 0.01)
    criterion(10, f"shortages_detected = {res.shortages_detected}", res.shortages_detected == 0)
    criterion(10, "fixed seed gives a bit-identical rerun", simulate(cfg) == res)
    criterion.verify()


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
