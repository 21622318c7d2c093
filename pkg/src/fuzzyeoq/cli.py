"""Command-line entry point: ``fuzzyeoq {solve,sweep,tornado,simulate,reproduce-paper}``.

Exit codes: 0 success, 1 usage or config error, 2 model-domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from fuzzyeoq.config import ConfigError, ScenarioConfig, load_config
from fuzzyeoq.errors import ModelDomainError
from fuzzyeoq.optimizer import optimal_q
from fuzzyeoq.reproduce import reproduce
from fuzzyeoq.sensitivity import (
    SensitivityError,
    one_way_sweep,
    sweep_to_csv,
    to_json,
    tornado,
    tornado_to_csv,
)
from fuzzyeoq.simulation import SimulationConfig, simulate, verify_moments

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _format_policy(result) -> str:
    lines = [f"Q* = {result.q_star:.1f}, profit = {result.profit:.1f}"]
    if result.profit_triple is not None:
        a1, b1, c1 = result.profit_triple.to_list()
        lines.append(f"profit triple = ({a1:.3f}, {b1:.3f}, {c1:.3f})")
    else:
        lines.append("profit triple = not orderable (u < W)")
    lines.append(f"implied discount rate = {result.discount_rate:.6f}")
    f = result.feasibility
    lines.append(
        f"screening feasible: at GMIR demand {'yes' if f.feasible_gmir else 'no'} "
        f"(needs x >= {f.threshold_gmir:.1f}), at upper demand {'yes' if f.feasible_upper else 'no'} "
        f"(needs x >= {f.threshold_upper:.1f})"
    )
    lines.append(f"denominator = {result.denominator:.6f}, concave = {result.concave}")
    lines += [f"warning: {w}" for w in result.warnings]
    return "\n".join(lines) + "\n"


def cmd_solve(cfg: ScenarioConfig, args) -> int:
    result = optimal_q(cfg.params)
    if args.format == "json":
        _emit(json.dumps(result.to_dict(), indent=2) + "\n", args.output)
    else:
        _emit(_format_policy(result), args.output)
    return EXIT_OK


def cmd_sweep(cfg: ScenarioConfig, args) -> int:
    if not cfg.sweeps:
        raise UsageError("config has no 'sweep' section")
    rows = [row for name, values in cfg.sweeps for row in one_way_sweep(cfg.params, name, values)]
    _emit(to_json(rows) + "\n" if args.format == "json" else sweep_to_csv(rows), args.output)
    return EXIT_OK


def cmd_tornado(cfg: ScenarioConfig, args) -> int:
    if cfg.tornado is None:
        raise UsageError("config has no 'tornado' section")
    if not cfg.tornado.ranges:
        raise UsageError("tornado section has an empty 'ranges' list")
    metric = args.metric or cfg.tornado.metric
    bars = tornado(cfg.params, cfg.tornado.ranges, metric)
    _emit(to_json(bars) + "\n" if args.format == "json" else tornado_to_csv(bars), args.output)
    return EXIT_OK


def cmd_simulate(cfg: ScenarioConfig, args) -> int:
    if cfg.simulation is None:
        raise UsageError("config has no 'simulation' section")
    sec = cfg.simulation
    q = sec.q if sec.q is not None else optimal_q(cfg.params).q_star
    seed = args.seed if args.seed is not None else sec.seed
    try:
        sim = SimulationConfig(cfg.params, q, sec.scrap, sec.rework, sec.n_cycles, seed)
    except ValueError as exc:
        raise UsageError(f"simulation: {exc}") from None
    result = simulate(sim, workers=sec.workers)
    record = {"q": q, "seed": seed, **result.to_dict(),
              "moments": verify_moments(sim).to_dict()}
    if args.format == "json":
        _emit(json.dumps(record, indent=2) + "\n", args.output)
    else:
        header = ["q", "seed", *result.to_dict()]
        _emit(",".join(header) + "\n" + ",".join(repr(record[k]) for k in header) + "\n", args.output)
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "sweep": cmd_sweep, "tornado": cmd_tornado, "simulate": cmd_simulate}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fuzzyeoq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, default_fmt in (("solve", "text"), ("sweep", "csv"), ("tornado", "csv"), ("simulate", "csv")):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="scenario YAML file")
        p.add_argument("--output", help="write here instead of standard output")
        choices = ["text", "json"] if name == "solve" else ["csv", "json"]
        p.add_argument("--format", choices=choices, default=default_fmt)
        if name == "simulate":
            p.add_argument("--seed", type=int, help="override simulation.seed")
        if name == "tornado":
            p.add_argument("--metric", choices=["q_star", "profit"])
    p = sub.add_parser("reproduce-paper", help="recompute the reference tables into a directory")
    p.add_argument("--output", default="paper_tables", help="output directory")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "reproduce-paper":
            for path in reproduce(args.output):
                print(path)
            return EXIT_OK
        cfg = load_config(args.config)
        return COMMANDS[args.command](cfg, args)
    except (ConfigError, UsageError, SensitivityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ModelDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
