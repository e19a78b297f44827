"""Command-line entry point: ``hypermst <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from dataclasses import asdict
from pathlib import Path

from . import theory
from .errors import HyperMSTError, VerificationError
from .harness import (
    ExperimentConfig,
    ExperimentResult,
    load_config_file,
    parse_grid,
    parse_number,
    run_experiment,
    write_result,
)

OUTPUT_DIR_ENV = "HYPERMST_OUTPUT_DIR"

# subcommand -> (experiment kind, defaults)
EXPERIMENTS = {
    "simulate": ("mst", dict(n=1000, t=3, trials=20)),
    "curve": ("prefix-curve", dict(n=5000, t=3, trials=10, c_grid=(0.5, 1.0, 2.0))),
    "giant": ("giant", dict(n=20000, t=3, trials=10, c_grid=(0.3, 0.5, 1.0))),
    "decay": ("decay", dict(n=10000, t=3, trials=20, c_grid=(1, 2, 3, 4, 5, 6))),
    "projection": ("projection", dict(n=10000, t=3, trials=20, c_grid=(2.0,))),
    "verify": ("sandwich", dict(n=7, t=3, trials=200)),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _number(text: str) -> float:
    try:
        return parse_number(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number or fraction: {text!r}")


def _grid(text: str) -> tuple[float, ...]:
    try:
        grid = parse_grid(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    if not grid:
        raise argparse.ArgumentTypeError("empty grid")
    return grid


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="hypermst",
        description="Random minimum spanning subgraphs of complete t-uniform hypergraphs.",
    )
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND", parser_class=_Parser)

    p = sub.add_parser("constants", help="print L_t, U_t, the gap ratio and the threshold")
    p.add_argument("--t", type=int, default=3)

    p = sub.add_parser("beta", help="solve for the giant component fraction beta(c)")
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--c", type=_number, required=True)

    helps = {
        "simulate": "A1, A2 and A2/(t-1) on full traces",
        "curve": "running totals A_c against the prefix integrals",
        "giant": "largest component fraction against beta(c)",
        "decay": "component counts C/n against the decay surrogate",
        "projection": "component dominance of the two-vertex projection",
        "verify": "sandwich and oracle checks on small instances",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--n", type=int)
        p.add_argument("--t", type=int)
        p.add_argument("--c", type=_grid, help="comma-separated densities m/n; fractions allowed")
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--a", type=_number)
        p.add_argument("--dist", choices=["power", "exp"])
        p.add_argument("--out", type=Path)
        p.add_argument("--workers", type=int, default=None)
        p.add_argument("--config", type=Path)
    return parser


def _print(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".12g")
    if isinstance(value, tuple):
        return "(" + ", ".join(_fmt(v) for v in value) + ")"
    return str(value)


def _constants(args) -> int:
    k = theory.bound_constants(args.t)
    _print(f"t = {k.t}")
    _print(f"L_t = {k.L_t:.12g}")
    _print(f"U_t = {k.U_t:.12g}")
    _print(f"gap_ratio = {k.gap_ratio:.12g}")
    _print(f"threshold c* = {k.threshold:.12g}")
    _print(f"quadrature_error_bound = {k.quadrature_error_bound:.3g}")
    return 0


def _beta(args) -> int:
    sol = theory.beta_of_c(args.t, args.c)
    _print(f"t = {sol.t}")
    _print(f"c = {sol.c:.12g}")
    _print(f"threshold c* = {theory.threshold(sol.t):.12g}")
    _print(f"beta = {sol.beta:.12g}")
    _print(f"residual = {sol.residual:.3g}")
    return 0


def _experiment_config(command: str, args) -> ExperimentConfig:
    kind, defaults = EXPERIMENTS[command]
    values = dict(defaults, seed=0, workers=os.cpu_count() or 1)
    if args.config is not None:
        values.update(load_config_file(args.config))
    flags = {
        "n": args.n, "t": args.t, "c_grid": args.c, "trials": args.trials, "seed": args.seed,
        "a": args.a, "dist": args.dist, "workers": args.workers,
        "out": str(args.out) if args.out is not None else None,
    }
    values.update({k: v for k, v in flags.items() if v is not None})
    values["kind"] = kind
    if kind == "projection":
        n = values["n"]
        values["m_grid"] = tuple(math.ceil(c * n - 1e-9) for c in values.pop("c_grid", (2.0,)))
    elif kind in ("mst", "sandwich"):
        values.pop("c_grid", None)
    if values.get("out") is None:
        base = Path(os.environ.get(OUTPUT_DIR_ENV, "results"))
        values["out"] = str(base / f"{kind}.csv")
    return ExperimentConfig(**values)


def _report(result: ExperimentResult) -> None:
    for key, value in result.summary.items():
        _print(f"{key} = {_fmt(value)}")
    if result.kind in ("prefix-curve", "giant", "decay"):
        for row in result.rows:
            _print("  " + ", ".join(f"{k}={_fmt(v)}" for k, v in row.items()))


def _verify_extras(config: ExperimentConfig) -> list[ExperimentResult]:
    """t = 2 collapse and oracle equivalence at a size beyond brute force."""
    collapse = ExperimentConfig(kind="sandwich", n=8, t=2, trials=50, seed=config.seed, workers=config.workers)
    results = [run_experiment(collapse)]
    for row in results[0].rows:
        if abs(row["A1"] - row["A2"]) > 1e-12 or abs(row["exact"] - row["A1"]) > 1e-12:
            raise VerificationError(f"t=2 collapse failed at seed={config.seed} trial={row['trial']}")
    from .algorithms import clique_expand_oracle, clique_lower
    from .process import generate_trace

    oracle_cfg = ExperimentConfig(kind="mst", n=12, t=3, trials=100, seed=config.seed)
    for trial in range(oracle_cfg.trials):
        trace = generate_trace(oracle_cfg.process(trial))
        weighted = [(row, float(w)) for row, w in zip(trace.edges.tolist(), trace.weights)]
        if abs(clique_lower(trace).total - clique_expand_oracle(weighted, 12).weight) > 1e-9:
            raise VerificationError(f"clique oracle mismatch at seed={config.seed} trial={trial}")
    return results


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv:
        parser.print_usage(sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")

    try:
        if args.command == "constants":
            return _constants(args)
        if args.command == "beta":
            return _beta(args)
        config = _experiment_config(args.command, args)
        shown = {k: v for k, v in asdict(config).items() if k != "workers"}
        _print(f"# {args.command}: " + ", ".join(f"{k}={_fmt(v)}" for k, v in shown.items()))
        result = run_experiment(config)
        path = write_result(result, config.out)
        _report(result)
        if args.command == "verify":
            _verify_extras(config)
            _print("t=2 collapse and clique oracle checks passed")
        _print(f"wrote {path}")
        return 0 if result.passed else 1
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (HyperMSTError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
