"""
Command line interface.

    rockeropt run <config.json>       every run x repetition
    rockeropt compare <config.json>   every run x start strategy x repetition
    rockeropt testfuncs               optimizer validation on test functions
    rockeropt dump --xr .. --j ..     metrics of one design as JSON

Exit codes: 0 success, 1 validation failure, 2 configuration or usage
error, 3 evaluation failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from ..errors import ConfigError, EvaluationError
from ..fitness import fitness
from ..mechanism import solve_geometry
from ..metrics import evaluate_all, solve_forces
from ..model import DESIGN_FIELDS, BoundsSet, ScenarioParams, FitnessWeights, default_bounds, to_design
from . import runner, validation
from .config import ExperimentConfig, load_config

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_EVAL = 3

DUMP_FLAGS = (
    ("--xr", "x_r"),
    ("--yr", "y_r"),
    ("--zr", "z_r"),
    ("--gamma-rb", "gamma_rb"),
    ("--xb", "x_b"),
    ("--yb1", "y_b1"),
    ("--yb2", "y_b2"),
    ("--c", "clearance_c"),
    ("--lrb", "l_rb"),
    ("--j", "gear_j"),
)


def _err(msg: str) -> None:
    print(f"rockeropt: {msg}", file=sys.stderr)


def _design_report(x, scenario: ScenarioParams, weights: FitnessWeights) -> dict:
    design = to_design(x)
    m = solve_geometry(design, scenario)
    forces = solve_forces(m, scenario)
    report = evaluate_all(design, scenario)
    try:
        fit = fitness(report, weights)
    except EvaluationError:
        fit = None
    return {
        "design": design.to_dict(),
        "mechanism": m.to_dict(),
        "forces": forces.to_dict(),
        "metrics": report.to_dict(),
        "fitness": fit,
    }


def _write_json(path: Path, data) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")


def run_experiment(cfg: ExperimentConfig, *, compare: bool = False,
                   dump_state: bool = False, dump_metrics: bool = False) -> int:
    strategies = runner.STRATEGIES if compare else None
    jobs = runner.build_jobs(cfg, strategies)
    try:
        results = runner.execute_jobs(cfg, jobs)
    except Exception as exc:  # noqa: BLE001 - any failure inside a run is an evaluation failure
        _err(f"run failed: {type(exc).__name__}: {exc}")
        return EXIT_EVAL

    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for job, res in zip(jobs, results):
        runner.write_history(out_dir / f"history_{job.tag}.csv", res)
        if (dump_state or dump_metrics) and math.isfinite(res.best_f):
            info = _design_report(res.best_x, cfg.scenario, cfg.weights)
            if dump_state:
                _write_json(out_dir / f"state_{job.tag}.json",
                            {"mechanism": info["mechanism"], "forces": info["forces"]})
            if dump_metrics:
                _write_json(out_dir / f"metrics_{job.tag}.json",
                            {"metrics": info["metrics"], "fitness": info["fitness"]})
    rows = runner.summary_rows(jobs, results)
    runner.write_summary(out_dir, rows)

    if compare:
        table = runner.comparison_matrix(rows)
        runner.write_matrix(out_dir / "comparison.csv", table)
        print(runner.format_matrix(table))
    else:
        for row in rows:
            print(f"{row.algorithm:<4} {row.init_strategy:<11} rep {row.repetition}: "
                  f"fitness {row.best_fitness:.6f}  evals {row.evals}  {row.wall_time:.3f}s")

    failed = [job.tag for job, res in zip(jobs, results) if not math.isfinite(res.best_f)]
    if failed:
        _err(f"no finite objective value in run(s): {', '.join(failed)}")
        return EXIT_EVAL
    return EXIT_OK


def cmd_run(args, compare=False) -> int:
    try:
        cfg = load_config(args.config).with_overrides(
            seed=getattr(args, "seed", None),
            output_dir=getattr(args, "out_dir", None),
            workers=getattr(args, "workers", None),
        )
        return run_experiment(
            cfg,
            compare=compare,
            dump_state=getattr(args, "dump_state", False),
            dump_metrics=getattr(args, "dump_metrics", False),
        )
    except ConfigError as exc:
        _err(str(exc))
        return EXIT_CONFIG


def cmd_testfuncs(args) -> int:
    checks = validation.gated_checks()
    if not args.gated_only:
        checks += validation.info_checks()
    failures = []
    for check in checks:
        result = validation.run_check(check)
        print(validation.format_result(result), flush=True)
        if not result.ok:
            failures.append(check.label)
    if failures:
        print(f"FAILED: {', '.join(failures)}")
        return EXIT_FAILED
    print("all validation checks passed")
    return EXIT_OK


def cmd_dump(args) -> int:
    scenario, weights, bounds = ScenarioParams(), FitnessWeights(), default_bounds()
    if args.config:
        try:
            cfg = load_config(args.config)
        except ConfigError as exc:
            _err(str(exc))
            return EXIT_CONFIG
        scenario, weights, bounds = cfg.scenario, cfg.weights, cfg.bounds
    values = [getattr(args, name) for _, name in DUMP_FLAGS]
    if not all(math.isfinite(v) for v in values):
        _err("design values must be finite")
        return EXIT_CONFIG
    x = _clamp_with_warning(values, bounds)
    print(json.dumps(_design_report(x, scenario, weights), indent=2))
    return EXIT_OK


def _clamp_with_warning(values, bounds: BoundsSet) -> list[float]:
    out = []
    for name, v, lo, hi in zip(DESIGN_FIELDS, values, bounds.lower, bounds.upper):
        c = min(hi, max(lo, v))
        if c != v:
            print(f"warning: {name}={v} outside [{lo}, {hi}], clamped to {c}", file=sys.stderr)
        out.append(c)
    return out


def _global_options(suppress: bool) -> argparse.ArgumentParser:
    default = argparse.SUPPRESS if suppress else None
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=default, help="override every run's base seed")
    p.add_argument("--out-dir", default=default, help="override the output directory")
    p.add_argument("--workers", type=int, default=default, help="worker processes")
    p.add_argument("--dump-state", action="store_true",
                   default=argparse.SUPPRESS if suppress else False,
                   help="write mechanism and force state of each best design")
    p.add_argument("--dump-metrics", action="store_true",
                   default=argparse.SUPPRESS if suppress else False,
                   help="write the metrics report of each best design")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rockeropt",
        description="Rocker-bogie suspension optimization harness.",
        parents=[_global_options(False)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    shared = [_global_options(True)]

    p = sub.add_parser("run", parents=shared, help="execute every run of a config")
    p.add_argument("config")
    p = sub.add_parser("compare", parents=shared,
                       help="run every algorithm from all four start strategies")
    p.add_argument("config")
    p = sub.add_parser("testfuncs", parents=shared, help="validate optimizers on test functions")
    p.add_argument("--gated-only", action="store_true",
                   help="skip the informational rosenbrock and ackley runs")
    p = sub.add_parser("dump", parents=shared, help="print state and metrics of one design")
    for flag, name in DUMP_FLAGS:
        p.add_argument(flag, dest=name, type=float, required=True)
    p.add_argument("--config", help="take scenario, weights and bounds from this config")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args)
    if args.command == "compare":
        return cmd_run(args, compare=True)
    if args.command == "testfuncs":
        return cmd_testfuncs(args)
    return cmd_dump(args)


if __name__ == "__main__":
    sys.exit(main())
