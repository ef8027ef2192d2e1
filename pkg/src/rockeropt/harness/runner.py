"""
Execution of experiment jobs and the files they produce.

Jobs run in a process pool (or inline with one worker). Results are
collected in job order and every file is written by the calling
process, so file contents do not depend on the worker count.
"""

from __future__ import annotations

import csv
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from statistics import mean

from ..errors import ConfigError
from ..fitness import ObjectiveContext
from ..model import InitStrategy
from ..optim import OptimizerConfig, RunResult, minimize
from .config import ExperimentConfig

STRATEGIES = (
    InitStrategy.MEAN,
    InitStrategy.RANDOM,
    InitStrategy.UPPER_BOUND,
    InitStrategy.LOWER_BOUND,
)

HISTORY_HEADER = ("generation", "best_objective", "best_fitness")
SUMMARY_FIELDS = (
    "algorithm",
    "init_strategy",
    "repetition",
    "best_fitness",
    "evals",
    "wall_time",
)


def fmt(value: float) -> str:
    """Shortest-safe float text: 17 significant digits round-trip exactly."""
    return f"{value:.17g}"


@dataclass(frozen=True)
class Job:
    cfg: OptimizerConfig
    repetition: int

    @property
    def tag(self) -> str:
        return f"{self.cfg.algorithm.value}_{self.cfg.init_strategy.value}_{self.repetition}"


@dataclass
class SummaryRow:
    algorithm: str
    init_strategy: str
    repetition: int
    best_fitness: float
    evals: int
    wall_time: float
    best_x: list

    def to_dict(self) -> dict:
        return asdict(self)


def measure(fn, *args, **kwargs):
    """Call ``fn`` and return ``(result, seconds)`` on the monotonic clock."""
    start = time.perf_counter()
    result = fn(*args, **kwargs)
    return result, time.perf_counter() - start


def build_jobs(cfg: ExperimentConfig, strategies=None) -> list[Job]:
    """
    Expand runs into jobs. Repetition ``k`` of a run uses seed
    ``run.seed + k``. With ``strategies`` every run is repeated for each
    start strategy, replacing its own.
    """
    jobs = []
    seen = set()
    for run in cfg.runs:
        for strategy in strategies or (run.init_strategy,):
            key = (run.algorithm, InitStrategy(strategy))
            if key in seen:
                raise ConfigError(
                    f"duplicate run for {key[0].value} with {key[1].value}; "
                    "history file names would collide"
                )
            seen.add(key)
            for rep in range(cfg.repetitions):
                jobs.append(Job(run.replace(init_strategy=strategy, seed=run.seed + rep), rep))
    return jobs


def _execute(job: Job, ctx: ObjectiveContext) -> RunResult:
    # minimize times itself around the search only
    return minimize(job.cfg, ctx, ctx.bounds)


def execute_jobs(cfg: ExperimentConfig, jobs: list[Job]) -> list[RunResult]:
    ctx = ObjectiveContext(weights=cfg.weights, scenario=cfg.scenario, bounds=cfg.bounds)
    workers = cfg.workers or os.cpu_count() or 1
    workers = min(workers, len(jobs))
    if workers <= 1:
        return [_execute(job, ctx) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_execute, job, ctx) for job in jobs]
        return [f.result() for f in futures]


def write_history(path: Path, result: RunResult) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(HISTORY_HEADER)
        for g, value in enumerate(result.history):
            writer.writerow((g, fmt(value), fmt(-value)))


def summary_rows(jobs: list[Job], results: list[RunResult]) -> list[SummaryRow]:
    return [
        SummaryRow(
            algorithm=job.cfg.algorithm.value,
            init_strategy=job.cfg.init_strategy.value,
            repetition=job.repetition,
            best_fitness=-res.best_f,
            evals=res.evals_used,
            wall_time=res.wall_time,
            best_x=res.best_x.tolist(),
        )
        for job, res in zip(jobs, results)
    ]


def write_summary(out_dir: Path, rows: list[SummaryRow]) -> None:
    with open(out_dir / "summary.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_FIELDS)
        for row in rows:
            writer.writerow((
                row.algorithm,
                row.init_strategy,
                row.repetition,
                fmt(row.best_fitness),
                row.evals,
                fmt(row.wall_time),
            ))
    with open(out_dir / "summary.json", "w", encoding="utf-8") as fh:
        json.dump([row.to_dict() for row in rows], fh, indent=2)
        fh.write("\n")


def load_summary(path) -> list[SummaryRow]:
    with open(path, encoding="utf-8") as fh:
        return [SummaryRow(**row) for row in json.load(fh)]


def comparison_matrix(rows: list[SummaryRow]) -> list[dict]:
    """
    One entry per algorithm: mean fitness per start strategy (over
    repetitions), mean wall time, and the spread of the strategy means.
    """
    algorithms = list(dict.fromkeys(r.algorithm for r in rows))
    table = []
    for alg in algorithms:
        mine = [r for r in rows if r.algorithm == alg]
        entry = {"algorithm": alg, "time_s": mean(r.wall_time for r in mine)}
        cells = []
        for strategy in STRATEGIES:
            vals = [r.best_fitness for r in mine if r.init_strategy == strategy.value]
            value = mean(vals) if vals else math.nan
            entry[strategy.value] = value
            cells.append(value)
        spread = max(cells) - min(cells)
        center = abs(mean(cells))
        entry["spread"] = spread
        entry["rel_spread"] = spread / center if center > 0 else math.inf
        table.append(entry)
    return table


MATRIX_COLUMNS = ("algorithm", "time_s") + tuple(s.value for s in STRATEGIES) + ("spread", "rel_spread")


def write_matrix(path: Path, table: list[dict]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(MATRIX_COLUMNS)
        for entry in table:
            writer.writerow([entry["algorithm"]] + [fmt(entry[c]) for c in MATRIX_COLUMNS[1:]])


def format_matrix(table: list[dict]) -> str:
    header = ("Algorithm", "Time (s)", "Fit (Mean)", "Fit (Random)", "Fit (Upper)",
              "Fit (Lower)", "Spread", "Rel spread")
    lines = [header]
    for e in table:
        lines.append((
            e["algorithm"],
            f"{e['time_s']:.3f}",
            *(f"{e[s.value]:.2f}" for s in STRATEGIES),
            f"{e['spread']:.3g}",
            f"{100 * e['rel_spread']:.3g}%",
        ))
    widths = [max(len(row[i]) for row in lines) for i in range(len(header))]
    out = []
    for k, row in enumerate(lines):
        out.append("  ".join(cell.rjust(w) if i else cell.ljust(w)
                             for i, (cell, w) in enumerate(zip(row, widths))))
        if k == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out)
