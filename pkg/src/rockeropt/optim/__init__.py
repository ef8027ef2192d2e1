"""
Bounded black-box minimizers behind one entry point, :func:`minimize`.

Every run draws all randomness from one Philox generator seeded by the
config, spreads its evaluation budget over ``generations`` history
points, and returns the best point ever evaluated.
"""

from __future__ import annotations

import math
import time

import numpy as np

from ..model import BoundsSet, initial_point
from . import bh, da, de, ga, pso, sa
from ._core import Evaluator
from .config import (
    Algorithm,
    BHParams,
    DAParams,
    DEParams,
    GAParams,
    OptimizerConfig,
    PSOParams,
    RunResult,
    SAParams,
    default_hyperparams,
)
from .simplex import nelder_mead
from .testfuncs import TEST_FUNCTIONS, ackley, rastrigin, rosenbrock, sphere

__all__ = [
    "Algorithm",
    "BHParams",
    "DAParams",
    "DEParams",
    "GAParams",
    "OptimizerConfig",
    "PSOParams",
    "RunResult",
    "SAParams",
    "TEST_FUNCTIONS",
    "ackley",
    "default_hyperparams",
    "make_rng",
    "minimize",
    "nelder_mead",
    "rastrigin",
    "rosenbrock",
    "sphere",
]

_RUNNERS = {
    Algorithm.PSO: pso.run,
    Algorithm.GA: ga.run,
    Algorithm.DE: de.run,
    Algorithm.SA: sa.run,
    Algorithm.BH: bh.run,
    Algorithm.DA: da.run,
}


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator; one independent stream per seed."""
    return np.random.Generator(np.random.Philox(seed))


def minimize(cfg: OptimizerConfig, objective, bounds: BoundsSet) -> RunResult:
    """
    Run ``cfg.algorithm`` on ``objective`` over ``bounds``.

    Parameters
    ----------
    cfg : OptimizerConfig
        Algorithm, budget, generation count, seed, start strategy and
        hyperparameters. Validated on construction.
    objective : callable
        Maps a flat vector to a float. Called only with points inside
        ``bounds``.
    bounds : BoundsSet

    Returns
    -------
    RunResult
        ``history[g]`` is the best objective value seen by the end of
        generation ``g``; ``best_f == history[-1]``.
    """
    rng = make_rng(cfg.seed)
    lower, upper = bounds.lower_array, bounds.upper_array
    ev = Evaluator(objective, lower, upper, cfg.budget_evals)
    x0 = initial_point(cfg.init_strategy, bounds, rng)

    start = time.perf_counter()
    history = _RUNNERS[cfg.algorithm](ev, x0, cfg.hyperparams, rng, cfg.generations)
    wall = time.perf_counter() - start

    best_x = ev.best_x if ev.best_x is not None else np.full(lower.size, math.nan)
    return RunResult(
        best_x=best_x,
        best_f=ev.best_f,
        history=history,
        evals_used=ev.n_evals,
        wall_time=wall,
        algorithm=cfg.algorithm.value,
        init_strategy=cfg.init_strategy.value,
        seed=cfg.seed,
    )
