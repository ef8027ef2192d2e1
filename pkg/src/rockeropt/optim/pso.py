"""Global-best particle swarm optimization with velocity and position clamping."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._core import BudgetExhausted, iteration_blocks, pad_history, seed_population
from .config import PSOParams


@dataclass
class Swarm:
    x: np.ndarray
    v: np.ndarray
    pbest_x: np.ndarray
    pbest_f: np.ndarray
    gbest_x: np.ndarray
    gbest_f: float


def init_swarm(x0, objective, hp: PSOParams, rng, lower, upper) -> Swarm:
    vmax = hp.vmax_frac * (upper - lower)
    x = seed_population(x0, hp.swarm_size, rng, lower, upper)
    v = rng.uniform(-vmax, vmax, size=x.shape)
    f = np.array([objective(xi) for xi in x])
    best = int(np.argmin(f))
    return Swarm(x, v, x.copy(), f, x[best].copy(), float(f[best]))


def pso_step(swarm: Swarm, objective, hp: PSOParams, rng, lower, upper) -> Swarm:
    """
    One synchronous swarm update.

    Velocities are clamped to ``vmax_frac * range`` and positions to the
    bounds. Personal and global bests only ever improve.
    """
    vmax = hp.vmax_frac * (upper - lower)
    x = swarm.x
    r1 = rng.random(x.shape)
    r2 = rng.random(x.shape)
    v = (
        hp.omega * swarm.v
        + hp.c1 * r1 * (swarm.pbest_x - x)
        + hp.c2 * r2 * (swarm.gbest_x - x)
    )
    v = np.clip(v, -vmax, vmax)
    x = np.clip(x + v, lower, upper)
    f = np.array([objective(xi) for xi in x])

    better = f < swarm.pbest_f
    pbest_x = np.where(better[:, None], x, swarm.pbest_x)
    pbest_f = np.where(better, f, swarm.pbest_f)
    best = int(np.argmin(pbest_f))
    if pbest_f[best] < swarm.gbest_f:
        gbest_x, gbest_f = pbest_x[best].copy(), float(pbest_f[best])
    else:
        gbest_x, gbest_f = swarm.gbest_x, swarm.gbest_f
    return Swarm(x, v, pbest_x, pbest_f, gbest_x, gbest_f)


def run(ev, x0, hp: PSOParams, rng, generations: int) -> list[float]:
    history: list[float] = []
    try:
        swarm = init_swarm(x0, ev, hp, rng, ev.lower, ev.upper)
        total = max(ev.remaining // hp.swarm_size, 0)
        for n_iter in iteration_blocks(total, generations):
            for _ in range(n_iter):
                swarm = pso_step(swarm, ev, hp, rng, ev.lower, ev.upper)
            history.append(ev.best_f)
    except BudgetExhausted:
        pass
    return pad_history(history, generations, ev.best_f)
