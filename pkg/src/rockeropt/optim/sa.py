"""Simulated annealing with gaussian proposals and geometric cooling."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._core import BudgetExhausted, eval_targets, pad_history
from .config import SAParams


@dataclass
class SAState:
    x: np.ndarray
    f: float
    best_x: np.ndarray
    best_f: float


def metropolis_accept(delta: float, temperature: float, rng) -> bool:
    """Always accept non-worsening moves, otherwise with ``exp(-delta / T)``."""
    if delta <= 0.0:
        return True
    if not math.isfinite(delta):
        return False
    return rng.random() < math.exp(-delta / temperature)


def sa_step(state: SAState, objective, temperature: float, sigma, rng, lower, upper) -> SAState:
    candidate = np.clip(state.x + rng.normal(0.0, sigma), lower, upper)
    fc = objective(candidate)
    if fc <= state.f or metropolis_accept(fc - state.f, temperature, rng):
        x, f = candidate, fc
    else:
        x, f = state.x, state.f
    if f < state.best_f:
        return SAState(x, f, x.copy(), f)
    return SAState(x, f, state.best_x, state.best_f)


def initial_temperature(f0: float, factor: float) -> float:
    t0 = factor * abs(f0)
    return t0 if math.isfinite(t0) and t0 > 0.0 else 1.0


def run(ev, x0, hp: SAParams, rng, generations: int) -> list[float]:
    history: list[float] = []
    try:
        f0 = ev(x0)
        state = SAState(np.array(x0, dtype=float), f0, np.array(x0, dtype=float), f0)
        t0 = initial_temperature(f0, hp.t0_factor)
        sigma0 = hp.step_scale * (ev.upper - ev.lower)
        for g, target in enumerate(eval_targets(ev.budget, generations)):
            ratio = hp.cooling**g
            temperature = t0 * ratio
            sigma = sigma0 * ratio**hp.step_decay
            while ev.n_evals < target:
                state = sa_step(state, ev, temperature, sigma, rng, ev.lower, ev.upper)
            history.append(ev.best_f)
    except BudgetExhausted:
        pass
    return pad_history(history, generations, ev.best_f)
