"""Basin hopping: random displacement, local simplex search, Metropolis test."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._core import BudgetExhausted, eval_targets, pad_history
from .config import BHParams
from .sa import metropolis_accept
from .simplex import nelder_mead


@dataclass
class BHState:
    x: np.ndarray
    f: float
    best_x: np.ndarray
    best_f: float


def local_search(objective, x0, hp: BHParams, lower, upper, f0=None):
    return nelder_mead(
        objective,
        x0,
        lower,
        upper,
        alpha=hp.nm_alpha,
        gamma=hp.nm_gamma,
        rho=hp.nm_rho,
        sigma=hp.nm_sigma,
        tol=hp.nm_tol,
        max_iter=hp.nm_max_iter,
        init_frac=hp.nm_init_frac,
        f0=f0,
    )


def bh_iterate(state: BHState, objective, hp: BHParams, rng, lower, upper) -> BHState:
    """
    Hop once. The new local minimum replaces the current one when it is
    no worse, or with Metropolis probability at ``hp.temperature``.
    """
    span = upper - lower
    trial = np.clip(state.x + rng.uniform(-1.0, 1.0, size=state.x.size) * hp.step_frac * span,
                    lower, upper)
    x_loc, f_loc = local_search(objective, trial, hp, lower, upper)
    if f_loc <= state.f or metropolis_accept(f_loc - state.f, hp.temperature, rng):
        x, f = x_loc, f_loc
    else:
        x, f = state.x, state.f
    if f < state.best_f:
        return BHState(x, f, x.copy(), f)
    return BHState(x, f, state.best_x, state.best_f)


def run(ev, x0, hp: BHParams, rng, generations: int) -> list[float]:
    history: list[float] = []
    try:
        x, f = local_search(ev, x0, hp, ev.lower, ev.upper)
        state = BHState(x, f, x.copy(), f)
        for target in eval_targets(ev.budget, generations):
            while ev.n_evals < target:
                state = bh_iterate(state, ev, hp, rng, ev.lower, ev.upper)
            history.append(ev.best_f)
    except BudgetExhausted:
        pass
    return pad_history(history, generations, ev.best_f)
