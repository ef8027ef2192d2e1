"""
Dual annealing: generalized simulated annealing driven by Tsallis
statistics.

Candidates come from the heavy-tailed visiting distribution of
generalized simulated annealing, whose width shrinks with the visiting
temperature

    T(t) = T0 * (2**(qv - 1) - 1) / ((1 + t)**(qv - 1) - 1).

Worse candidates are accepted with the generalized Metropolis
probability ``[1 - (1 - qa) * df / Ta] ** (1 / (1 - qa))`` (zero when the
bracket is negative), with acceptance temperature ``Ta = T(t) / t``.
Each iteration visits all coordinates at once ``dim`` times, then each
coordinate on its own, for ``2 * dim`` evaluations. The run restarts
from a uniform random point when ``T(t) / T0`` drops below
``restart_ratio``.

The visiting width follows the construction of Tsallis & Stariolo
(gaussian numerator over a power of an independent gaussian). It is
computed in log space so that ``qv`` close to 1 stays finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._core import BudgetExhausted, eval_targets, pad_history
from .config import BHParams, DAParams
from .simplex import nelder_mead

TAIL_LIMIT = 1e8


@dataclass
class DAState:
    x: np.ndarray
    f: float
    best_x: np.ndarray
    best_f: float


def visiting_temperature(t: int, t0: float, qv: float) -> float:
    return t0 * (2.0 ** (qv - 1.0) - 1.0) / ((1.0 + t) ** (qv - 1.0) - 1.0)


def visiting_width(qv: float, temperature: float) -> float:
    log_f1 = math.log(temperature) / (qv - 1.0)
    log_f2 = (4.0 - qv) * math.log(qv - 1.0)
    log_f3 = (2.0 - qv) * math.log(2.0) / (3.0 - qv)
    log_f4 = 0.5 * math.log(math.pi) + log_f1 + log_f2 - log_f3 - math.log(3.0 - qv)
    f5 = 1.0 / (qv - 1.0) - 0.5
    arg = math.pi * (1.0 - f5)
    log_f6 = math.log(abs(arg)) - math.log(abs(math.sin(arg))) - math.lgamma(2.0 - f5)
    return math.exp(-(qv - 1.0) * (log_f6 - log_f4) / (3.0 - qv))


def visit(qv: float, temperature: float, size: int, rng) -> np.ndarray:
    """Draw ``size`` independent steps from the visiting distribution."""
    width = visiting_width(qv, temperature)
    num = width * rng.normal(size=size)
    den = np.abs(rng.normal(size=size)) ** ((qv - 1.0) / (3.0 - qv))
    with np.errstate(divide="ignore", invalid="ignore"):
        steps = num / den
    steps = np.nan_to_num(steps, nan=0.0, posinf=TAIL_LIMIT, neginf=-TAIL_LIMIT)
    return np.clip(steps, -TAIL_LIMIT, TAIL_LIMIT)


def acceptance_probability(delta: float, temperature: float, qa: float) -> float:
    if delta <= 0.0:
        return 1.0
    bracket = 1.0 - (1.0 - qa) * delta / temperature
    if not bracket > 0.0:
        return 0.0
    return math.exp(math.log(bracket) / (1.0 - qa))


def da_step(state: DAState, objective, hp: DAParams, rng, lower, upper, t: int) -> DAState:
    """One strategy chain (``2 * dim`` candidates) at iteration ``t >= 1``."""
    temperature = visiting_temperature(t, hp.t0, hp.qv)
    accept_temp = temperature / t
    dim = state.x.size
    x, f = state.x, state.f
    best_x, best_f = state.best_x, state.best_f
    for j in range(2 * dim):
        if j < dim:
            candidate = x + visit(hp.qv, temperature, dim, rng)
        else:
            candidate = x.copy()
            candidate[j - dim] += visit(hp.qv, temperature, 1, rng)[0]
        candidate = np.clip(candidate, lower, upper)
        fc = objective(candidate)
        if fc < f:
            x, f = candidate, fc
            if fc < best_f:
                best_x, best_f = candidate.copy(), fc
        elif math.isfinite(fc) and rng.random() <= acceptance_probability(fc - f, accept_temp, hp.qa):
            x, f = candidate, fc
    return DAState(x, f, best_x, best_f)


def _polish(state: DAState, ev, hp: DAParams) -> DAState:
    nm = BHParams(nm_max_iter=hp.local_max_iter)
    x, f = nelder_mead(ev, state.best_x, ev.lower, ev.upper, tol=nm.nm_tol,
                       max_iter=nm.nm_max_iter, init_frac=nm.nm_init_frac, f0=state.best_f)
    if f < state.best_f:
        return DAState(x, f, x.copy(), f)
    return state


def run(ev, x0, hp: DAParams, rng, generations: int) -> list[float]:
    history: list[float] = []
    try:
        x = np.array(x0, dtype=float)
        f = ev(x)
        state = DAState(x, f, x.copy(), f)
        if hp.local_search:
            state = _polish(state, ev, hp)
        t = 1
        for target in eval_targets(ev.budget, generations):
            while ev.n_evals < target:
                if visiting_temperature(t, hp.t0, hp.qv) / hp.t0 < hp.restart_ratio:
                    t = 1
                    x = rng.uniform(ev.lower, ev.upper)
                    state = DAState(x, ev(x), state.best_x, state.best_f)
                    if state.f < state.best_f:
                        state = DAState(x, state.f, x.copy(), state.f)
                previous = state.best_f
                state = da_step(state, ev, hp, rng, ev.lower, ev.upper, t)
                if hp.local_search and state.best_f < previous:
                    state = _polish(state, ev, hp)
                t += 1
            history.append(ev.best_f)
    except BudgetExhausted:
        pass
    return pad_history(history, generations, ev.best_f)
