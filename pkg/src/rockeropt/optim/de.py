"""Differential evolution, rand/1/bin with synchronous greedy replacement."""

from __future__ import annotations

import numpy as np

from ._core import BudgetExhausted, iteration_blocks, pad_history, seed_population
from .config import DEParams


def donor_indices(n: int, rng) -> np.ndarray:
    """Three distinct donors per target, none equal to the target itself."""
    picks = np.argsort(rng.random((n, n - 1)), axis=1)[:, :3]
    return picks + (picks >= np.arange(n)[:, None])


def de_trials(pop: np.ndarray, hp: DEParams, rng):
    """
    Mutants, crossover masks and (unclamped) trial vectors for a whole
    population.

    Each mask has at least one ``True`` entry, the forced coordinate, so
    every trial takes at least one coordinate from its mutant.
    """
    n, d = pop.shape
    idx = donor_indices(n, rng)
    mutants = pop[idx[:, 0]] + hp.F * (pop[idx[:, 1]] - pop[idx[:, 2]])
    mask = rng.random((n, d)) < hp.CR
    mask[np.arange(n), rng.integers(0, d, size=n)] = True
    trials = np.where(mask, mutants, pop)
    return mutants, mask, trials


def de_generation(pop, f, objective, hp: DEParams, rng, lower, upper):
    _, _, trials = de_trials(pop, hp, rng)
    trials = np.clip(trials, lower, upper)
    new_pop = pop.copy()
    new_f = f.copy()
    for i, trial in enumerate(trials):
        ft = objective(trial)
        if ft <= f[i]:
            new_pop[i] = trial
            new_f[i] = ft
    return new_pop, new_f


def run(ev, x0, hp: DEParams, rng, generations: int) -> list[float]:
    history: list[float] = []
    try:
        pop = seed_population(x0, hp.pop_size, rng, ev.lower, ev.upper)
        f = np.array([ev(p) for p in pop])
        total = max(ev.remaining // hp.pop_size, 0)
        for n_iter in iteration_blocks(total, generations):
            for _ in range(n_iter):
                pop, f = de_generation(pop, f, ev, hp, rng, ev.lower, ev.upper)
            history.append(ev.best_f)
    except BudgetExhausted:
        pass
    return pad_history(history, generations, ev.best_f)
