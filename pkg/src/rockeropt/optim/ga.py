"""
Real-coded genetic algorithm.

Tournament selection, single-point crossover on the gene vector,
per-gene gaussian mutation and elitism. Lower objective is fitter.
"""

from __future__ import annotations

import numpy as np

from ._core import BudgetExhausted, iteration_blocks, pad_history, seed_population
from .config import GAParams


def tournament(f: np.ndarray, k: int, rng) -> int:
    entrants = rng.integers(0, f.size, size=k)
    return int(entrants[np.argmin(f[entrants])])


def crossover(p1: np.ndarray, p2: np.ndarray, rate: float, rng) -> tuple[np.ndarray, np.ndarray]:
    if p1.size > 1 and rng.random() < rate:
        point = int(rng.integers(1, p1.size))
        return (
            np.concatenate([p1[:point], p2[point:]]),
            np.concatenate([p2[:point], p1[point:]]),
        )
    return p1.copy(), p2.copy()


def mutate(child: np.ndarray, rate: float, sigma: np.ndarray, rng) -> np.ndarray:
    hit = rng.random(child.size) < rate
    if hit.any():
        child = child.copy()
        child[hit] += rng.normal(0.0, sigma[hit])
    return child


def ga_generation(pop, f, objective, hp: GAParams, rng, lower, upper):
    """
    Produce the next population and its objective values.

    The ``elitism`` best individuals are carried over unchanged, so the
    generation best never worsens. Only the offspring are evaluated.
    """
    n = len(pop)
    sigma = hp.mutation_scale * (upper - lower)
    elite = np.argsort(f, kind="stable")[: hp.elitism]
    n_children = n - hp.elitism
    children = []
    while len(children) < n_children:
        p1 = pop[tournament(f, hp.tournament_k, rng)]
        p2 = pop[tournament(f, hp.tournament_k, rng)]
        for child in crossover(p1, p2, hp.crossover_rate, rng):
            children.append(np.clip(mutate(child, hp.mutation_rate, sigma, rng), lower, upper))
    children = children[:n_children]
    child_f = [objective(c) for c in children]
    new_pop = np.vstack([pop[elite]] + [np.asarray(children).reshape(-1, pop.shape[1])])
    new_f = np.concatenate([f[elite], np.asarray(child_f, dtype=float)])
    return new_pop, new_f


def run(ev, x0, hp: GAParams, rng, generations: int) -> list[float]:
    history: list[float] = []
    try:
        pop = seed_population(x0, hp.pop_size, rng, ev.lower, ev.upper)
        f = np.array([ev(p) for p in pop])
        total = max(ev.remaining // (hp.pop_size - hp.elitism), 0)
        for n_iter in iteration_blocks(total, generations):
            for _ in range(n_iter):
                pop, f = ga_generation(pop, f, ev, hp, rng, ev.lower, ev.upper)
            history.append(ev.best_f)
    except BudgetExhausted:
        pass
    return pad_history(history, generations, ev.best_f)
