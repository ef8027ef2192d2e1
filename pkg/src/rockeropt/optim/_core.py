"""Budget accounting and bookkeeping shared by every optimizer."""

from __future__ import annotations

import math

import numpy as np


class BudgetExhausted(Exception):
    """Raised by :class:`Evaluator` instead of exceeding the evaluation budget."""


class Evaluator:
    """
    Clamp, count and remember the best point.

    Every point is projected onto ``[lower, upper]`` before the objective
    sees it. NaN objective values are treated as ``+inf``.
    """

    def __init__(self, objective, lower: np.ndarray, upper: np.ndarray, budget: int):
        self.objective = objective
        self.lower = lower
        self.upper = upper
        self.budget = budget
        self.n_evals = 0
        self.best_x = None
        self.best_f = math.inf

    @property
    def remaining(self) -> int:
        return self.budget - self.n_evals

    def __call__(self, x) -> float:
        if self.n_evals >= self.budget:
            raise BudgetExhausted
        x = np.minimum(self.upper, np.maximum(self.lower, x))
        self.n_evals += 1
        f = float(self.objective(x))
        if math.isnan(f):
            f = math.inf
        if f < self.best_f or self.best_x is None:
            self.best_f = f
            self.best_x = x.copy()
        return f


def iteration_blocks(total: int, generations: int) -> list[int]:
    """Split ``total`` iterations into ``generations`` near-equal blocks."""
    return [total * (g + 1) // generations - total * g // generations for g in range(generations)]


def eval_targets(budget: int, generations: int) -> list[int]:
    """Cumulative evaluation count at which each generation ends."""
    return [budget * (g + 1) // generations for g in range(generations)]


def pad_history(history: list[float], generations: int, best_f: float) -> list[float]:
    """
    Fill generations that never ran because the budget ran out.

    The best-so-far value cannot change once no evaluations remain, so the
    padded entries are exact.
    """
    history.extend([best_f] * (generations - len(history)))
    return history


def seed_population(x0: np.ndarray, n: int, rng: np.random.Generator,
                    lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """Population whose first member is ``x0``; the rest are uniform."""
    pop = rng.uniform(lower, upper, size=(n, lower.size))
    pop[0] = x0
    return pop
