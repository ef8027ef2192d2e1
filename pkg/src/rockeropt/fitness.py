"""
Scalar fitness of a design and the minimization objective built on it.

Fitness is to be maximized. Optimizers minimize ``objective``, its
additive inverse, evaluated after clamping into the design bounds.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

import numpy as np

from .errors import EvaluationError, RockerOptError
from .mechanism import solve_geometry
from .metrics import INDICATOR_HIGH, MetricsReport, evaluate_all, load_eq_error
from .model import BoundsSet, DesignVector, FitnessWeights, ScenarioParams, default_bounds

__all__ = ["ObjectiveContext", "fitness", "fitness_upper_bound", "objective"]


def fitness(r: MetricsReport, w: FitnessWeights) -> float:
    """
    Weighted sum of the nine metric terms.

    The switching value gates traction (rough terrain) against power
    (benign terrain): with ``s = 1`` the power term is multiplied by zero.

    Raises
    ------
    EvaluationError
        If the result is not finite.
    """
    s = r.switch_s
    value = (
        w.w1 * s * r.mu_star
        + w.w2 * r.mu_spread
        + w.w3 * (s - 1) * r.power_P
        + w.w4 * r.c_lat
        + w.w5 * r.c_long
        + w.w6 * r.eps1
        + w.w7 * r.c_traff
        + w.w8 * r.z_rw
        + w.w9 * r.theta_rover
    )
    if not math.isfinite(value):
        raise EvaluationError(f"fitness is not finite ({value})")
    return value


@dataclass
class ObjectiveContext:
    """
    Everything ``objective`` needs besides the point itself.

    The evaluation counter is guarded by a lock so the context can be
    shared by threads; it restarts at zero when the context is pickled
    into another process.
    """

    weights: FitnessWeights = field(default_factory=FitnessWeights)
    scenario: ScenarioParams = field(default_factory=ScenarioParams)
    bounds: BoundsSet = field(default_factory=default_bounds)
    eval_counter: int = 0

    def __post_init__(self):
        self._lock = threading.Lock()
        self._lower = self.bounds.lower
        self._upper = self.bounds.upper

    def __getstate__(self):
        state = self.__dict__.copy()
        del state["_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    def __call__(self, x) -> float:
        return objective(x, self)

    def _tick(self):
        with self._lock:
            self.eval_counter += 1


def objective(x, ctx: ObjectiveContext) -> float:
    """
    Negated fitness of ``x`` clamped into ``ctx.bounds``.

    Points whose metrics cannot be evaluated return ``+inf`` so that
    optimizers simply reject them.
    """
    ctx._tick()
    values = x.tolist() if isinstance(x, np.ndarray) else list(x)
    if len(values) != len(ctx._lower):
        # dimension errors are caller bugs, not bad points
        raise ValueError(f"expected {len(ctx._lower)} values, got {len(values)}")
    design = DesignVector(
        *(min(hi, max(lo, v)) for v, lo, hi in zip(values, ctx._lower, ctx._upper))
    )
    try:
        return -fitness(evaluate_all(design, ctx.scenario), ctx.weights)
    except (RockerOptError, ArithmeticError):
        return math.inf


def fitness_upper_bound(
    weights: FitnessWeights,
    scenario: ScenarioParams,
    bounds: BoundsSet,
    n_samples: int = 4096,
    seed: int = 0,
) -> float:
    """
    Numerical upper bound on fitness over ``bounds``.

    Valid for weight vectors with the default sign pattern: penalties
    on friction, spread, sinkage and pitch are nonpositive and the power
    weight is nonnegative, so those terms never add to fitness. The
    bound is the sum of the positive indicator weights times 1000 plus
    the largest load-equalization contribution found on the bound
    corners and ``n_samples`` uniform samples.
    """
    rng = np.random.default_rng(seed)
    lower, upper = bounds.lower_array, bounds.upper_array
    corners = np.array(np.meshgrid(*zip(lower, upper))).reshape(bounds.ndim, -1).T
    samples = np.vstack([corners, rng.uniform(lower, upper, size=(n_samples, bounds.ndim))])
    worst = 0.0
    for row in samples:
        m = solve_geometry(DesignVector(*row.tolist()), scenario)
        worst = max(worst, abs(load_eq_error(m)))
    bonus = sum(max(w, 0.0) for w in (weights.w4, weights.w5, weights.w7)) * INDICATOR_HIGH
    return bonus + abs(weights.w6) * worst
