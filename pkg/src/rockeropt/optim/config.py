"""Optimizer configuration records and the run result."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Union

import numpy as np

from ..errors import ConfigError
from ..model import InitStrategy

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
    "default_hyperparams",
]


class Algorithm(str, Enum):
    PSO = "PSO"
    GA = "GA"
    DE = "DE"
    SA = "SA"
    BH = "BH"
    DA = "DA"


def _unit(name, value):
    if not 0.0 <= value <= 1.0:
        raise ConfigError(f"{name} must lie in [0, 1], got {value}")


def _positive(name, value):
    if not value > 0:
        raise ConfigError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class PSOParams:
    swarm_size: int = 30
    omega: float = 0.7
    c1: float = 1.5
    c2: float = 1.5
    vmax_frac: float = 0.2  # per-coordinate speed limit as a fraction of the range

    def validate(self):
        if self.swarm_size < 4:
            raise ConfigError("swarm_size must be at least 4")
        if self.omega < 0 or self.c1 < 0 or self.c2 < 0:
            raise ConfigError("omega, c1 and c2 must be nonnegative")
        _positive("vmax_frac", self.vmax_frac)


@dataclass(frozen=True)
class GAParams:
    pop_size: int = 50
    tournament_k: int = 3
    crossover_rate: float = 0.9
    mutation_rate: float = 0.1
    mutation_scale: float = 0.1  # gaussian sigma as a fraction of the range
    elitism: int = 1

    def validate(self):
        if self.pop_size < 4:
            raise ConfigError("pop_size must be at least 4")
        if not 1 <= self.tournament_k <= self.pop_size:
            raise ConfigError("tournament_k must lie in [1, pop_size]")
        _unit("crossover_rate", self.crossover_rate)
        _unit("mutation_rate", self.mutation_rate)
        if self.mutation_scale < 0:
            raise ConfigError("mutation_scale must be nonnegative")
        if not 0 <= self.elitism < self.pop_size:
            raise ConfigError("elitism must lie in [0, pop_size)")


@dataclass(frozen=True)
class DEParams:
    """rand/1/bin differential evolution."""

    pop_size: int = 40
    F: float = 0.8
    CR: float = 0.9

    def validate(self):
        if self.pop_size < 4:
            raise ConfigError("pop_size must be at least 4 (three donors plus the target)")
        if not 0.0 < self.F <= 2.0:
            raise ConfigError(f"F must lie in (0, 2], got {self.F}")
        _unit("CR", self.CR)


@dataclass(frozen=True)
class SAParams:
    """
    Simulated annealing with geometric cooling per generation.

    The starting temperature is ``t0_factor * |f(x0)|`` (1 when that is 0
    or not finite). Proposal sigma is ``step_scale * range``, multiplied
    by ``(T / T0) ** step_decay``; the default ``step_decay = 0`` keeps
    it fixed.
    """

    t0_factor: float = 10.0
    cooling: float = 0.95
    step_scale: float = 0.1
    step_decay: float = 0.0

    def validate(self):
        _positive("t0_factor", self.t0_factor)
        if not 0.0 < self.cooling <= 1.0:
            raise ConfigError(f"cooling must lie in (0, 1], got {self.cooling}")
        _positive("step_scale", self.step_scale)
        if self.step_decay < 0:
            raise ConfigError("step_decay must be nonnegative")


@dataclass(frozen=True)
class BHParams:
    """Basin hopping around a bounded Nelder-Mead local search."""

    step_frac: float = 0.1
    temperature: float = 1.0
    nm_alpha: float = 1.0
    nm_gamma: float = 2.0
    nm_rho: float = 0.5
    nm_sigma: float = 0.5
    nm_tol: float = 1e-8
    nm_max_iter: int = 500
    nm_init_frac: float = 0.05

    def validate(self):
        if self.step_frac < 0:
            raise ConfigError("step_frac must be nonnegative")
        _positive("temperature", self.temperature)
        _positive("nm_alpha", self.nm_alpha)
        if self.nm_gamma <= 1.0:
            raise ConfigError("nm_gamma must exceed 1")
        if not 0.0 < self.nm_rho < 1.0 or not 0.0 < self.nm_sigma < 1.0:
            raise ConfigError("nm_rho and nm_sigma must lie in (0, 1)")
        _positive("nm_tol", self.nm_tol)
        if self.nm_max_iter < 1:
            raise ConfigError("nm_max_iter must be at least 1")
        _positive("nm_init_frac", self.nm_init_frac)


@dataclass(frozen=True)
class DAParams:
    """Generalized (Tsallis) simulated annealing with restarts."""

    qv: float = 2.62
    qa: float = -5.0
    t0: float = 5230.0
    restart_ratio: float = 2e-5
    local_search: bool = False
    local_max_iter: int = 500

    def validate(self):
        if not 1.0 < self.qv < 3.0:
            raise ConfigError(f"qv must lie in (1, 3), got {self.qv}")
        if not self.qa < 1.0:
            raise ConfigError(f"qa must be below 1, got {self.qa}")
        _positive("t0", self.t0)
        if not 0.0 < self.restart_ratio < 1.0:
            raise ConfigError("restart_ratio must lie in (0, 1)")
        if self.local_max_iter < 1:
            raise ConfigError("local_max_iter must be at least 1")


Hyperparams = Union[PSOParams, GAParams, DEParams, SAParams, BHParams, DAParams]

_PARAMS = {
    Algorithm.PSO: PSOParams,
    Algorithm.GA: GAParams,
    Algorithm.DE: DEParams,
    Algorithm.SA: SAParams,
    Algorithm.BH: BHParams,
    Algorithm.DA: DAParams,
}


def default_hyperparams(algorithm) -> Hyperparams:
    return _PARAMS[Algorithm(algorithm)]()


def population_size(hp) -> int:
    if isinstance(hp, PSOParams):
        return hp.swarm_size
    if isinstance(hp, (GAParams, DEParams)):
        return hp.pop_size
    return 1


@dataclass(frozen=True)
class OptimizerConfig:
    """
    One optimizer run.

    ``hyperparams`` may be given as a dict of overrides; it is turned into
    the parameter record of ``algorithm``.
    """

    algorithm: Algorithm
    budget_evals: int = 20000
    generations: int = 100
    seed: int = 0
    init_strategy: InitStrategy = InitStrategy.RANDOM
    hyperparams: Any = None

    def __post_init__(self):
        try:
            algorithm = Algorithm(self.algorithm)
        except ValueError:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}") from None
        try:
            strategy = InitStrategy(self.init_strategy)
        except ValueError:
            raise ConfigError(f"unknown init strategy {self.init_strategy!r}") from None
        object.__setattr__(self, "algorithm", algorithm)
        object.__setattr__(self, "init_strategy", strategy)

        cls = _PARAMS[algorithm]
        hp = self.hyperparams
        if hp is None:
            hp = cls()
        elif isinstance(hp, dict):
            try:
                hp = cls(**hp)
            except TypeError as exc:
                raise ConfigError(f"bad {algorithm.value} hyperparameters: {exc}") from None
        elif not isinstance(hp, cls):
            raise ConfigError(f"{algorithm.value} needs {cls.__name__}, got {type(hp).__name__}")
        hp.validate()
        object.__setattr__(self, "hyperparams", hp)

        if not isinstance(self.generations, int) or self.generations < 1:
            raise ConfigError(f"generations must be a positive integer, got {self.generations}")
        if not isinstance(self.budget_evals, int) or self.budget_evals < population_size(hp):
            raise ConfigError(
                f"budget_evals must be an integer of at least {population_size(hp)}, "
                f"got {self.budget_evals}"
            )
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def replace(self, **changes) -> OptimizerConfig:
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm.value,
            "budget_evals": self.budget_evals,
            "generations": self.generations,
            "seed": self.seed,
            "init_strategy": self.init_strategy.value,
            "hyperparams": dataclasses.asdict(self.hyperparams),
        }

    @classmethod
    def from_dict(cls, data: dict) -> OptimizerConfig:
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown run fields: {sorted(unknown)}")
        if "algorithm" not in data:
            raise ConfigError("run entry needs an 'algorithm'")
        return cls(**data)


@dataclass
class RunResult:
    best_x: np.ndarray
    best_f: float
    history: list[float]
    evals_used: int
    wall_time: float
    algorithm: str = ""
    init_strategy: str = ""
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "init_strategy": self.init_strategy,
            "seed": self.seed,
            "best_x": self.best_x.tolist(),
            "best_f": self.best_f,
            "history": list(self.history),
            "evals_used": self.evals_used,
            "wall_time": self.wall_time,
        }
