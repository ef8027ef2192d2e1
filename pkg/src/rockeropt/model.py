"""
Core domain types for the rocker-bogie design problem.

Units follow one fixed convention: lengths in millimetres, angles in
degrees, masses in kilograms, forces in newtons and power in watts. All
types are frozen dataclasses, so they can be shared between threads and
processes freely.

The search space is ten-dimensional. The two bogie arm half-lengths are
assumed equal, so a single ``x_b`` describes both.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields
from enum import Enum
from typing import Any

import numpy as np

from .errors import DimensionError, ParameterError

__all__ = [
    "DESIGN_FIELDS",
    "N_DIM",
    "BoundsSet",
    "DesignVector",
    "FitnessWeights",
    "InitStrategy",
    "ScenarioParams",
    "SoilParams",
    "clamp",
    "default_bounds",
    "from_design",
    "initial_point",
    "to_design",
]

DESIGN_FIELDS = (
    "x_r",
    "y_r",
    "z_r",
    "gamma_rb",
    "x_b",
    "y_b1",
    "y_b2",
    "clearance_c",
    "l_rb",
    "gear_j",
)
N_DIM = len(DESIGN_FIELDS)


@dataclass(frozen=True)
class DesignVector:
    """
    Geometric and mechanical decision variables of one suspension design.

    Attributes
    ----------
    x_r, y_r : float
        Horizontal and vertical extent of the rocker rear arm (mm).
    z_r : float
        Height of the rocker pivot above the wheel centres (mm).
    gamma_rb : float
        Included angle between the rocker rear and front arms (deg).
    x_b : float
        Bogie half-length, shared by both bogie arms (mm).
    y_b1, y_b2 : float
        Vertical drop from the bogie pivot to the front and rear bogie
        wheel centres (mm).
    clearance_c : float
        Ground clearance (mm).
    l_rb : float
        Lateral track between left and right wheel rows (mm).
    gear_j : float
        Gear ratio of the differential linking both rockers.
    """

    x_r: float
    y_r: float
    z_r: float
    gamma_rb: float
    x_b: float
    y_b1: float
    y_b2: float
    clearance_c: float
    l_rb: float
    gear_j: float

    def to_dict(self) -> dict[str, float]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> DesignVector:
        return cls(**{name: float(data[name]) for name in DESIGN_FIELDS})


@dataclass(frozen=True)
class BoundsSet:
    """Box bounds of the design space, ordered as ``DESIGN_FIELDS``."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self):
        lower = tuple(float(v) for v in self.lower)
        upper = tuple(float(v) for v in self.upper)
        if len(lower) != len(upper):
            raise DimensionError(
                f"lower and upper differ in length ({len(lower)} != {len(upper)})"
            )
        for i, (lo, hi) in enumerate(zip(lower, upper)):
            if not lo < hi:
                raise ParameterError(f"empty interval at index {i}: [{lo}, {hi}]")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def ndim(self) -> int:
        return len(self.lower)

    @property
    def lower_array(self) -> np.ndarray:
        return np.array(self.lower)

    @property
    def upper_array(self) -> np.ndarray:
        return np.array(self.upper)

    @property
    def span(self) -> np.ndarray:
        return self.upper_array - self.lower_array

    def to_dict(self) -> dict[str, list[float]]:
        return {"lower": list(self.lower), "upper": list(self.upper)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> BoundsSet:
        return cls(lower=tuple(data["lower"]), upper=tuple(data["upper"]))


@dataclass(frozen=True)
class FitnessWeights:
    """Weights of the nine fitness terms."""

    w1: float = -2.0
    w2: float = -2.0
    w3: float = 2.0
    w4: float = 1.0
    w5: float = 5.0
    w6: float = -3.0
    w7: float = 2.0
    w8: float = -1.0
    w9: float = -1.0

    def __post_init__(self):
        for f in fields(self):
            value = float(getattr(self, f.name))
            if not math.isfinite(value):
                raise ParameterError(f"weight {f.name} is not finite")
            object.__setattr__(self, f.name, value)

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, f.name) for f in fields(self))

    def scaled(self, factor: float) -> FitnessWeights:
        return FitnessWeights(*(factor * w for w in self.as_tuple()))

    def to_dict(self) -> dict[str, float]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> FitnessWeights:
        return cls(**data)


@dataclass(frozen=True)
class SoilParams:
    """
    Bekker soil parameters plus the wheel/ground friction coefficient.

    ``k_c`` is in kN/m^(n+1) and ``k_phi`` in kN/m^(n+2). Defaults are dry
    sand (moisture content 0 %, which enters no formula and is not stored).
    """

    n_exp: float = 1.10
    k_c: float = 0.1
    k_phi: float = 3.9
    cohesion_c: float = 0.15
    phi: float = 28.0
    mu: float = 0.6

    def __post_init__(self):
        if not 0.0 < self.n_exp < 3.0:
            raise ParameterError(f"n_exp must lie in (0, 3), got {self.n_exp}")
        # k_c + b*k_phi > 0 for every b > 0
        if self.k_c < 0.0 or self.k_phi < 0.0 or self.k_c + self.k_phi <= 0.0:
            raise ParameterError("k_c and k_phi must be nonnegative and not both zero")
        if not self.mu > 0.0:
            raise ParameterError(f"mu must be positive, got {self.mu}")

    def to_dict(self) -> dict[str, float]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SoilParams:
        return cls(**data)


SINKAGE_LOADS = ("uniform", "max_normal")


@dataclass(frozen=True)
class ScenarioParams:
    """
    Fixed evaluation context for a design.

    ``alpha`` holds the terrain inclination under each of the six wheels
    in degrees; indices 0-2 are the left side (front, middle, rear) and
    3-5 the right side. The defaults describe a rough scenario where every
    wheel sits on a 15 degree incline, above the 10 degree threshold.
    """

    wheel_diameter: float = 170.0
    wheel_width: float = 75.0
    rover_mass: float = 10.0
    gravity: float = 9.81
    alpha: tuple[float, ...] = (15.0,) * 6
    obstacle_h: float = 170.0
    rough_threshold_C: float = 10.0
    motor_resistance: float = 1.0
    motor_gear: float = 100.0
    torque_const: float = 0.01
    soil: SoilParams = field(default_factory=SoilParams)
    rolling_resistance: float = 0.05
    sinkage_load: str = "uniform"

    def __post_init__(self):
        alpha = tuple(float(a) for a in self.alpha)
        if len(alpha) != 6:
            raise DimensionError(f"alpha needs 6 entries, got {len(alpha)}")
        object.__setattr__(self, "alpha", alpha)
        if isinstance(self.soil, dict):
            object.__setattr__(self, "soil", SoilParams.from_dict(self.soil))
        for name in ("wheel_diameter", "wheel_width", "rover_mass", "gravity", "torque_const"):
            if not getattr(self, name) > 0.0:
                raise ParameterError(f"{name} must be positive, got {getattr(self, name)}")
        if self.obstacle_h < 0.0:
            raise ParameterError(f"obstacle_h must be nonnegative, got {self.obstacle_h}")
        if self.rolling_resistance < 0.0:
            raise ParameterError("rolling_resistance must be nonnegative")
        if self.sinkage_load not in SINKAGE_LOADS:
            raise ParameterError(f"sinkage_load must be one of {SINKAGE_LOADS}")

    @property
    def weight(self) -> float:
        """Total rover weight in newtons."""
        return self.rover_mass * self.gravity

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["alpha"] = list(self.alpha)
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ScenarioParams:
        data = dict(data)
        if "soil" in data:
            data["soil"] = SoilParams.from_dict(data["soil"])
        if "alpha" in data:
            data["alpha"] = tuple(data["alpha"])
        return cls(**data)


class InitStrategy(str, Enum):
    """How the starting point of a run is chosen."""

    LOWER_BOUND = "LowerBound"
    UPPER_BOUND = "UpperBound"
    MEAN = "Mean"
    RANDOM = "Random"


def default_bounds() -> BoundsSet:
    """
    Default variable bounds.

    Clearance spans [20, 100] mm, lateral track [50, 500] mm and the
    gear ratio [1, 5].
    """
    return BoundsSet(
        lower=(100.0, 100.0, 100.0, 90.0, 100.0, 100.0, 100.0, 20.0, 50.0, 1.0),
        upper=(500.0, 300.0, 200.0, 180.0, 200.0, 300.0, 300.0, 100.0, 500.0, 5.0),
    )


def _check_len(x, n):
    if len(x) != n:
        raise DimensionError(f"expected a vector of length {n}, got {len(x)}")


def clamp(x, b: BoundsSet) -> np.ndarray:
    """Project ``x`` onto the box ``b`` coordinate by coordinate."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise DimensionError(f"expected a flat vector, got shape {x.shape}")
    _check_len(x, b.ndim)
    return np.minimum(b.upper_array, np.maximum(b.lower_array, x))


def initial_point(strategy, b: BoundsSet, rng: np.random.Generator) -> np.ndarray:
    """
    Starting point for a run.

    ``Random`` draws one uniform value per coordinate from ``rng``; the
    other strategies consume no random numbers.
    """
    strategy = InitStrategy(strategy)
    lower, upper = b.lower_array, b.upper_array
    if strategy is InitStrategy.LOWER_BOUND:
        return lower
    if strategy is InitStrategy.UPPER_BOUND:
        return upper
    if strategy is InitStrategy.MEAN:
        return 0.5 * (lower + upper)
    return rng.uniform(lower, upper)


def to_design(x) -> DesignVector:
    _check_len(x, N_DIM)
    return DesignVector(*(float(v) for v in x))


def from_design(d: DesignVector) -> np.ndarray:
    return np.array([getattr(d, name) for name in DESIGN_FIELDS], dtype=float)
