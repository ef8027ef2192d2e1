"""
Planar quasi-static surrogate of the rocker-bogie linkage.

The rocker pivot sits at the origin. Its rear arm ends at (-x_r, -y_r),
where the rear wheel is mounted; the front arm has the same length and
is rotated counter-clockwise from the rear arm by the included angle
gamma_rb. The bogie pivot sits at the end of the front arm and carries
two wheels at +-x_b horizontally.

Loads are found by lever balance: each side carries half the weight,
split between the rear wheel and the bogie pivot by moments, and the
bogie load is split again between its two wheels. Traction is shared
equally by the six wheels.

Wheel order in every 6-vector is (left front, left middle, left rear,
right front, right middle, right rear); "front" and "middle" are the
front and rear bogie wheels.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import GeometryError, InstabilityError
from .model import DesignVector, ScenarioParams

__all__ = [
    "ForceState",
    "MechanismState",
    "normal_forces",
    "solve_geometry",
    "traction_forces",
]


@dataclass(frozen=True)
class MechanismState:
    """
    Geometry of one design, all horizontal distances measured from the
    centre of mass (taken at the rocker pivot) in mm.
    """

    z_com: float
    x_rear: float
    x_bp: float
    x1: float
    x2: float
    s_bogie: float
    gamma1: float
    gamma2: float
    x_c: float

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class ForceState:
    normals: tuple[float, ...]
    tractions: tuple[float, ...]
    total_weight: float

    def to_dict(self) -> dict:
        return {
            "normals": list(self.normals),
            "tractions": list(self.tractions),
            "total_weight": self.total_weight,
        }


def solve_geometry(d: DesignVector, s: ScenarioParams) -> MechanismState:
    arm = math.hypot(d.x_r, d.y_r)
    if arm == 0.0:
        raise GeometryError("rocker arm has zero length")
    rear_dir = math.atan2(-d.y_r, -d.x_r)
    front_dir = rear_dir + math.radians(d.gamma_rb)
    x_bp = abs(arm * math.cos(front_dir))

    alpha = s.alpha
    left_tilt = (alpha[0] + alpha[1] + alpha[2]) / 3.0
    right_tilt = (alpha[3] + alpha[4] + alpha[5]) / 3.0

    return MechanismState(
        z_com=d.z_r + 0.5 * s.wheel_diameter,
        x_rear=d.x_r,
        x_bp=x_bp,
        x1=x_bp + d.x_b,
        x2=x_bp - d.x_b,
        s_bogie=math.hypot(2.0 * d.x_b, d.y_b1 - d.y_b2),
        gamma1=d.gamma_rb + left_tilt,
        gamma2=d.gamma_rb + right_tilt,
        x_c=x_bp,
    )


def normal_forces(m: MechanismState, s: ScenarioParams) -> ForceState:
    """
    Wheel normal forces from the lever balance; tractions are left at zero.

    Raises
    ------
    InstabilityError
        If the rocker or bogie lever has a nonpositive span.
    """
    span = m.x_bp + m.x_rear
    bogie_span = m.x1 - m.x2
    if span <= 0.0 or bogie_span <= 0.0:
        raise InstabilityError(
            f"nonpositive lever arm (rocker span {span}, bogie span {bogie_span})"
        )
    weight = s.weight
    half = 0.5 * weight
    n_rear = half * m.x_bp / span
    n_pivot = half * m.x_rear / span
    n_front = n_pivot * (m.x_bp - m.x2) / bogie_span
    n_mid = n_pivot * (m.x1 - m.x_bp) / bogie_span
    side = (n_front, n_mid, n_rear)
    return ForceState(normals=side + side, tractions=(0.0,) * 6, total_weight=weight)


def traction_forces(
    m: MechanismState, s: ScenarioParams, forces: ForceState | None = None
) -> ForceState:
    """
    Attach equal-share tractions to ``forces`` (computed from ``m`` if
    omitted).

    The drawbar pull needed on the mean incline is the downslope weight
    component plus rolling resistance. A downhill scenario needs no
    drive, so the pull is floored at zero.
    """
    if forces is None:
        forces = normal_forces(m, s)
    weight = forces.total_weight
    incline = math.radians(sum(s.alpha) / 6.0)
    pull = weight * math.sin(incline) + s.rolling_resistance * weight * math.cos(incline)
    share = max(pull, 0.0) / 6.0
    return ForceState(normals=forces.normals, tractions=(share,) * 6, total_weight=weight)
