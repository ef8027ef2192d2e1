"""
Performance metrics of a rocker-bogie design.

Every function here is pure. Angles are returned in degrees, lengths in
mm and power in watts. ``evaluate_all`` chains geometry, forces and the
individual metrics into one :class:`MetricsReport`.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import InstabilityError, ParameterError
from .mechanism import ForceState, MechanismState, normal_forces, solve_geometry, traction_forces
from .model import DesignVector, ScenarioParams

__all__ = [
    "INDICATOR_HIGH",
    "MetricsReport",
    "evaluate_all",
    "indicators",
    "lateral_stability",
    "load_eq_error",
    "longitudinal_stability",
    "pitch",
    "power",
    "sinkage",
    "solve_forces",
    "stability_margin",
    "switching",
    "trafficability",
    "virtual_friction",
]

INDICATOR_HIGH = 1000.0


@dataclass(frozen=True)
class MetricsReport:
    theta_lat: float
    theta_long: float
    theta_stab: float
    power_P: float
    mu_star: float
    mu_spread: float
    z_rw: float
    theta_rover: float
    z_t: float
    eps1: float
    c_lat: float
    c_long: float
    c_traff: float
    switch_s: int

    def to_dict(self) -> dict:
        return asdict(self)


def lateral_stability(m: MechanismState, d: DesignVector) -> float:
    """Tip-over angle sideways; half the lateral track is the lever."""
    return math.degrees(math.atan((0.5 * d.l_rb) / m.z_com))


def longitudinal_stability(m: MechanismState) -> float:
    """
    Tip-over angle about the rear contact line.

    The angle alone does not certify stability: every wheel must also be
    loaded, which :func:`indicators` checks.
    """
    return math.degrees(math.atan(m.x_rear / m.z_com))


def stability_margin(theta_l: float, theta_r: float) -> float:
    return min(theta_l, theta_r)


def power(f: ForceState, s: ScenarioParams) -> float:
    """Resistive motor dissipation for the given wheel tractions, in watts."""
    if s.torque_const == 0.0:
        raise ParameterError("torque constant must be nonzero")
    radius = 0.5e-3 * s.wheel_diameter
    gain = s.motor_resistance * s.motor_gear**2 * radius**2 / s.torque_const**2
    return gain * sum(t * t for t in f.tractions)


def virtual_friction(f: ForceState) -> tuple[float, float]:
    """
    Worst traction-to-normal ratio and the spread of that ratio.

    Returns ``(inf, inf)`` when any wheel is unloaded: slip is then
    certain.
    """
    if min(f.normals) <= 0.0:
        return math.inf, math.inf
    ratios = [t / n for t, n in zip(f.tractions, f.normals)]
    hi = max(ratios)
    return hi, hi - min(ratios)


def sinkage(s: ScenarioParams, load_per_wheel: float, incline: float) -> float:
    """
    Static sinkage of a rigid wheel in Bekker soil, in mm.

    Parameters
    ----------
    s : ScenarioParams
        Supplies wheel size and soil moduli.
    load_per_wheel : float
        Vertical wheel load in newtons.
    incline : float
        Terrain inclination under the wheel in degrees.

    Notes
    -----
    The power law is evaluated in kN and metres so that the soil moduli
    can be used in their tabulated units.
    """
    if load_per_wheel < 0.0:
        raise ParameterError(f"wheel load must be nonnegative, got {load_per_wheel}")
    soil = s.soil
    width = 1e-3 * s.wheel_width
    diameter = 1e-3 * s.wheel_diameter
    denom = (3.0 - soil.n_exp) * (soil.k_c + width * soil.k_phi) * math.sqrt(diameter)
    if not denom > 0.0:
        raise ParameterError(f"sinkage denominator must be positive, got {denom}")
    base = 3.0 * (1e-3 * load_per_wheel) * math.cos(math.radians(incline)) / denom
    if base < 0.0:
        raise ParameterError(f"incline {incline} deg gives a negative normal load")
    return 1e3 * base ** (2.0 / (2.0 * soil.n_exp + 1.0))


def pitch(m: MechanismState) -> float:
    return 0.5 * (m.gamma1 + m.gamma2)


def trafficability(s: ScenarioParams, m: MechanismState) -> float:
    """
    Largest vertical gap between the wheel centres and the step edge
    while the bogie climbs an obstacle, in mm.

    Returns 0 when the bogie is too short to span the step or the
    expression is singular.
    """
    r = 0.5 * s.wheel_diameter
    h = s.obstacle_h
    span = m.s_bogie
    if span <= h:
        return 0.0
    # h^2 under the radical keeps the expression dimensionally consistent
    root = math.sqrt(span * span - h * h)
    num = r * root + (h - r) * h
    den = (h - r) * root - h * r
    if den == 0.0:
        return 0.0
    ratio = num / den
    return span / math.sqrt(ratio * ratio + 1.0)


def load_eq_error(m: MechanismState) -> float:
    """Signed offset of the bogie pivot from the bogie-contact midpoint (mm)."""
    return m.x_c - 0.5 * (m.x1 + m.x2)


def switching(alpha, C: float) -> int:
    """1 on rough terrain (some wheel inclined by more than ``C``), else 0."""
    return 1 if max(abs(a) for a in alpha) > C else 0


def indicators(
    theta_lat: float,
    theta_long: float,
    z_t: float,
    normals,
    s: ScenarioParams,
    d: DesignVector,
) -> tuple[float, float, float]:
    """Return ``(c_lat, c_long, c_traff)``, each 0 or 1000."""
    required = max(abs(a) for a in s.alpha)
    c_lat = INDICATOR_HIGH if theta_lat >= required else 0.0
    loaded = min(normals) > 0.0
    c_long = INDICATOR_HIGH if theta_long >= required and loaded else 0.0
    c_traff = INDICATOR_HIGH if z_t >= d.clearance_c else 0.0
    return c_lat, c_long, c_traff


def solve_forces(m: MechanismState, s: ScenarioParams) -> ForceState:
    """
    Normal and traction forces, with all normals zero when the lever
    balance fails so that the failure surfaces as lost stability.
    """
    try:
        forces = normal_forces(m, s)
    except InstabilityError:
        forces = ForceState(normals=(0.0,) * 6, tractions=(0.0,) * 6, total_weight=s.weight)
    return traction_forces(m, s, forces)


def evaluate_all(d: DesignVector, s: ScenarioParams) -> MetricsReport:
    m = solve_geometry(d, s)
    forces = solve_forces(m, s)

    theta_lat = lateral_stability(m, d)
    theta_long = longitudinal_stability(m)
    mu_star, mu_spread = virtual_friction(forces)
    if s.sinkage_load == "uniform":
        wheel_load = forces.total_weight / 6.0
    else:
        wheel_load = max(forces.normals)
    z_rw = sinkage(s, wheel_load, sum(s.alpha) / 6.0)
    z_t = trafficability(s, m)
    c_lat, c_long, c_traff = indicators(theta_lat, theta_long, z_t, forces.normals, s, d)

    return MetricsReport(
        theta_lat=theta_lat,
        theta_long=theta_long,
        theta_stab=stability_margin(theta_lat, theta_long),
        power_P=power(forces, s),
        mu_star=mu_star,
        mu_spread=mu_spread,
        z_rw=z_rw,
        theta_rover=pitch(m),
        z_t=z_t,
        eps1=load_eq_error(m),
        c_lat=c_lat,
        c_long=c_long,
        c_traff=c_traff,
        switch_s=switching(s.alpha, s.rough_threshold_C),
    )
