"""Detector parameters, worldlines, and retarded kinematics.

The detector is a pointlike oscillator of bare mass ``m0`` whose internal
coordinate couples linearly (strength ``lambda0``) to a massless scalar
field along its worldline.  Radiation reaction turns it into a damped
oscillator with damping constant ``gamma = lambda0^2 / (8 pi m0)`` and
oscillation frequency ``omega = sqrt(omega_r^2 - gamma^2)``, where
``omega_r`` is the renormalized natural frequency.  Natural units
(c = 1) throughout; ``hbar`` and ``m0`` are explicit fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

from .errors import NonPositiveInputError, OverDampedError, UndefinedRetardedTimeError

__all__ = [
    "DetectorParams",
    "derive_params",
    "params_from_omega",
    "UniformAcceleration",
    "Inertial",
    "Trajectory",
    "SpacetimePoint",
    "Violation",
    "ValidationReport",
    "validate_params",
    "trajectory_position",
    "retarded_kinematics",
]


@dataclass(frozen=True)
class DetectorParams:
    """Coupling and oscillator constants of one detector.

    Attributes
    ----------
    lambda0 : float
        Detector-field coupling; the perturbative expansion parameter.
    m0 : float
        Bare mass of the internal oscillator.
    hbar : float
        Planck constant (1 in natural units).
    omega_r : float
        Renormalized natural frequency (cutoff effects absorbed).
    gamma : float
        Damping constant, ``lambda0**2 / (8*pi*m0)``.
    omega : float
        Under-damped oscillation frequency ``sqrt(omega_r**2 - gamma**2)``.
    """

    lambda0: float
    m0: float = 1.0
    hbar: float = 1.0
    omega_r: float = 1.0
    gamma: float = field(init=False, default=0.0)
    omega: float = field(init=False, default=0.0)

    def __post_init__(self):
        if self.lambda0 <= 0:
            raise NonPositiveInputError(f"lambda0 must be > 0, got {self.lambda0}")
        if self.m0 <= 0:
            raise NonPositiveInputError(f"m0 must be > 0, got {self.m0}")
        if self.hbar <= 0:
            raise NonPositiveInputError(f"hbar must be > 0, got {self.hbar}")
        if self.omega_r <= 0:
            raise NonPositiveInputError(f"omega_r must be > 0, got {self.omega_r}")
        gamma = self.lambda0**2 / (8.0 * math.pi * self.m0)
        if gamma >= self.omega_r:
            raise OverDampedError(
                f"gamma={gamma:g} >= omega_r={self.omega_r:g}: over-damped")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "omega",
                           math.sqrt(self.omega_r**2 - gamma**2))


def derive_params(lambda0: float, m0: float = 1.0, hbar: float = 1.0,
                  omega_r: float = 1.0) -> DetectorParams:
    """Build DetectorParams with gamma and omega populated."""
    return DetectorParams(lambda0=lambda0, m0=m0, hbar=hbar, omega_r=omega_r)


def params_from_omega(lambda0: float, omega: float, m0: float = 1.0,
                      hbar: float = 1.0) -> DetectorParams:
    """Build params from the observed oscillation frequency instead of omega_r.

    All plots and tabulated values are labeled by omega, so this is the
    user-facing constructor; omega_r is back-computed as
    ``sqrt(omega**2 + gamma**2)``.
    """
    if omega <= 0:
        raise NonPositiveInputError(f"omega must be > 0, got {omega}")
    if m0 <= 0:
        raise NonPositiveInputError(f"m0 must be > 0, got {m0}")
    gamma = lambda0**2 / (8.0 * math.pi * m0)
    omega_r = math.hypot(omega, gamma)
    return DetectorParams(lambda0=lambda0, m0=m0, hbar=hbar, omega_r=omega_r)


@dataclass(frozen=True)
class UniformAcceleration:
    """Hyperbolic worldline z(tau) = (sinh(a tau)/a, cosh(a tau)/a, 0, 0)."""

    a: float

    def __post_init__(self):
        if self.a <= 0:
            raise NonPositiveInputError(
                f"proper acceleration must be > 0, got {self.a}")


@dataclass(frozen=True)
class Inertial:
    """Constant-velocity worldline z(tau) = (g_L tau, g_L v tau + x_a + d, 0, 0).

    v, x_a and d fix the worldline but drop out of the vacuum correlators.
    """

    v: float = 0.0
    x_a: float = 0.0
    d: float = 0.0

    def __post_init__(self):
        if abs(self.v) >= 1.0:
            raise NonPositiveInputError(f"|v| must be < 1, got {self.v}")

    @property
    def lorentz_factor(self) -> float:
        return 1.0 / math.sqrt(1.0 - self.v**2)


Trajectory = Union[UniformAcceleration, Inertial]


@dataclass(frozen=True)
class SpacetimePoint:
    """Minkowski event (t, x1, x2, x3) with light-cone helpers."""

    t: float
    x1: float
    x2: float = 0.0
    x3: float = 0.0

    @property
    def rho(self) -> float:
        return math.hypot(self.x2, self.x3)

    @property
    def u(self) -> float:
        """Retarded null coordinate t - x1."""
        return self.t - self.x1

    @property
    def v(self) -> float:
        """Advanced null coordinate t + x1."""
        return self.t + self.x1


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    value: float
    severity: str = "error"   # "error" | "warning"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple

    @property
    def ok(self) -> bool:
        return len(self.violations) == 0

    @property
    def hard_errors(self) -> tuple:
        return tuple(v for v in self.violations if v.severity == "error")

    def __str__(self):
        if self.ok:
            return "ok"
        return "; ".join(f"{v.code}[{v.severity}]: {v.message}"
                         for v in self.violations)


def validate_params(params: DetectorParams, traj: Trajectory) -> ValidationReport:
    """Check the perturbative validity region; never raises.

    lambda0 >= 1 and a >= 1 are soft warnings (the artefact-reproduction runs
    deliberately use such values); a <= 0, |v| >= 1 and over-damping are hard.
    """
    out = []
    if params.lambda0 >= 1.0:
        out.append(Violation(
            "PerturbationViolated",
            f"lambda0={params.lambda0:g} >= 1 breaks the perturbative expansion",
            params.lambda0, "warning"))
    if params.gamma >= params.omega_r:
        out.append(Violation(
            "OverDamped",
            f"gamma={params.gamma:g} >= omega_r={params.omega_r:g}",
            params.gamma, "error"))
    if isinstance(traj, UniformAcceleration):
        if traj.a <= 0:
            out.append(Violation(
                "AccelerationOutOfRange",
                f"a={traj.a:g} must be positive", traj.a, "error"))
        elif traj.a >= 1.0:
            out.append(Violation(
                "AccelerationOutOfRange",
                f"a={traj.a:g} >= 1 (= light speed) is unphysically large",
                traj.a, "warning"))
    elif isinstance(traj, Inertial):
        if abs(traj.v) >= 1.0:
            out.append(Violation(
                "Superluminal", f"|v|={abs(traj.v):g} >= 1", traj.v, "error"))
    return ValidationReport(tuple(out))


def trajectory_position(traj: Trajectory, tau: float) -> SpacetimePoint:
    """Worldline event at proper time tau."""
    if isinstance(traj, UniformAcceleration):
        a = traj.a
        return SpacetimePoint(math.sinh(a * tau) / a, math.cosh(a * tau) / a)
    gl = traj.lorentz_factor
    return SpacetimePoint(gl * tau, gl * traj.v * tau + traj.x_a + traj.d)


def retarded_kinematics(x: SpacetimePoint, a: float) -> tuple[float, float]:
    """Retarded distance X and retarded proper time tau_minus for the
    uniformly accelerated worldline.

    X = sqrt((-UV + rho^2 + 1/a^2)^2 + 4 UV / a^2) and
    tau_minus = -(1/a) ln[(a / 2|V|) (X - UV + rho^2 + 1/a^2)], defined where
    the argument of the log is positive and V != 0.
    """
    if a <= 0:
        raise NonPositiveInputError(f"a must be > 0, got {a}")
    uv = x.u * x.v
    base = -uv + x.rho**2 + a**-2
    big_x = math.sqrt(base**2 + 4.0 * uv / a**2)
    if x.v == 0.0:
        raise UndefinedRetardedTimeError("V = t + x1 = 0: no retarded time")
    arg = (a / (2.0 * abs(x.v))) * (big_x + base)
    if arg <= 0.0:
        raise UndefinedRetardedTimeError(
            f"log argument {arg:g} <= 0: point outside the causal region")
    tau_minus = -math.log(arg) / a
    return big_x, tau_minus
