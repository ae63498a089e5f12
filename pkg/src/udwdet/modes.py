"""Mode functions of the detector's internal oscillator.

The driven response kernel here is a pure shape function: the coupling
prefactors (lambda0/m0 etc.) are attached by the correlator modules, so
there is a single point of truth for the overall normalization.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .model import DetectorParams

__all__ = ["OscillatorConstants", "oscillator_constants", "q_a",
           "response_kernel", "response_kernel_dot"]


@dataclass(frozen=True)
class OscillatorConstants:
    """c_pm = +-1/(2 i omega), w_pm = -gamma +- i omega."""

    c_plus: complex
    c_minus: complex
    w_plus: complex
    w_minus: complex


def oscillator_constants(params: DetectorParams) -> OscillatorConstants:
    cw = 1.0 / (2.0j * params.omega)
    w = complex(-params.gamma, params.omega)
    return OscillatorConstants(c_plus=cw, c_minus=-cw,
                               w_plus=w, w_minus=w.conjugate())


def q_a(params: DetectorParams, eta: float) -> complex:
    """Free damped-oscillator mode with q_a(0) = 1 and q_a'(0) = -i omega_r.

    q_a(eta) = (1/2) e^{-gamma eta} [ (1 - (omega_r + i gamma)/omega) e^{i omega eta}
                                    + (1 + (omega_r + i gamma)/omega) e^{-i omega eta} ]
             = e^{-gamma eta} [ cos(omega eta)
                                - i ((omega_r + i gamma)/omega) sin(omega eta) ]

    (the second form keeps q_a(0) = 1 exact in floating point).
    """
    if eta < 0:
        return 0.0 + 0.0j
    g, om, omr = params.gamma, params.omega, params.omega_r
    r = complex(omr, g) / om
    return math.exp(-g * eta) * (math.cos(om * eta)
                                 - 1j * r * math.sin(om * eta))


def response_kernel(params: DetectorParams, kappa: float, eta: float) -> complex:
    """Response of the damped oscillator to the drive e^{-i kappa eta},
    switched on at eta = 0 with vanishing initial data:

        K(kappa, eta) = sum_j c_j (e^{w_j eta} - e^{-i kappa eta}) / (w_j + i kappa)

    Solves K'' + 2 gamma K' + omega_r^2 K = e^{-i kappa eta}, K(0) = K'(0) = 0.
    On real kappa the denominators are bounded away from zero by gamma > 0.
    """
    k = oscillator_constants(params)
    ek = cmath.exp(-1j * kappa * eta)
    return (k.c_plus * (cmath.exp(k.w_plus * eta) - ek) / (k.w_plus + 1j * kappa)
            + k.c_minus * (cmath.exp(k.w_minus * eta) - ek) / (k.w_minus + 1j * kappa))


def response_kernel_dot(params: DetectorParams, kappa: float, eta: float) -> complex:
    """eta-derivative of response_kernel."""
    k = oscillator_constants(params)
    ek = cmath.exp(-1j * kappa * eta)
    return (k.c_plus * (k.w_plus * cmath.exp(k.w_plus * eta) + 1j * kappa * ek)
            / (k.w_plus + 1j * kappa)
            + k.c_minus * (k.w_minus * cmath.exp(k.w_minus * eta) + 1j * kappa * ek)
            / (k.w_minus + 1j * kappa))
