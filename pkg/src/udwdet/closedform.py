"""Closed-form vacuum-fluctuation correlators of the detector coordinate.

Two families of expressions are evaluated at equal times (coincidence):

* the thermal full-line pieces ``qq_uad_v1`` / ``pp_uad_v1`` for a uniformly
  accelerated detector, built from the hypergeometric family F_y, the
  digamma function and coth;
* the half-line pieces -- the acceleration-independent "missing term"
  ``qq_uad_v2`` / ``pp_uad_v2`` and the inertial results ``qq_inertial`` /
  ``pp_inertial`` -- built from incomplete gamma functions.

Renormalization scheme
----------------------
The underlying frequency integrals diverge logarithmically; finite values
require a subtraction.  All defaults reproduce the published convention
(the one behind the tabulated reference values): the point-splitting
constants Lambda = -euler_gamma - ln(Omega * delta) are set to zero, and
the half-line pieces additionally carry the published branch bookkeeping.
That bookkeeping differs from minimal subtraction by explicit elementary
terms (the ``_scheme_offset_*`` functions below); ``scheme="minimal"``
switches them off, leaving the plain renormalized integrals that the
quadrature oracle computes directly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import DomainError
from .model import DetectorParams
from .special import EULER_GAMMA, coth, digamma, gamma0, hyp_f

__all__ = [
    "RenormOffsets",
    "CorrelatorOptions",
    "CorrelatorValue",
    "qq_uad_v1", "qq_uad_v2", "qq_uad",
    "pp_uad_v1", "pp_uad_v2", "pp_uad",
    "qq_inertial", "pp_inertial",
    "appendix_terms_uad_v1", "appendix_terms_uad_v2",
    "halfline_braces",
]

_PREFACTORS = {"maintext": 1.0, "appendixd": 0.5}
_SCHEMES = ("published", "minimal")


@dataclass(frozen=True)
class RenormOffsets:
    """Additive renormalization constants, zero unless injected explicitly.

    ``from_splitting`` gives each constant the finite point-splitting value
    -euler_gamma - ln(Omega*delta) used in unequal-time studies.
    """

    qq_v1: float = 0.0        # multiplies e^{-2 g eta} sin^2(Om eta) in qq_uad_v1
    pp_v1_const: float = 0.0  # multiplies Om^2 in pp_uad_v1
    pp_v1_osc: float = 0.0    # multiplies e^{-2 g eta}(Om cos - g sin)^2 in pp_uad_v1
    qq_v2: float = 0.0
    pp_v2: float = 0.0
    qq_inertial: float = 0.0
    pp_inertial: float = 0.0

    @classmethod
    def from_splitting(cls, params: DetectorParams, delta: float) -> "RenormOffsets":
        if delta <= 0:
            raise DomainError("splitting delta must be > 0")
        lam = -EULER_GAMMA - math.log(params.omega * delta)
        return cls(qq_v1=lam, pp_v1_const=lam, pp_v1_osc=lam, qq_v2=lam,
                   pp_v2=lam, qq_inertial=lam, pp_inertial=lam)


@dataclass(frozen=True)
class CorrelatorOptions:
    """Evaluation policy: prefactor convention, scheme, offsets."""

    prefactor_convention: str = "maintext"
    scheme: str = "published"
    include_renorm_offsets: bool = False
    offsets: RenormOffsets = field(default_factory=RenormOffsets)

    def __post_init__(self):
        if self.prefactor_convention not in _PREFACTORS:
            raise DomainError(
                f"unknown prefactor convention {self.prefactor_convention!r}")
        if self.scheme not in _SCHEMES:
            raise DomainError(f"unknown scheme {self.scheme!r}")

    @property
    def prefactor_scale(self) -> float:
        return _PREFACTORS[self.prefactor_convention]

    def offset(self, name: str) -> float:
        if not self.include_renorm_offsets:
            return 0.0
        return getattr(self.offsets, name)


_DEFAULT_OPTS = CorrelatorOptions()


@dataclass(frozen=True)
class CorrelatorValue:
    """One equal-time evaluation: total = v1 + neg_v2."""

    eta: float
    v1: float
    neg_v2: float

    @property
    def total(self) -> float:
        return self.v1 + self.neg_v2


def _check_eta(eta: float):
    if not (eta > 0):
        raise DomainError(f"eta must be > 0, got {eta}")


def _check_a(a: float):
    if not (0 < a):
        raise DomainError(f"proper acceleration must be > 0, got {a}")


def _amplitude(params: DetectorParams) -> float:
    # 2 hbar gamma / (pi m0): overall scale of every correlator
    return 2.0 * params.hbar * params.gamma / (math.pi * params.m0)


# --------------------------------------------------------------------------
# thermal full-line pieces (uniformly accelerated detector, "v1")
# --------------------------------------------------------------------------

def qq_uad_v1(params: DetectorParams, a: float, eta: float,
              opts: CorrelatorOptions = _DEFAULT_OPTS) -> float:
    """Thermal piece of <Q^2> for proper acceleration a at detector time eta."""
    _check_eta(eta)
    _check_a(a)
    g, om = params.gamma, params.omega
    gi = complex(g, om)                      # gamma + i Omega
    z = math.exp(-a * eta)
    f1 = hyp_f(gi / a, z)
    f2 = hyp_f(-gi / a, z)
    psi_sum = digamma(1.0 + gi / a) + digamma(1.0 - gi / a)
    cth = coth((math.pi / a) * complex(om, -g))
    e2g = math.exp(-2.0 * g * eta)
    eio = cmath.exp(1j * om * eta)

    t_log = (opts.offset("qq_v1") - math.log(a / om)) * e2g * math.sin(om * eta) ** 2
    t_hyp = (a / 2.0) * math.exp(-(g + a) * eta) * (
        f1 / (gi + a) * (-1j * om / g) / eio
        + f2 / (gi - a) * ((1.0 + 1j * om / g) * eio - 1.0 / eio))
    blk = 1j * om / g + e2g * (1j * om / g + 1.0 - eio**-2)
    blk_c = -1j * om / g + e2g * (1j * om / g + 1.0 - eio**-2)
    t_psi = -0.25 * (blk * psi_sum - blk_c * 1j * math.pi * cth)

    braces = t_log + (t_hyp + t_psi).real
    return opts.prefactor_scale * _amplitude(params) / om**2 * braces


def pp_uad_v1(params: DetectorParams, a: float, eta: float,
              opts: CorrelatorOptions = _DEFAULT_OPTS) -> float:
    """Thermal piece of <Qdot^2> for proper acceleration a."""
    _check_eta(eta)
    _check_a(a)
    g, om = params.gamma, params.omega
    gi = complex(g, om)
    z = math.exp(-a * eta)
    f1 = hyp_f(gi / a, z)
    f2 = hyp_f(-gi / a, z)
    psi_sum = digamma(1.0 + gi / a) + digamma(1.0 - gi / a)
    cth = coth((math.pi / a) * complex(om, -g))
    e2g = math.exp(-2.0 * g * eta)
    eio = cmath.exp(1j * om * eta)

    t_const = (opts.offset("pp_v1_const") - math.log(a / om)) * om**2
    t_log = (opts.offset("pp_v1_osc") - math.log(a / om)) * e2g \
        * (om * math.cos(om * eta) - g * math.sin(om * eta)) ** 2
    t_hyp = (a / 2.0) * gi**2 * math.exp(-(g + a) * eta) * (
        f1 / (gi + a) * (1j * om / g) / eio
        + f2 / (gi - a) * ((1.0 - 1j * om / g) * eio - 1.0 / eio))
    blk = 1j * om / g + e2g * (1j * om / g - 1.0 + eio**-2)
    blk_c = -1j * om / g + e2g * (1j * om / g - 1.0 + eio**-2)
    t_psi = 0.25 * gi**2 * (blk * psi_sum - blk_c * 1j * math.pi * cth)

    braces = t_const + t_log + (t_hyp + t_psi).real
    return opts.prefactor_scale * _amplitude(params) / om**2 * braces


# --------------------------------------------------------------------------
# renormalized half-line integral (shared by the missing term and the
# inertial detector): closed form in incomplete gamma functions
# --------------------------------------------------------------------------

def halfline_braces(params: DetectorParams, eta: float, dot: bool) -> float:
    """Minimal-subtraction value of int_0^inf kappa |K|^2 dkappa (dot=False)
    or int_0^inf kappa |Kdot|^2 dkappa (dot=True), in units of the overall
    amplitude 2 hbar gamma / (pi m0).

    The UV log divergence is removed with the point-splitting constant
    -euler_gamma - ln(Omega*delta) set to zero.
    """
    _check_eta(eta)
    g, om = params.gamma, params.omega
    A = complex(g, -om)                      # gamma - i Omega
    e2 = math.exp(-2.0 * g * eta)
    c2 = math.cos(2.0 * om * eta)
    s2 = math.sin(2.0 * om * eta)
    theta = math.atan2(om, g)
    ln_ro = 0.5 * math.log(om * om + g * g) - math.log(om)    # ln(Om_r/Om)
    sin_sq = math.sin(om * eta) ** 2
    phi = theta - math.pi

    ga = gamma0(A * eta)
    gma = gamma0(-A * eta)
    e2i = cmath.exp(2j * om * eta)

    if not dot:
        pair_a = (1j / (4.0 * om * g)) * (ga - ga.conjugate())
        cma = e2 * (1j * om - g * (1.0 - e2i)) / (4.0 * om**2 * g)
        pair_ma = 2.0 * (cma * gma).real
        elem = theta / (2.0 * om * g) + e2 * (
            phi / (2.0 * om * g)
            - ln_ro * sin_sq / om**2
            + phi * s2 / (2.0 * om**2))
        return pair_a.real + pair_ma + elem

    da = complex(-0.5, (om * om - g * g) / (4.0 * om * g))
    pair_a = 2.0 * (da * ga).real
    dma = e2 * (1j * om**3 - om**2 * g * (e2i + 1.0)
                + 1j * om * g**2 * (1.0 - 2.0 * e2i)
                - g**3 * (1.0 - e2i)) / (4.0 * om**2 * g)
    pair_ma = 2.0 * (dma * gma).real
    m2 = 2.0 * ln_ro
    elem_const = (om * om - g * g) * theta / (2.0 * om * g) - ln_ro
    elem_dec = (phi * (om**3 - om**2 * g * s2 - om * g**2 * (2.0 * c2 - 1.0)
                       + g**3 * s2) / (2.0 * om**2 * g)
                - m2 * (om**2 * (c2 + 1.0) - 2.0 * om * g * s2
                        + g**2 * (1.0 - c2)) / (4.0 * om**2))
    return pair_a + pair_ma + elem_const + e2 * elem_dec


def _scheme_offset_qq_uad(params: DetectorParams, eta: float) -> float:
    """Published-minus-minimal offset of the qq missing term (brace units)."""
    g, om = params.gamma, params.omega
    e2 = math.exp(-2.0 * g * eta)
    s2 = math.sin(2.0 * om * eta)
    phi = 1.5 * math.pi - math.atan2(om, g)
    ln_ro = 0.5 * math.log(om * om + g * g) - math.log(om)   # ln(Om_r/Om)
    return (math.pi / (8.0 * om * g)
            + e2 * (phi / (2.0 * om * g)
                    + phi * s2 / (2.0 * om**2)
                    + (ln_ro - 2.0 * math.log(om))
                    * math.sin(om * eta) ** 2 / om**2))


def _scheme_offset_qq_inertial(params: DetectorParams, eta: float) -> float:
    g, om = params.gamma, params.omega
    e2 = math.exp(-2.0 * g * eta)
    s2 = math.sin(2.0 * om * eta)
    return (math.pi / (4.0 * om * g)
            + e2 * (math.pi / (om * g)
                    + math.pi * s2 / om**2
                    - 3.0 * math.log(om) * math.sin(om * eta) ** 2 / om**2))


def _scheme_offset_pp_inertial(params: DetectorParams, eta: float) -> float:
    g, om = params.gamma, params.omega
    e2 = math.exp(-2.0 * g * eta)
    c2 = math.cos(2.0 * om * eta)
    s2 = math.sin(2.0 * om * eta)
    ln_o = math.log(om)
    const = math.pi * (om * om - g * g) / (4.0 * om * g) - ln_o
    dec = (math.pi * (om * (om * om + g * g) - (om * om - g * g) * g * s2
                      - 2.0 * om * g * g * c2) / (4.0 * om**2 * g)
           - ln_o * (om**2 * (1.0 + c2) - 2.0 * om * g * s2
                     + g**2 * (1.0 - c2)) / (2.0 * om**2))
    return const + e2 * dec


def _scheme_offset_pp_uad(params: DetectorParams, eta: float) -> float:
    g, om = params.gamma, params.omega
    e2 = math.exp(-2.0 * g * eta)
    return (_scheme_offset_pp_inertial(params, eta)
            - 5.0 * math.pi * om / (8.0 * g)
            + 3.0 * math.pi * om / (8.0 * g) * e2)


def _halfline_value(params, eta, opts, dot, offset_fn, lam_name):
    braces = halfline_braces(params, eta, dot)
    if opts.scheme == "published":
        braces += offset_fn(params, eta)
    braces += opts.offset(lam_name)
    return opts.prefactor_scale * _amplitude(params) * braces


def qq_uad_v2(params: DetectorParams, eta: float,
              opts: CorrelatorOptions = _DEFAULT_OPTS) -> float:
    """The "missing term" -<QQ>_v2; independent of the acceleration."""
    return _halfline_value(params, eta, opts, False,
                           _scheme_offset_qq_uad, "qq_v2")


def pp_uad_v2(params: DetectorParams, eta: float,
              opts: CorrelatorOptions = _DEFAULT_OPTS) -> float:
    """The "missing term" -<QdotQdot>_v2; the 1/eta endpoint pieces make
    eta = 0 a genuine singularity."""
    return _halfline_value(params, eta, opts, True,
                           _scheme_offset_pp_uad, "pp_v2")


def qq_inertial(params: DetectorParams, eta: float,
                opts: CorrelatorOptions = _DEFAULT_OPTS) -> float:
    """<Q^2> of the inertial detector: the half-line frequency integral.

    Velocity-independent: the worldline speed cancels out of the mode
    density, so no kinematic argument appears.
    """
    return _halfline_value(params, eta, opts, False,
                           _scheme_offset_qq_inertial, "qq_inertial")


def pp_inertial(params: DetectorParams, eta: float,
                opts: CorrelatorOptions = _DEFAULT_OPTS) -> float:
    """<Qdot^2> of the inertial detector."""
    return _halfline_value(params, eta, opts, True,
                           _scheme_offset_pp_inertial, "pp_inertial")


def qq_uad(params: DetectorParams, a: float, eta: float,
           opts: CorrelatorOptions = _DEFAULT_OPTS) -> CorrelatorValue:
    """Full <Q^2> for the accelerated detector: v1 plus the missing term."""
    return CorrelatorValue(eta=eta,
                           v1=qq_uad_v1(params, a, eta, opts),
                           neg_v2=qq_uad_v2(params, eta, opts))


def pp_uad(params: DetectorParams, a: float, eta: float,
           opts: CorrelatorOptions = _DEFAULT_OPTS) -> CorrelatorValue:
    """Full <Qdot^2> for the accelerated detector."""
    return CorrelatorValue(eta=eta,
                           v1=pp_uad_v1(params, a, eta, opts),
                           neg_v2=pp_uad_v2(params, eta, opts))


# --------------------------------------------------------------------------
# unequal-time blocks
# --------------------------------------------------------------------------

def _tail_integral(p: complex, sigma: float) -> complex:
    """J(p, sigma) = int_0^inf e^{i u sigma} / (u - p) du  (sigma != 0, p off
    the positive real axis).

    Equals e^{i p sigma} Gamma(0, i sigma p) on the principal branch, plus a
    residue of 2 pi i e^{i p sigma} when rotating the contour sweeps the pole:
    sigma > 0 with p in the open first quadrant, or (with opposite sign)
    sigma < 0 with p in the open fourth quadrant.
    """
    out = gamma0(1j * sigma * p)
    if sigma > 0 and p.real > 0 and p.imag > 0:
        out += 2j * math.pi
    elif sigma < 0 and p.real > 0 and p.imag < 0:
        out -= 2j * math.pi
    return cmath.exp(1j * p * sigma) * out


def appendix_terms_uad_v2(params: DetectorParams, tau: float, tau2: float,
                          tau0: float, tau02: float) -> dict:
    """Unequal-time blocks P1t..P4t of the missing term (no acceleration
    dependence).  Exact for distinct time arguments; the equal-time limit
    requires the point-splitting subtraction handled by ``qq_uad_v2``.

    Block "P1t" carries the phase e^{w_j(tau-tau0) + wjb(tau2-tau02)},
    "P2t"/"P3t" the two mixed phases, "P4t" the pure e^{i kappa(tau2-tau)}
    piece.  -(P1t+P2t+P3t+P4t), with hbar*gamma/(pi*m0) folded in, is the
    unequal-time missing term; doubling gives the main prefactor convention.
    """
    if tau <= tau0 or tau2 <= tau02:
        raise DomainError("need tau > tau0 and tau2 > tau02")
    g, om = params.gamma, params.omega
    d0 = tau0 - tau02
    if d0 == 0.0 or tau2 == tau:
        raise DomainError("unequal-time blocks need tau0 != tau02, tau2 != tau")
    w = {1: complex(-g, om), -1: complex(-g, -om)}
    c = {1: 1.0 / (2j * om), -1: -1.0 / (2j * om)}
    pref_out = params.hbar * params.gamma / (math.pi * params.m0)
    out = {"P1t": 0j, "P2t": 0j, "P3t": 0j, "P4t": 0j}
    for j in (1, -1):
        for jp in (1, -1):
            wj = w[j]
            wjb = w[jp].conjugate()
            pref = c[j] * c[jp].conjugate() / (wj + wjb)
            # after reflecting (-inf,0] onto [0,inf): poles -i*wj and +i*wjb,
            # an overall minus, and every phase flips sign
            pa, pb = -1j * wj, 1j * wjb
            terms = {
                "P1t": (cmath.exp(wj * (tau - tau0) + wjb * (tau2 - tau02)), d0),
                "P2t": (-cmath.exp(wj * (tau - tau0)), -(tau2 - tau0)),
                "P3t": (-cmath.exp(wjb * (tau2 - tau02)), tau - tau02),
                "P4t": (1.0 + 0j, tau - tau2),
            }
            for key, (amp, sigma) in terms.items():
                val = wj * _tail_integral(pa, sigma) \
                    + wjb * _tail_integral(pb, sigma)
                out[key] -= pref * amp * val
    return {k: pref_out * v for k, v in out.items()}


def _inv_one_minus_exp(x: complex) -> complex:
    """1 / (1 - e^x) without overflow for large |Re x|."""
    if x.real > 0:
        q = cmath.exp(-x)
        return -q / (1.0 - q)
    return 1.0 / (1.0 - cmath.exp(x))


def appendix_terms_uad_v1(params: DetectorParams, a: float, tau: float,
                          tau2: float, tau0: float, tau02: float) -> dict:
    """Unequal-time blocks P1..P4 of the thermal (full-line) piece for
    proper acceleration a, from the thermal pole sums.

    Each kappa integral closes in the half-plane where its phase decays,
    collecting the thermal poles at i n a (hypergeometric sums) and the
    oscillator poles.
    """
    _check_a(a)
    if tau <= tau0 or tau2 <= tau02:
        raise DomainError("need tau > tau0 and tau2 > tau02")
    g, om = params.gamma, params.omega
    w = {1: complex(-g, om), -1: complex(-g, -om)}
    c = {1: 1.0 / (2j * om), -1: -1.0 / (2j * om)}
    pref_out = params.hbar * params.gamma / (math.pi * params.m0)

    def thermal_pair(wj, wjb, sigma):
        """Full-line integral of (wj/(k-i wj) + wjb/(k+i wjb)) e^{i k sigma}
        / (1 - e^{-2 pi k / a}); sigma != 0."""
        if sigma == 0.0:
            raise DomainError("thermal blocks need nonzero phase separations")
        s = 1.0 if sigma > 0 else -1.0
        x = a * abs(sigma)
        z = math.exp(-x)

        def s_sum(y):
            # S(y) = sum_{n>=1} z^n / (n + y); near z = 1 the series stalls,
            # so switch to its endpoint form (error O(x*(1+|y|)), which the
            # near-coincidence callers remove by extrapolation in sigma)
            if x * (2.0 + abs(y)) < 1e-3:
                one_minus_z = -math.expm1(-x)   # well-conditioned 1 - z
                return -math.log(one_minus_z) - EULER_GAMMA - digamma(1.0 + y)
            return z / (1.0 + y) * hyp_f(y, z)
        n_sum = (-1j * s / a) * (wj * s_sum(-s * wj / a)
                                 + wjb * s_sum(s * wjb / a))
        total = s * 2j * math.pi * (a / (2.0 * math.pi)) * n_sum
        # oscillator poles: k = i wj (lower half), k = -i wjb (upper half)
        if s > 0:
            # close up: pole at -i wjb
            total += 2j * math.pi * wjb * cmath.exp(wjb * sigma) \
                * _inv_one_minus_exp(2j * math.pi * wjb / a)
        else:
            total += -2j * math.pi * wj * cmath.exp(-wj * sigma) \
                * _inv_one_minus_exp(-2j * math.pi * wj / a)
        return total

    out = {"P1": 0j, "P2": 0j, "P3": 0j, "P4": 0j}
    for j in (1, -1):
        for jp in (1, -1):
            wj = w[j]
            wjb = w[jp].conjugate()
            pref = c[j] * c[jp].conjugate() / (wj + wjb)
            terms = {
                "P1": (cmath.exp(wj * (tau - tau0) + wjb * (tau2 - tau02)),
                       -(tau0 - tau02)),
                "P2": (-cmath.exp(wj * (tau - tau0)), tau2 - tau0),
                "P3": (-cmath.exp(wjb * (tau2 - tau02)), -(tau - tau02)),
                "P4": (1.0 + 0j, tau2 - tau),
            }
            for key, (amp, sigma) in terms.items():
                out[key] += pref * amp * thermal_pair(wj, wjb, sigma)
    return {k: pref_out * v for k, v in out.items()}
