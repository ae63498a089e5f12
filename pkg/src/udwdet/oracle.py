"""Brute-force frequency-integral oracle for the closed-form correlators.

Every correlator is an integral over the drive frequency kappa of the
squared response kernel:

    v1 (accelerated): int_R  dk  k/(1 - e^{-2 pi k / a}) |K(k, eta)|^2
    missing term    : -int_{-inf}^0 dk  k |K(k, eta)|^2
    inertial        : int_0^inf dk  k |K(k, eta)|^2

(with |Kdot|^2 for the velocity correlators).  |K(-k)| = |K(k)|, so all
of them reduce to half-line integrals; the v1 weight folds to
k*coth(pi k/a).  The integrands decay like 1/k (a logarithmic UV
divergence), renormalized here by subtracting S(eta)*k/(k^2 + omega^2),
whose finite part matches the point-splitting constants
-euler_gamma - ln(omega*delta) set to zero (minimal scheme).  The
published-scheme values add the same explicit offsets used by the closed
forms, so the two routes can be compared point by point.

Numerics: composite 16-point Gauss-Legendre on panels no wider than half
an oscillation period pi/(2 eta), refined geometrically around the
resonance at omega_r (width gamma) and the thermal scale a, with panel
doubling until the change is below tolerance; the [kappa_max, inf) tail
of the subtracted integrand is summed analytically from its asymptotic
series (sine/cosine-integral terms).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import sici

from .closedform import (_scheme_offset_pp_inertial, _scheme_offset_pp_uad,
                         _scheme_offset_qq_inertial, _scheme_offset_qq_uad)
from .errors import DomainError, QuadratureFailure
from .model import DetectorParams

__all__ = ["QuadratureConfig", "OracleResult", "OracleCorrelator",
           "thermal_factor", "qq_uad_oracle", "pp_uad_oracle",
           "qq_inertial_oracle", "pp_inertial_oracle",
           "inertial_full_line", "raw_truncated_integral"]

_GL_NODES, _GL_WEIGHTS = leggauss(16)


@dataclass(frozen=True)
class QuadratureConfig:
    """Controls for the adaptive panel quadrature.

    kappa_max defaults to 400*max(omega, gamma, a); the analytic tail is
    attached beyond it unless tail_model="none", in which case the tail
    magnitude only inflates the error estimate.
    """

    kappa_max: float | None = None
    abs_tol: float = 1e-8
    rel_tol: float = 1e-7
    max_subdivisions: int = 100_000
    tail_model: str = "inverse_square_extrapolation"

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise DomainError("tolerances must be positive")
        if self.tail_model not in ("none", "inverse_square_extrapolation"):
            raise DomainError(f"unknown tail model {self.tail_model!r}")

    def resolved_kappa_max(self, params: DetectorParams, a: float = 0.0) -> float:
        if self.kappa_max is not None:
            if self.kappa_max <= 10.0 * params.omega:
                raise QuadratureFailure(
                    f"kappa_max={self.kappa_max:g} must exceed "
                    f"10*omega={10 * params.omega:g}")
            return self.kappa_max
        return 400.0 * max(params.omega, params.gamma, a, 1.0)


_DEFAULT_CFG = QuadratureConfig()


@dataclass(frozen=True)
class OracleResult:
    value: float
    error: float


@dataclass(frozen=True)
class OracleCorrelator:
    """Quadrature counterpart of a CorrelatorValue, with error estimates."""

    eta: float
    v1: float
    neg_v2: float
    v1_error: float
    neg_v2_error: float

    @property
    def total(self) -> float:
        return self.v1 + self.neg_v2

    @property
    def total_error(self) -> float:
        return self.v1_error + self.neg_v2_error


def thermal_factor(kappa, a: float):
    """kappa / (1 - e^{-2 pi kappa / a}) with the removable zero at
    kappa = 0 filled in (value a/(2 pi)) and no overflow for kappa << 0."""
    if a <= 0:
        raise DomainError(f"a must be > 0, got {a}")
    k = np.asarray(kappa, dtype=float)
    x = 2.0 * math.pi * k / a
    out = np.empty_like(k)
    small = np.abs(x) < 1e-8
    # k/(1-e^{-x}) -> a/(2 pi) * x/(1-e^{-x}) ~ a/(2pi) (1 + x/2) near 0
    out[small] = (a / (2.0 * math.pi)) * (1.0 + 0.5 * x[small])
    pos = (~small) & (x > 0)
    out[pos] = k[pos] / -np.expm1(-x[pos])
    neg = (~small) & (x < 0)
    # k * e^{x} / (e^{x} - 1): safe since e^{x} <= 1
    ex = np.exp(x[neg])
    out[neg] = k[neg] * ex / (ex - 1.0)
    if np.isscalar(kappa) or np.ndim(kappa) == 0:
        return float(out)
    return out


def _kernel_profiles(params: DetectorParams, eta: float):
    g, om = params.gamma, params.omega
    e = math.exp(-g * eta)
    s, c = math.sin(om * eta), math.cos(om * eta)
    alpha = e * (c + (g / om) * s)
    beta = e * s / om
    gg = e * (c - (g / om) * s)
    return alpha, beta, gg


def _abs_k2(params: DetectorParams, eta: float, k: np.ndarray) -> np.ndarray:
    """|K(k, eta)|^2 in pure real arithmetic."""
    g, om = params.gamma, params.omega
    alpha, beta, _ = _kernel_profiles(params, eta)
    omr2 = om * om + g * g
    d2 = (omr2 - k**2) ** 2 + 4.0 * g * g * k**2
    n2 = (k * beta) ** 2 - 2.0 * k * beta * np.sin(k * eta) \
        + 1.0 + alpha * alpha - 2.0 * alpha * np.cos(k * eta)
    return n2 / d2


def _abs_kdot2(params: DetectorParams, eta: float, k: np.ndarray) -> np.ndarray:
    g, om = params.gamma, params.omega
    alpha, beta, gg = _kernel_profiles(params, eta)
    omr2 = om * om + g * g
    d2 = (omr2 - k**2) ** 2 + 4.0 * g * g * k**2
    n2 = (omr2 * beta - k * np.sin(k * eta)) ** 2 \
        + k**2 * (gg - np.cos(k * eta)) ** 2
    return n2 / d2


def _log_coefficient(params: DetectorParams, eta: float, dot: bool) -> float:
    """UV coefficient S(eta): k*|kernel|^2 -> S/k as k -> inf."""
    _, beta, gg = _kernel_profiles(params, eta)
    return (1.0 + gg * gg) if dot else beta * beta


def _panel_edges(params: DetectorParams, a: float, eta: float, kmax: float,
                 density: float) -> np.ndarray:
    g, om = params.gamma, params.omega
    omr = math.hypot(om, g)
    width = min(math.pi / (2.0 * eta) / density, kmax / 40.0)
    n = int(math.ceil(kmax / width))
    edges = set(np.linspace(0.0, kmax, n + 1).tolist())
    if a > 0:             # resolve the thermal turnover at scale a
        k = a / (16.0 * density)
        while k < min(16.0 * a, kmax):
            edges.add(k)
            k *= 2.0
    k = g / (8.0 * density)   # resonance of width gamma at omega_r
    while k < 64.0 * g:
        for s in (-1.0, 1.0):
            e = omr + s * k
            if 0.0 < e < kmax:
                edges.add(e)
        k *= 2.0
    return np.array(sorted(edges))


_GL_CHUNK = 65536   # panels per evaluation block, bounds peak memory


def _composite_gl(f, edges: np.ndarray) -> float:
    lo, hi = edges[:-1], edges[1:]
    total = 0.0
    for start in range(0, len(lo), _GL_CHUNK):
        mid = 0.5 * (lo[start:start + _GL_CHUNK] + hi[start:start + _GL_CHUNK])
        half = 0.5 * (hi[start:start + _GL_CHUNK] - lo[start:start + _GL_CHUNK])
        x = mid[:, None] + half[:, None] * _GL_NODES[None, :]
        vals = f(x.ravel()).reshape(x.shape)
        total += float(np.sum(half * (vals @ _GL_WEIGHTS)))
    return total


def _tail(params: DetectorParams, eta: float, m: float, dot: bool) -> tuple[float, float]:
    """Analytic integral of the subtracted integrand over [m, inf) from its
    asymptotic series, and a bound on the truncation of that series."""
    g, om = params.gamma, params.omega
    alpha, beta, gg = _kernel_profiles(params, eta)
    omr2 = om * om + g * g
    eps2 = 2.0 * omr2 - 4.0 * g * g
    x = m * eta
    _, ci = sici(x)
    sin_x, cos_x = math.sin(x), math.cos(x)
    int_sin_k2 = eta * (sin_x / x - ci)
    int_cos_k3 = eta**2 * (cos_x / (2.0 * x * x) - 0.5 * (sin_x / x - ci))
    int_k3 = 0.5 / (m * m)
    int_sin_k4 = eta**3 * (sin_x / (3.0 * x**3)
                           + (cos_x / (2.0 * x * x)
                              - 0.5 * (sin_x / x - ci)) / 3.0)
    if not dot:
        val = (-2.0 * beta * int_sin_k2
               + (1.0 + alpha * alpha
                  + beta * beta * (eps2 + om * om)) * int_k3
               - 2.0 * alpha * int_cos_k3
               - 2.0 * beta * eps2 * int_sin_k4)
        bound = (1.0 + alpha**2 + beta**2 * (abs(eps2) + om * om)
                 + abs(alpha) * abs(eps2)) / (3.0 * m**3) * 4.0
    else:
        int_cos_k1 = -ci
        val = (-2.0 * gg * int_cos_k1
               - 2.0 * omr2 * beta * int_sin_k2
               + (omr2**2 * beta * beta
                  + (1.0 + gg * gg) * (eps2 + om * om)) * int_k3
               - 2.0 * gg * eps2 * int_cos_k3
               - 2.0 * omr2 * beta * eps2 * int_sin_k4)
        bound = (omr2**2 * beta**2 + (1.0 + gg**2) * (abs(eps2) + om**2)
                 + abs(gg) * abs(eps2) * eps2) / (3.0 * m**3) * 4.0
    return val, bound


def _halfline_quadrature(params: DetectorParams, eta: float, dot: bool,
                         cfg: QuadratureConfig, a: float = 0.0,
                         thermal: bool = False) -> OracleResult:
    """Renormalized (minimal-scheme) half-line integral with error estimate,
    in brace units (without the 2 hbar gamma / (pi m0) amplitude)."""
    if eta <= 0:
        raise DomainError(f"eta must be > 0, got {eta}")
    kmax = cfg.resolved_kappa_max(params, a)
    sub = _log_coefficient(params, eta, dot)
    om = params.omega
    kernel = _abs_kdot2 if dot else _abs_k2

    def integrand(k):
        w = thermal_factor(k, a) + thermal_factor(-k, a) if thermal else k
        return w * kernel(params, eta, k) - sub * k / (k * k + om * om)

    prev = None
    value = None
    density = 1.0
    for _ in range(10):
        edges = _panel_edges(params, a, eta, kmax, density)
        if (len(edges) - 1) > cfg.max_subdivisions:
            raise QuadratureFailure(
                f"needed more than {cfg.max_subdivisions} panels",
                estimate=value, error=None if prev is None else abs(value - prev))
        value = _composite_gl(integrand, edges)
        if prev is not None:
            err = abs(value - prev)
            if err <= max(cfg.abs_tol, cfg.rel_tol * abs(value)):
                break
        prev = value
        density *= 2.0
    else:
        raise QuadratureFailure("panel refinement did not converge",
                                estimate=value, error=abs(value - prev))
    tail_val, tail_bound = _tail(params, eta, kmax, dot)
    if cfg.tail_model == "inverse_square_extrapolation":
        return OracleResult(value + tail_val, err + tail_bound)
    return OracleResult(value, err + abs(tail_val) + tail_bound)


def _amplitude(params: DetectorParams) -> float:
    return 2.0 * params.hbar * params.gamma / (math.pi * params.m0)


def _published(params, eta, res: OracleResult, offset_fn, scheme) -> OracleResult:
    c = _amplitude(params)
    braces = res.value
    if scheme == "published":
        braces += offset_fn(params, eta)
    elif scheme != "minimal":
        raise DomainError(f"unknown scheme {scheme!r}")
    return OracleResult(c * braces, c * res.error)


def qq_uad_oracle(params: DetectorParams, a: float, eta: float,
                  cfg: QuadratureConfig = _DEFAULT_CFG,
                  scheme: str = "published") -> OracleCorrelator:
    """Quadrature values of the two <Q^2> pieces for acceleration a."""
    if a <= 0:
        raise DomainError(f"a must be > 0, got {a}")
    r1 = _halfline_quadrature(params, eta, False, cfg, a=a, thermal=True)
    r2 = _halfline_quadrature(params, eta, False, cfg, a=a, thermal=False)
    c = _amplitude(params)
    v2 = _published(params, eta, r2, _scheme_offset_qq_uad, scheme)
    return OracleCorrelator(eta=eta, v1=c * r1.value, neg_v2=v2.value,
                            v1_error=c * r1.error, neg_v2_error=v2.error)


def pp_uad_oracle(params: DetectorParams, a: float, eta: float,
                  cfg: QuadratureConfig = _DEFAULT_CFG,
                  scheme: str = "published") -> OracleCorrelator:
    """Quadrature values of the two <Qdot^2> pieces for acceleration a."""
    if a <= 0:
        raise DomainError(f"a must be > 0, got {a}")
    r1 = _halfline_quadrature(params, eta, True, cfg, a=a, thermal=True)
    r2 = _halfline_quadrature(params, eta, True, cfg, a=a, thermal=False)
    c = _amplitude(params)
    v2 = _published(params, eta, r2, _scheme_offset_pp_uad, scheme)
    return OracleCorrelator(eta=eta, v1=c * r1.value, neg_v2=v2.value,
                            v1_error=c * r1.error, neg_v2_error=v2.error)


def qq_inertial_oracle(params: DetectorParams, eta: float,
                       cfg: QuadratureConfig = _DEFAULT_CFG,
                       scheme: str = "published") -> OracleResult:
    """Quadrature value of the inertial <Q^2> (half-line integral)."""
    res = _halfline_quadrature(params, eta, False, cfg)
    return _published(params, eta, res, _scheme_offset_qq_inertial, scheme)


def pp_inertial_oracle(params: DetectorParams, eta: float,
                       cfg: QuadratureConfig = _DEFAULT_CFG,
                       scheme: str = "published") -> OracleResult:
    """Quadrature value of the inertial <Qdot^2>."""
    res = _halfline_quadrature(params, eta, True, cfg)
    return _published(params, eta, res, _scheme_offset_pp_inertial, scheme)


def inertial_full_line(params: DetectorParams, eta: float,
                       cfg: QuadratureConfig = _DEFAULT_CFG,
                       dot: bool = False) -> OracleResult:
    """Symmetric-limit integral of k |kernel|^2 over [-kappa_max, kappa_max].

    The integrand is odd, so this is the zero-variance regression value: it
    should vanish to quadrature precision.
    """
    if eta <= 0:
        raise DomainError(f"eta must be > 0, got {eta}")
    kmax = cfg.resolved_kappa_max(params)
    kernel = _abs_kdot2 if dot else _abs_k2

    def integrand(k):
        return k * kernel(params, eta, np.abs(k))

    pos = _panel_edges(params, 0.0, eta, kmax, 2.0)
    edges = np.concatenate([-pos[::-1], pos[1:]])
    value = _composite_gl(integrand, edges)
    c = _amplitude(params)
    return OracleResult(c * value, c * max(1e-14 * kmax, abs(value)))


def raw_truncated_integral(params: DetectorParams, eta: float,
                           cfg: QuadratureConfig = _DEFAULT_CFG,
                           dot: bool = False, side: str = "positive",
                           density: float = 2.0) -> float:
    """Unrenormalized integral of k |kernel|^2, truncated at kappa_max.

    side: "positive" ([0, kmax]), "negative" ([-kmax, 0]) or "full".
    The three satisfy full = positive + negative (the finite-cutoff form of
    the half-line reshaping identity) up to quadrature error; ``density``
    controls the panel resolution so the identity can be probed with
    independent discretizations.
    """
    if eta <= 0:
        raise DomainError(f"eta must be > 0, got {eta}")
    kmax = cfg.resolved_kappa_max(params)
    kernel = _abs_kdot2 if dot else _abs_k2

    def integrand(k):
        return k * kernel(params, eta, np.abs(k))

    pos = _panel_edges(params, 0.0, eta, kmax, density)
    if side == "positive":
        edges = pos
    elif side == "negative":
        edges = -pos[::-1]
    elif side == "full":
        edges = np.concatenate([-pos[::-1], pos[1:]])
    else:
        raise DomainError(f"unknown side {side!r}")
    return _amplitude(params) * _composite_gl(integrand, edges)
