"""Quadrature-oracle tests: thermal factor, convergence, error honesty."""

import math

import numpy as np
import pytest

from udwdet import closedform as cf
from udwdet import oracle as orc
from udwdet.errors import QuadratureFailure
from udwdet.model import params_from_omega
from udwdet.modes import response_kernel, response_kernel_dot

P03 = params_from_omega(0.3, 1.0)
P01 = params_from_omega(0.1, 1.0)


def test_thermal_factor_removable_zero():
    a = 0.1
    assert orc.thermal_factor(0.0, a) == pytest.approx(a / (2 * math.pi),
                                                       rel=1e-12)
    assert orc.thermal_factor(10.0, a) == pytest.approx(10.0, rel=1e-12)


def test_thermal_factor_negative_series():
    # 50-term Bernoulli expansion of x/(1-e^{-x}) around 0:
    # 1 + x/2 + sum_k B_2k x^2k/(2k)!  (converges for |x| < 2 pi)
    from scipy.special import bernoulli
    a, kappa = 0.1, -0.05
    x = 2 * math.pi * kappa / a
    b = bernoulli(100)
    series = 1.0 + x / 2.0
    for k in range(1, 51):
        series += b[2 * k] * x ** (2 * k) / math.factorial(2 * k)
    expected = (a / (2 * math.pi)) * series
    assert orc.thermal_factor(kappa, a) == pytest.approx(expected, abs=1e-12)


def test_thermal_factor_no_overflow_far_negative():
    val = orc.thermal_factor(-500.0, 0.1)
    assert val == pytest.approx(0.0, abs=1e-300)
    assert np.isfinite(val)


def test_kernel_sq_matches_mode_functions():
    # the oracle's real-arithmetic |K|^2 equals |response_kernel|^2
    rng = np.random.default_rng(2)
    for _ in range(25):
        kappa = rng.uniform(-6, 6)
        eta = rng.uniform(0.3, 20.0)
        k2 = orc._abs_k2(P03, eta, np.array([kappa]))[0]
        assert k2 == pytest.approx(abs(response_kernel(P03, kappa, eta))**2,
                                   rel=1e-12)
        kd2 = orc._abs_kdot2(P03, eta, np.array([kappa]))[0]
        assert kd2 == pytest.approx(
            abs(response_kernel_dot(P03, kappa, eta))**2, rel=1e-12)


def test_integrand_decay_bound():
    # summed integrand decays at least as 1/kappa^2 past the resonance
    for p, eta in ((P03, 2.0), (P01, 9.0)):
        k0 = 10.0 * max(p.omega, p.gamma) / min(1.0, eta)
        ks = np.linspace(max(k0, 5.0), 2000.0, 2000)
        vals = ks * orc._abs_k2(p, eta, ks)
        c = np.max(vals * ks)           # empirical constant
        assert np.all(vals <= (c + 1e-12) / ks)


def test_qq_oracle_matches_reference_total():
    res = orc.qq_uad_oracle(P03, 0.1, 30.0)
    assert res.total == pytest.approx(1.24589, rel=5e-3)
    # integrand regular at kappa = 0 by construction (thermal_factor)
    assert np.isfinite(res.v1)


def test_pp_oracle_matches_reference_total():
    res = orc.pp_uad_oracle(P01, 0.1, 11.0)
    assert res.total == pytest.approx(0.497442, rel=5e-3)


def test_tolerance_self_consistency():
    cfg = orc.QuadratureConfig(abs_tol=1e-7, rel_tol=1e-6)
    tight = orc.QuadratureConfig(abs_tol=5e-8, rel_tol=5e-7)
    a = orc.qq_uad_oracle(P03, 0.01, 7.0, cfg)
    b = orc.qq_uad_oracle(P03, 0.01, 7.0, tight)
    assert abs(a.v1 - b.v1) <= max(a.v1_error, 1e-12)
    assert abs(a.neg_v2 - b.neg_v2) <= max(a.neg_v2_error, 1e-12)


def test_error_estimate_honesty():
    # high-precision rerun (tolerances / 100) stays within the estimate
    rng = np.random.default_rng(17)
    base = orc.QuadratureConfig(abs_tol=1e-6, rel_tol=1e-5)
    precise = orc.QuadratureConfig(abs_tol=1e-8, rel_tol=1e-7)
    for _ in range(50):
        lam = rng.uniform(0.05, 0.45)
        om = rng.uniform(0.6, 2.5)
        eta = rng.uniform(0.5, 12.0)
        p = params_from_omega(lam, om)
        dot = bool(rng.integers(0, 2))
        r1 = orc._halfline_quadrature(p, eta, dot, base)
        r2 = orc._halfline_quadrature(p, eta, dot, precise)
        assert abs(r1.value - r2.value) <= r1.error + 1e-12


def test_piecewise_split_matches_closed_form():
    # v1 and neg_v2 match separately, not only in total
    for a in (0.1, 0.001):
        o = orc.qq_uad_oracle(P03, a, 11.0)
        c = cf.qq_uad(P03, a, 11.0)
        assert o.v1 == pytest.approx(c.v1, abs=2e-4)
        assert o.neg_v2 == pytest.approx(c.neg_v2, abs=2e-4)


def test_inertial_zero_variance_regression():
    res = orc.inertial_full_line(P01, 10.0)
    assert abs(res.value) <= 1e-6
    half = orc.qq_inertial_oracle(P01, 10.0)
    assert half.value > 0.1


def test_split_identity_finite_cutoff():
    rng = np.random.default_rng(23)
    cfg = orc.QuadratureConfig()
    for _ in range(10):
        lam = rng.uniform(0.05, 0.45)
        om = rng.uniform(0.6, 2.5)
        eta = rng.uniform(1.0, 15.0)
        p = params_from_omega(lam, om)
        pos = orc.raw_truncated_integral(p, eta, cfg, side="positive",
                                         density=3.0)
        neg = orc.raw_truncated_integral(p, eta, cfg, side="negative",
                                         density=2.0)
        full = orc.raw_truncated_integral(p, eta, cfg, side="full",
                                          density=2.5)
        assert pos == pytest.approx(full - neg, abs=10 * cfg.abs_tol)


def test_quadrature_failure_on_small_cutoff():
    cfg = orc.QuadratureConfig(kappa_max=P01.omega / 10.0)
    with pytest.raises(QuadratureFailure):
        orc.qq_inertial_oracle(P01, 5.0, cfg)


def test_quadrature_failure_on_panel_budget():
    cfg = orc.QuadratureConfig(max_subdivisions=10)
    with pytest.raises(QuadratureFailure):
        orc.qq_inertial_oracle(P01, 20.0, cfg)


def test_kernel_time_derivative_cross_check():
    # d/d eta |K|^2 = 2 Re(Kdot conj(K)) ties the two oracle kernels together
    rng = np.random.default_rng(29)
    h = 1e-6
    for _ in range(20):
        kappa = rng.uniform(-5, 5)
        eta = rng.uniform(0.5, 10.0)
        f = lambda e: orc._abs_k2(P03, e, np.array([kappa]))[0]
        fd = (f(eta + h) - f(eta - h)) / (2 * h)
        analytic = 2.0 * (response_kernel_dot(P03, kappa, eta)
                          * response_kernel(P03, kappa, eta).conjugate()).real
        assert fd == pytest.approx(analytic, abs=1e-7 + 1e-6 * abs(analytic))
