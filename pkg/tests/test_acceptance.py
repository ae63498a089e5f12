"""Acceptance suite: every release criterion, one pass/fail line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the line per
criterion; each criterion is also an ordinary assertion.
"""

import math
import time

import numpy as np
import pytest

from udwdet import closedform as cf
from udwdet import oracle as orc
from udwdet.model import (SpacetimePoint, UniformAcceleration, derive_params,
                          params_from_omega, retarded_kinematics,
                          trajectory_position)
from udwdet.modes import q_a, response_kernel
from udwdet.special import EULER_GAMMA, digamma, gamma0, hyp_f

MINIMAL = cf.CorrelatorOptions(scheme="minimal")


def _report(num, name, ok, detail=""):
    print(f"[criterion {num:>2}] {'PASS' if ok else 'FAIL'}  {name}  {detail}")
    assert ok, f"criterion {num} failed: {name} {detail}"


def test_criterion_01_parameter_derivation():
    g1 = derive_params(0.1, m0=1.0).gamma
    g3 = derive_params(0.3, m0=1.0).gamma
    ok = (abs(g1 - 0.000398) / 0.000398 < 5e-3
          and abs(g3 - 0.00358) / 0.00358 < 5e-3)
    _report(1, "damping constants from couplings", ok,
            f"gamma(0.1)={g1:.6g} gamma(0.3)={g3:.6g}")


def test_criterion_02_oracle_equivalence_master_grid():
    t0 = time.time()
    worst = 0.0
    checked = 0
    for lam in (0.1, 0.3):
        for om in (1.0, 2.3):
            p = params_from_omega(lam, om)
            for eta in (1.0, 5.0, 11.0, 30.0):
                for a in (0.1, 0.01, 0.001):
                    for closed_fn, oracle_fn in (
                            (cf.qq_uad, orc.qq_uad_oracle),
                            (cf.pp_uad, orc.pp_uad_oracle)):
                        c = closed_fn(p, a, eta)
                        o = oracle_fn(p, a, eta)
                        for cv, ov in ((c.v1, o.v1), (c.neg_v2, o.neg_v2)):
                            tol = max(2e-4, 1e-3 * abs(ov))
                            worst = max(worst, abs(cv - ov) / tol)
                            checked += 1
                for closed_fn, oracle_fn in (
                        (cf.qq_inertial, orc.qq_inertial_oracle),
                        (cf.pp_inertial, orc.pp_inertial_oracle)):
                    cv = closed_fn(p, eta)
                    ov = oracle_fn(p, eta).value
                    tol = max(2e-4, 1e-3 * abs(ov))
                    worst = max(worst, abs(cv - ov) / tol)
                    checked += 1
    elapsed = time.time() - t0
    ok = worst <= 1.0 and elapsed < 180.0
    _report(2, "closed form == oracle on the master grid", ok,
            f"{checked} piecewise checks, worst diff/tol={worst:.2e}, "
            f"{elapsed:.0f}s")


CAPTION_VALUES = [
    # (kind, lambda0, omega, a, eta, expected)
    ("qq", 0.3, 1.0, 0.1, 30.0, 1.24589),
    ("qq", 0.3, 1.0, 0.001, 30.0, 1.24588),
    ("qq", 0.3, 1.0, 0.1, 5000.0, 1.24772),
    ("qq", 0.1, 1.0, 0.001, 5000.0, 1.24974),
    ("qq", 0.1, 2.3, 0.001, 5000.0, 0.543429),
    ("pp", 0.1, 1.0, 0.1, 11.0, 0.497442),
    ("pp", 0.1, 1.0, 0.001, 11.0, 0.497442),
    ("pp", 0.1, 1.0, 0.1, 7000.0, 0.250765),
    ("pp", 0.3, 1.0, 0.1, 20.0, 0.462788),
    ("pp", 0.1, 1.0, 0.1, 20.0, 0.4956),
    ("pp", 0.1, 1.0, 0.1, 8000.0, 0.250238),
    ("pp", 0.3, 1.0, 0.1, 8000.0, 0.248185),
]


def test_criterion_03_figure_caption_values():
    worst = 0.0
    values = {}
    for kind, lam, om, a, eta, expected in CAPTION_VALUES:
        p = params_from_omega(lam, om)
        fn = cf.qq_uad if kind == "qq" else cf.pp_uad
        got = fn(p, a, eta).total
        values[(kind, lam, om, eta)] = got
        worst = max(worst, abs(got - expected) / abs(expected))
    # convention-free cross-check: the ratio of the two late-time qq values
    ratio = (values[("qq", 0.1, 2.3, 5000.0)]
             / values[("qq", 0.1, 1.0, 5000.0)])
    ratio_ok = abs(ratio - 0.543429 / 1.24974) / (0.543429 / 1.24974) < 5e-3
    ok = worst < 5e-3 and ratio_ok
    _report(3, "published reference values within 0.5%", ok,
            f"worst rel err={worst:.3%}, late-time ratio={ratio:.6f}")


def test_criterion_04_zero_variance_regression():
    p = params_from_omega(0.1, 1.0)
    full = orc.inertial_full_line(p, 10.0).value
    half = orc.qq_inertial_oracle(p, 10.0).value
    ok = abs(full) <= 1e-6 and half > 0.1
    _report(4, "full-line integral vanishes, half-line does not", ok,
            f"full={full:.2e} half={half:.4f}")


def test_criterion_05_split_identity():
    rng = np.random.default_rng(101)
    cfg = orc.QuadratureConfig()
    worst = 0.0
    for _ in range(10):
        p = params_from_omega(rng.uniform(0.05, 0.45), rng.uniform(0.6, 2.5))
        eta = rng.uniform(1.0, 15.0)
        dot = bool(rng.integers(0, 2))
        pos = orc.raw_truncated_integral(p, eta, cfg, dot=dot,
                                         side="positive", density=3.0)
        neg = orc.raw_truncated_integral(p, eta, cfg, dot=dot,
                                         side="negative", density=2.0)
        full = orc.raw_truncated_integral(p, eta, cfg, dot=dot,
                                          side="full", density=2.5)
        worst = max(worst, abs(pos - (full - neg)))
    ok = worst <= 10.0 * cfg.abs_tol
    _report(5, "half-line = full-line minus other half", ok,
            f"worst residual={worst:.2e}")


def test_criterion_06_trend_contrast():
    p = params_from_omega(0.1, 1.0)
    uad = cf.pp_uad(p, 0.1, 5000.0).total - cf.pp_uad(p, 0.1, 50.0).total
    inert = cf.pp_inertial(p, 5000.0) - cf.pp_inertial(p, 50.0)
    ok = uad < 0.0 and inert > 0.0
    _report(6, "velocity correlator falls for accelerated, rises for inertial",
            ok, f"uad slope={uad:+.4f} inertial slope={inert:+.6f}")


def test_criterion_07_mode_functions():
    p = params_from_omega(0.3, 1.0)
    ok = q_a(p, 0.0) == 1.0 + 0.0j
    h = 1e-6
    fd = (-3 * q_a(p, 0.0) + 4 * q_a(p, h) - q_a(p, 2 * h)) / (2 * h)
    ok = ok and abs(fd - complex(0.0, -p.omega_r)) < 1e-8
    rng = np.random.default_rng(7)
    worst_qa = worst_k = 0.0
    hh = 2e-4
    for _ in range(100):
        eta = rng.uniform(0.5, 50.0)
        qm, q0, qp = q_a(p, eta - hh), q_a(p, eta), q_a(p, eta + hh)
        res = (qp - 2 * q0 + qm) / hh**2 + 2 * p.gamma * (qp - qm) / (2 * hh) \
            + p.omega_r**2 * q0
        worst_qa = max(worst_qa, abs(res) / p.omega_r**2)
        kappa = rng.uniform(-5.0, 5.0)
        eta_k = rng.uniform(0.5, 30.0)
        km = response_kernel(p, kappa, eta_k - hh)
        k0 = response_kernel(p, kappa, eta_k)
        kp = response_kernel(p, kappa, eta_k + hh)
        res = (kp - 2 * k0 + km) / hh**2 + 2 * p.gamma * (kp - km) / (2 * hh) \
            + p.omega_r**2 * k0 - np.exp(-1j * kappa * eta_k)
        scale = abs(k0) * p.omega_r**2 + 1.0
        worst_k = max(worst_k, abs(res) / scale)
    ok = ok and worst_qa <= 1e-5 and worst_k <= 1e-5
    _report(7, "mode-function initial data and equation residuals", ok,
            f"worst q_a residual={worst_qa:.2e}, kernel={worst_k:.2e}")


def test_criterion_08_kinematics():
    rng = np.random.default_rng(8)
    worst_hyp = worst_lc = 0.0
    count = 0
    while count < 1000:
        a = rng.uniform(0.05, 0.9)
        tau = rng.uniform(-3.0, 3.0)
        z = trajectory_position(UniformAcceleration(a), tau)
        scale = z.t**2 + z.x1**2 + a**-2
        worst_hyp = max(worst_hyp,
                        abs((-z.t**2 + z.x1**2) - a**-2) / scale)
        r = rng.uniform(0.01, 5.0)
        costh = rng.uniform(-1.0, 1.0)
        x = SpacetimePoint(z.t + r, z.x1 + r * costh,
                           r * math.sqrt(1 - costh**2), 0.0)
        try:
            _, tau_minus = retarded_kinematics(x, a)
        except Exception:
            continue
        zr = trajectory_position(UniformAcceleration(a), tau_minus)
        dist = math.hypot(x.x1 - zr.x1, x.rho)
        worst_lc = max(worst_lc,
                       abs(dist - (x.t - zr.t)) / (1.0 + abs(x.t)))
        count += 1
    ok = worst_hyp <= 1e-10 and worst_lc <= 1e-10
    _report(8, "hyperbola invariant and light-cone residual", ok,
            f"worst hyperbola={worst_hyp:.2e}, light cone={worst_lc:.2e}")


def test_criterion_09_special_functions():
    series = 0.0
    term = 1.0
    for k in range(1, 60):
        term *= -1.0 / k
        series += term / k
    oracle_val = -EULER_GAMMA - series
    ok = abs(gamma0(1.0).real - oracle_val) <= 1e-9
    z = 3.2 + 1.1j
    ok = ok and abs(digamma(z) - digamma(z - 1.0) - 1.0 / (z - 1.0)) <= 1e-12
    zr = 0.3 + 0.2j
    import cmath
    ok = ok and abs(digamma(1 - zr) - digamma(zr)
                    - math.pi / cmath.tan(math.pi * zr)) <= 1e-12
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(200):
        zz = rng.uniform(0.02, 0.95)
        y = complex(rng.uniform(-0.8, 4.0), rng.uniform(-30.0, 30.0))
        n = int(rng.integers(3, 40))
        lhs = zz / (1.0 + y) * hyp_f(y, zz)
        partial = sum(zz**k / (k + y) for k in range(1, n + 1))
        bound = zz ** (n + 1) / ((n + 1) * (1.0 - zz)) \
            + 1e-14 * (1 + abs(lhs) + abs(partial))
        worst = max(worst, abs(lhs - partial) / bound)
    ok = ok and worst <= 1.0
    _report(9, "special-function oracles", ok,
            f"tail-bound saturation={worst:.3f}")


def test_criterion_10_improper_damping_artefact():
    eta = 50.0
    p_improper = params_from_omega(math.sqrt(8 * math.pi * 0.1), 2.3)
    p_proper = params_from_omega(0.1, 2.3)
    assert p_improper.gamma == pytest.approx(0.1, rel=1e-12)
    ratios = {}
    for label, p in (("improper", p_improper), ("proper", p_proper)):
        v1 = cf.qq_uad_v1(p, 0.001, eta)
        nv2 = cf.qq_uad_v2(p, eta)
        ratios[label] = abs(nv2) / abs(v1)
    ok = ratios["improper"] * 5.0 <= ratios["proper"]
    _report(10, "missing term suppressed at improper damping", ok,
            f"|v2|/|v1| improper={ratios['improper']:.3f} "
            f"proper={ratios['proper']:.3f}")
