"""Complex special functions used by the closed-form correlators.

Everything here is scalar, pure and principal-branch (cut on the negative
real axis, arguments in (-pi, pi]).  NaN/inf are never returned: inputs
outside a function's domain raise instead.
"""

from __future__ import annotations

import cmath
import math

from .errors import ConvergenceError, DomainError, PoleError

__all__ = ["EULER_GAMMA", "gamma0", "digamma", "hyp_f", "coth"]

EULER_GAMMA = 0.5772156649015328606065120900824024

# switchover |z| between the Taylor-type series and the Lentz continued
# fraction for gamma0; the two regimes agree to ~1e-11 on 1 <= |z| <= 4
_GAMMA0_SPLIT = 2.5
_MAX_TERMS = 10**6
_TINY = 1e-300


def _gamma0_series(z: complex) -> complex:
    # Gamma(0,z) = -gammaE - ln z - sum_{k>=1} (-z)^k / (k * k!)
    total = 0.0 + 0.0j
    term = 1.0 + 0.0j
    for k in range(1, 600):
        term *= -z / k
        piece = term / k
        total += piece
        if abs(piece) <= 1e-18 * (1.0 + abs(total)):
            break
    else:
        raise ConvergenceError(f"gamma0 series did not converge at z={z}")
    return -EULER_GAMMA - cmath.log(z) - total


def _gamma0_lentz(z: complex) -> complex:
    # modified Lentz for the continued fraction
    # Gamma(0,z) = e^{-z} / (z + 1/(1 + 1/(z + 2/(1 + 2/(z + ...)))))
    b = z + 1.0
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, 20000):
        an = -i * i * 1.0
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return cmath.exp(-z) * h
    raise ConvergenceError(f"gamma0 continued fraction stalled at z={z}")


def gamma0(z: complex) -> complex:
    """Upper incomplete gamma Gamma(0, z) = E1(z), principal branch.

    Satisfies d/dz Gamma(0,z) = -exp(-z)/z.  Diverges logarithmically at
    z = 0 (the renormalization constants of the correlators absorb that
    endpoint), so z = 0 raises DomainError.
    """
    z = complex(z)
    if z == 0:
        raise DomainError("Gamma(0, 0) diverges")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z}")
    if abs(z) < _GAMMA0_SPLIT:
        return _gamma0_series(z)
    # The continued fraction converges slowly near the negative real axis;
    # fall back to the (long) series there, which stays valid.
    if z.real < 0 and abs(z.imag) < 0.5 and abs(z) < 50.0:
        return _gamma0_series(z)
    return _gamma0_lentz(z)


# Bernoulli B_{2n}/(2n) for n = 1..8, the asymptotic tail of psi
_PSI_ASYMP = (
    1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0, -3617.0 / 8160.0,
)


def digamma(z: complex) -> complex:
    """Complex digamma psi(z): recurrence shift to Re z > 8, then the
    8-term asymptotic expansion.  Poles at the non-positive integers."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == int(z.real):
        raise PoleError(f"digamma pole at z={z}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z}")
    shift = 0.0 + 0.0j
    if z.real < -64.0 and abs(z.imag) < 64.0:
        # reflection keeps the recurrence short for far-left arguments
        w = 1.0 - z
        return digamma(w) - math.pi / cmath.tan(math.pi * z)
    while z.real <= 8.0:
        if z == 0:
            raise PoleError("digamma pole at 0")
        shift -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    tail = 0.0 + 0.0j
    p = inv2
    for coeff in _PSI_ASYMP:
        tail += coeff * p
        p *= inv2
    return shift + cmath.log(z) - 0.5 / z - tail


def hyp_f(y: complex, z: complex, rtol: float = 1e-15,
          max_terms: int = _MAX_TERMS) -> complex:
    """F_y(z) = 2F1(1 + y, 1; 2 + y; z) = (1 + y) * sum_{n>=0} z^n / (n + 1 + y).

    Direct series; requires |z| < 1 (boundary handled by the caller through
    the explicit tail bound |z|^(N+1) / ((N+1)(1-|z|))).
    """
    y = complex(y)
    z = complex(z)
    if not all(map(math.isfinite, (y.real, y.imag, z.real, z.imag))):
        raise DomainError(f"non-finite argument y={y}, z={z}")
    onepy = 1.0 + y
    if onepy.imag == 0.0 and onepy.real <= 0.0 and onepy.real == int(onepy.real):
        raise PoleError(f"1 + y = {onepy} is a non-positive integer")
    if z == 0:
        return 1.0 + 0.0j
    if abs(z) >= 1.0:
        raise ConvergenceError(f"series needs |z| < 1, got |z|={abs(z)}")
    total = 0.0 + 0.0j
    zp = 1.0 + 0.0j
    for n in range(max_terms):
        term = zp / (n + onepy)
        total += term
        zp *= z
        if abs(zp) / abs(n + 1 + onepy) <= rtol * max(abs(total), 1e-30):
            return onepy * total
    raise ConvergenceError(
        f"hypergeometric series exceeded {max_terms} terms at |z|={abs(z)}")


def coth(z: complex) -> complex:
    """cosh(z)/sinh(z), overflow-safe for large |Re z|.

    For Re z > 0: (1 + e^{-2z})/(1 - e^{-2z}); mirrored for Re z < 0;
    on the imaginary axis reduces to -i*cot(Im z).  Poles at i*pi*n.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z}")
    if z.real > 0:
        q = cmath.exp(-2.0 * z)
        den = 1.0 - q
        if abs(den) < 1e-15:
            raise PoleError(f"coth pole near z={z}")
        return (1.0 + q) / den
    if z.real < 0:
        return -coth(-z)
    s = math.sin(z.imag)
    if abs(s) < 1e-15:
        raise PoleError(f"coth pole at z={z}")
    return complex(0.0, -math.cos(z.imag) / s)
