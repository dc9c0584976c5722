"""Real-order special functions used by every kernel in the package.

Gamma supports negative non-integer arguments through the upward
recurrence Gamma(x) = Gamma(x+k) / (x (x+1) ... (x+k-1)) (no reflection
formula, so there is no sin(pi x) cancellation near the poles).  Bessel
J_nu and modified Bessel I_nu are backed by scipy.special; the scaled
form e^{-z} I_nu(z) is what heat-kernel code should consume, since the
kernel always pairs I_nu with a dominating Gaussian.
"""

from __future__ import annotations

import math

from scipy import special as _sp

from .errors import DomainError

# e^z I_nu(z) overflows float64 soon after z ~ 709; the public unscaled
# accessor refuses anything beyond this.
UNSCALED_BESSEL_I_MAX = 700.0


def series_asymptotic_crossover(nu: float) -> float:
    """Argument at which I_nu switches from the small-z to the large-z regime."""
    return max(12.0, 2.0 * nu * nu)


def gamma(x: float) -> float:
    """Gamma(x) for real x away from the poles 0, -1, -2, ...

    Negative arguments are reduced to x + k > 1 by the recurrence; the
    accumulated product stays a few ulp accurate on |x| <= 30.
    """
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise DomainError(f"gamma pole at x = {x:g}")
    if x > 0.0:
        return math.gamma(x)
    k = int(math.floor(1.0 - x)) + 1  # smallest k with x + k > 1
    prod = 1.0
    for j in range(k):
        prod *= x + j
    return math.gamma(x + k) / prod


#: beyond this argument scipy.special.ive returns NaN (internal 2^30 limit);
#: the uniform large-argument expansion is exact to ~1e-15 there already
_IVE_BACKEND_MAX = 1e8


def bessel_i_scaled(nu: float, z: float) -> float:
    """e^{-z} I_nu(z), valid for nu > -1 and z >= 0. Never overflows."""
    _check_i_args(nu, z)
    if z <= _IVE_BACKEND_MAX:
        return float(_sp.ive(nu, z))
    # e^{-z} I_nu(z) = (2 pi z)^{-1/2} (1 - a1/z + a2/z^2 - a3/z^3 + ...),
    # a_k = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (k! 8^k)
    m = 4.0 * nu * nu
    a1 = (m - 1.0) / 8.0
    a2 = (m - 1.0) * (m - 9.0) / 128.0
    a3 = (m - 1.0) * (m - 9.0) * (m - 25.0) / 3072.0
    return (1.0 - a1 / z + a2 / z**2 - a3 / z**3) / math.sqrt(2.0 * math.pi * z)


def bessel_i(nu: float, z: float) -> float:
    """I_nu(z) for nu > -1, 0 <= z <= 700; use bessel_i_scaled beyond that."""
    _check_i_args(nu, z)
    if z > UNSCALED_BESSEL_I_MAX:
        raise OverflowError(
            f"I_nu({z:g}) overflows double precision; use bessel_i_scaled"
        )
    return float(_sp.iv(nu, z))


def bessel_j(nu: float, z: float) -> float:
    """Bessel J_nu(z) for nu >= -1/2, z >= 0.

    The combination sqrt(z) J_nu(z) stays bounded on the half-line, which
    is what makes it usable as an integral-transform kernel.
    """
    if nu < -0.5:
        raise DomainError(f"bessel_j requires nu >= -1/2, got {nu:g}")
    if z < 0.0:
        raise DomainError(f"bessel_j requires z >= 0, got {z:g}")
    return float(_sp.jv(nu, z))


def hermite(k: int, r: float) -> float:
    """Physicists' Hermite polynomial H_k(r) by the three-term recurrence."""
    if k < 0 or k != int(k):
        raise DomainError(f"hermite degree must be a nonnegative integer, got {k}")
    h_prev, h = 1.0, 2.0 * r
    if k == 0:
        return h_prev
    for j in range(1, k):
        h_prev, h = h, 2.0 * r * h - 2.0 * j * h_prev
    return h


def _check_i_args(nu: float, z: float) -> None:
    if nu <= -1.0:
        raise DomainError(f"bessel_i requires nu > -1, got {nu:g}")
    if z < 0.0:
        raise DomainError(f"bessel_i requires z >= 0, got {z:g}")
