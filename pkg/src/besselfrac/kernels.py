"""Closed-form and subordinated kernels of the Bessel semigroups.

Heat kernel on the half-line for -d^2/dx^2 + lam(lam-1)/x^2:

    W_t(x, y) = sqrt(xy)/(2t) * I_{lam-1/2}(xy/(2t)) * e^{-(x^2+y^2)/(4t)}

evaluated as  sqrt(xy)/(2t) * [e^{-z} I_nu(z)] * e^{-(x-y)^2/(4t)}  with
z = xy/(2t), which never overflows.  The Poisson kernel is the Bochner
subordination of W in time; the fractional kernels are time integrals of
W against dt/t^{1+sigma}.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from . import specfun
from .errors import DomainError, QuadratureError
from .grids import OperatorParams
from .quad import (
    DEFAULT_SPEC,
    QuadratureSpec,
    integrate_finite,
    integrate_pv,
    integrate_semi_infinite,
)

#: closer diagonal pairs than this (relative to max(x, y)) are rejected
DIAGONAL_EXCLUSION = 1e-8


@dataclass(frozen=True)
class KernelEval:
    value: float
    err_est: float
    regime: str  # "series" | "asymptotic" | "subordinated"


def _check_positive(**kw):
    for name, v in kw.items():
        if not v > 0:
            raise DomainError(f"{name} must be positive, got {v}")


def heat_kernel(p: OperatorParams, t: float, x: float, y: float) -> KernelEval:
    """Bessel heat kernel W_t(x, y); nonnegative and symmetric in (x, y)."""
    _check_positive(t=t, x=x, y=y)
    z = x * y / (2.0 * t)
    value = heat_kernel_value(p, t, x, y)
    regime = "series" if z < specfun.series_asymptotic_crossover(p.nu) else "asymptotic"
    return KernelEval(value, 5e-15 * value, regime)


def heat_kernel_value(p: OperatorParams, t: float, x: float, y: float) -> float:
    """Scalar shortcut for quadrature loops."""
    u = x - y
    expo = -u * u / (4.0 * t)
    if expo < -745.0:
        # the Gaussian factor underflows; the scaled Bessel factor is
        # bounded, so the kernel is an exact float zero here
        return 0.0
    z = x * y / (2.0 * t)
    return math.sqrt(x * y) / (2.0 * t) * specfun.bessel_i_scaled(p.nu, z) * math.exp(expo)


def gauss_weierstrass(t: float, x: float) -> float:
    """Classical heat kernel (4 pi t)^{-1/2} e^{-x^2/(4t)} on the line."""
    _check_positive(t=t)
    return math.exp(-x * x / (4.0 * t)) / math.sqrt(4.0 * math.pi * t)


def classical_poisson(t: float, x: float) -> float:
    """Classical Poisson kernel (1/pi) t/(t^2 + x^2) on the line."""
    _check_positive(t=t)
    return t / (math.pi * (t * t + x * x))


def _peak_splits(x: float, t: float) -> tuple[float, ...]:
    # The y-integrand of the heat kernel peaks at y ~ x with width ~ sqrt(t);
    # seed the adaptive rule with the peak and its shoulders.
    w = 6.0 * math.sqrt(t)
    return tuple(s for s in (x - w, x, x + w) if s > 0.0)


def heat_mass(
    p: OperatorParams, t: float, x: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> float:
    """Mass of the heat kernel, int_0^inf W_t(x, y) dy.

    Strictly below 1 for lam >= 1 (Dirichlet-type loss at the origin);
    tends to 1 as t -> 0+.
    """
    _check_positive(t=t, x=x)
    r = integrate_semi_infinite(
        lambda y: heat_kernel_value(p, t, x, y),
        0.0,
        spec,
        split=_peak_splits(x, t),
    )
    return float(r.value)


def poisson_kernel(
    p: OperatorParams,
    t: float,
    x: float,
    y: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    form: str = "subordination",
) -> KernelEval:
    """Bessel Poisson kernel by subordination of the heat kernel.

    form="subordination":  t/(2 sqrt(pi)) int_0^inf e^{-t^2/(4s)} s^{-3/2} W_s(x,y) ds
    form="gamma":          1/sqrt(pi)    int_0^inf e^{-r} r^{-1/2} W_{t^2/(4r)}(x,y) dr

    The two agree within their combined error estimates.
    """
    _check_positive(t=t, x=x, y=y)
    if form == "subordination":
        splits = sorted(
            s for s in (t * t / 4.0, abs(x - y) ** 2 / 4.0, x * y / 2.0) if s > 0
        )
        r = integrate_semi_infinite(
            lambda s: t
            / (2.0 * math.sqrt(math.pi))
            * math.exp(-t * t / (4.0 * s))
            * s**-1.5
            * heat_kernel_value(p, s, x, y),
            0.0,
            spec,
            split=splits,
        )
    elif form == "gamma":
        r = integrate_semi_infinite(
            lambda u: math.exp(-u)
            / math.sqrt(math.pi * u)
            * heat_kernel_value(p, t * t / (4.0 * u), x, y),
            0.0,
            spec,
        )
    else:
        raise ValueError(f"unknown poisson_kernel form {form!r}")
    return KernelEval(float(r.value), r.err_est, "subordinated")


def _gamma_bessel_integral(q: float, nu: float, c: float, spec: QuadratureSpec):
    """int_0^inf u^q e^{-u} [e^{-cu} I_nu(c u)] du for c > 0, q > -1.

    For large c the scaled Bessel factor crosses from a power to a
    ~(2 pi c u)^{-1/2} plateau at u ~ 1/c, followed by a long power ramp
    up to the exponential cutoff; the ramp is integrated in log space,
    where it is a smooth exponential profile.
    """

    def integrand(u):
        return u**q * math.exp(-u) * specfun.bessel_i_scaled(nu, c * u)

    if c <= 40.0:
        r = integrate_semi_infinite(integrand, 0.0, spec, split=(q + 1.0,))
        return float(r.value), r.err_est

    lo = 20.0 / c
    head = integrate_finite(integrand, 0.0, lo, spec, points=(1.0 / c,))
    ramp = integrate_finite(
        lambda v: integrand(math.exp(v)) * math.exp(v), math.log(lo), 0.0, spec
    )
    tail = integrate_semi_infinite(integrand, 1.0, spec, unit_split=False)
    value = float(head.value) + float(ramp.value) + float(tail.value)
    return value, head.err_est + ramp.err_est + tail.err_est


def k_sigma(
    p: OperatorParams, x: float, y: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> KernelEval:
    """Singular jump kernel: time integral of the heat kernel,

        K(x, y) = 1/(-Gamma(-sigma)) int_0^inf W_t(x, y) dt/t^{1+sigma},

    nonnegative, symmetric, and bounded by C |x-y|^{-1-2 sigma}.
    """
    _check_positive(x=x, y=y)
    if abs(x - y) < DIAGONAL_EXCLUSION * max(x, y):
        raise DomainError(
            f"k_sigma blows up on the diagonal; |x-y| must exceed "
            f"{DIAGONAL_EXCLUSION:g} * max(x, y) (got x={x:g}, y={y:g})"
        )
    s = p.sigma
    # Change of variables u = (x-y)^2/(4t) turns the time integral into a
    # Gamma-type integral with a uniformly benign integrand:
    #   K = [2 4^s sqrt(xy) / (-Gamma(-s) d^{2+2s})]
    #         int_0^inf u^s e^{-u} [e^{-z} I_nu](2 x y u / d^2) du,  d = |x-y|.
    d2 = (x - y) * (x - y)
    c = 2.0 * x * y / d2
    value, err = _gamma_bessel_integral(s, p.nu, c, spec)
    front = 2.0 * 4.0**s * math.sqrt(x * y) / ((-specfun.gamma(-s)) * d2 ** (1.0 + s))
    return KernelEval(front * value, front * err, "subordinated")


@functools.lru_cache(maxsize=4096)
def riesz_kernel(
    p: OperatorParams, x: float, y: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> KernelEval:
    """Kernel of the negative power (sigma < 1/2):

        N(x, y) = 4^s Gamma(s+1/2)/(2 sqrt(pi) Gamma(2s))
                     int_0^inf W_t(x, y) t^{s-1} dt,

    obtained by integrating the subordination formula in time.  The same
    change of variables as for the jump kernel makes the integrand a
    benign Gamma-type one; the |x-y|^{2s-1} singularity is integrable.
    """
    _check_positive(x=x, y=y)
    s = p.sigma
    if s >= 0.5:
        raise DomainError("riesz_kernel represents the negative power for sigma < 1/2")
    if abs(x - y) < DIAGONAL_EXCLUSION * max(x, y):
        raise DomainError("riesz_kernel needs x != y (integrable singularity)")
    d2 = (x - y) * (x - y)
    c = 2.0 * x * y / d2
    value, err = _gamma_bessel_integral(-s, p.nu, c, spec)
    front = (
        specfun.gamma(s + 0.5)
        / (math.sqrt(math.pi) * specfun.gamma(2.0 * s))
        * math.sqrt(x * y)
        * d2 ** (s - 1.0)
    )
    return KernelEval(front * value, front * err, "subordinated")


def b_sigma(
    p: OperatorParams,
    x: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    via_decomposition: bool = False,
) -> float:
    """Mass-defect term B(x) = 1/Gamma(-sigma) int_0^inf (W_t 1(x) - 1) dt/t^{1+sigma}.

    The default path integrates the mass defect directly (one nested
    quadrature).  via_decomposition=True recomputes it as the difference
    of the classical-comparison term and the reflected-Gaussian term, a
    slower cross-check route.
    """
    _check_positive(x=x)
    s = p.sigma
    g_minus_sigma = specfun.gamma(-s)
    inner = spec.tightened(10.0)
    if not via_decomposition:
        r = integrate_semi_infinite(
            lambda t: (heat_mass(p, t, x, inner) - 1.0) * t ** (-1.0 - s),
            0.0,
            spec,
            split=(x * x,),
        )
        return float(r.value) / g_minus_sigma

    # Decomposition path: B = A1 - A2 with
    #   A1 = 1/G(-s) int (W_t 1(x) - [1 - erfc(x/(2 sqrt t))/2]) dt/t^{1+s}
    #   A2 = 1/G(-s) int erfc(x/(2 sqrt t))/2 dt/t^{1+s}
    # (the reflected Gaussian integrates to erfc(x/(2 sqrt t))/2 in y).
    def half_erfc(t):
        return 0.5 * math.erfc(x / (2.0 * math.sqrt(t)))

    a1 = integrate_semi_infinite(
        lambda t: (heat_mass(p, t, x, inner) - 1.0 + half_erfc(t)) * t ** (-1.0 - s),
        0.0,
        spec,
        split=(x * x,),
    )
    a2 = integrate_semi_infinite(
        lambda t: half_erfc(t) * t ** (-1.0 - s), 0.0, spec, split=(x * x,)
    )
    return (float(a1.value) - float(a2.value)) / g_minus_sigma


@functools.lru_cache(maxsize=4096)
def c_sigma_compensator(
    p: OperatorParams, x: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> float:
    """Drift compensator C(x): symmetric principal value of K(x, y)(x - y)
    over the unit window {|x - y| <= 1}.  Only defined for sigma >= 1/2,
    where the first-order Taylor compensation needs it.
    """
    _check_positive(x=x)
    if p.sigma < 0.5:
        raise DomainError(
            f"compensator is defined for sigma >= 1/2 (got sigma={p.sigma:g})"
        )
    a = max(0.0, x - 1.0)
    b = x + 1.0
    inner = spec.tightened(10.0)
    # The one-sided excised integrals diverge individually as eps -> 0 and
    # cancel pairwise, so they must run at tight tolerances; the
    # extrapolated limit, on the other hand, cannot honestly claim those
    # tolerances (the excision error decays like a small power of eps,
    # with a log factor at sigma = 1/2), so adequacy is judged against an
    # extrapolation-limited bound.
    pv_spec = QuadratureSpec(
        abs_tol=min(spec.abs_tol, 1e-10),
        rel_tol=min(spec.rel_tol, 1e-8),
        max_subdivisions=spec.max_subdivisions,
        pv_schedule=spec.pv_schedule,
        pv_levels=max(spec.pv_levels, 10),
    )
    r = integrate_pv(
        lambda y: k_sigma(p, x, y, inner).value * (x - y), a, b, x, pv_spec
    )
    if r.err_est > max(3e-6, 1e-4 * abs(r.value)):
        raise QuadratureError(
            f"compensator principal value too noisy (value {r.value:.6g}, "
            f"err_est {r.err_est:.2g})"
        )
    return float(r.value)
