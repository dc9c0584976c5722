"""Adaptive quadrature engines: finite, semi-infinite, principal-value and
iterated two-dimensional integrals, all reporting an error estimate.

The 1-D workhorse is scipy.integrate.quad (adaptive Gauss-Kronrod with
extrapolation; the nested rule never evaluates interval endpoints, so
integrable endpoint singularities are handled).  This module owns domain
mapping, interval splitting, symmetric principal-value excision and the
convergence bookkeeping.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate as _integrate

from .errors import QuadratureError

_INFINITE_MAPS = ("rational", "exponential")


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and strategy knobs shared by every integral in the package.

    pv_schedule: explicit decreasing excision radii for principal values;
    None derives the geometric schedule eps_k = eps0 * 2^-k (k < pv_levels)
    from the interval at call time.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 200
    infinite_map: str = "rational"
    pv_schedule: tuple[float, ...] | None = None
    pv_levels: int = 9

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise ValueError("tolerances must be nonnegative")
        if self.abs_tol == 0 and self.rel_tol == 0:
            raise ValueError("at least one of abs_tol, rel_tol must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")
        if self.infinite_map not in _INFINITE_MAPS:
            raise ValueError(f"infinite_map must be one of {_INFINITE_MAPS}")
        if self.pv_schedule is not None:
            eps = tuple(float(e) for e in self.pv_schedule)
            if any(e <= 0 for e in eps):
                raise ValueError("pv_schedule radii must be positive")
            if any(b >= a for a, b in zip(eps, eps[1:])):
                raise ValueError("pv_schedule must be strictly decreasing")
        if self.pv_levels < 3:
            raise ValueError("pv_levels must be at least 3 (extrapolation needs 3)")

    def tightened(self, factor: float) -> "QuadratureSpec":
        """Copy with both tolerances divided by `factor` (for inner integrals)."""
        return QuadratureSpec(
            abs_tol=self.abs_tol / factor,
            rel_tol=self.rel_tol / factor,
            max_subdivisions=self.max_subdivisions,
            infinite_map=self.infinite_map,
            pv_schedule=self.pv_schedule,
            pv_levels=self.pv_levels,
        )

    def tolerance_for(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


DEFAULT_SPEC = QuadratureSpec()

# Loose preset for survey-style sweeps (supremum scans, factor-10 bands)
# where the acceptance tolerance is orders of magnitude above 1e-8.
FAST_SPEC = QuadratureSpec(abs_tol=1e-9, rel_tol=1e-6, max_subdivisions=120)


@dataclass
class QuadResult:
    value: float | complex
    err_est: float
    converged: bool
    evaluations: int

    def __iadd__(self, other: "QuadResult") -> "QuadResult":
        self.value = self.value + other.value
        self.err_est += other.err_est
        self.converged = self.converged and other.converged
        self.evaluations += other.evaluations
        return self


def _zero_result() -> QuadResult:
    return QuadResult(0.0, 0.0, True, 0)


class _CountedIntegrand:
    """Wraps an integrand: counts evaluations and hard-fails on NaN."""

    __slots__ = ("f", "count")

    def __init__(self, f: Callable[[float], float]):
        self.f = f
        self.count = 0

    def __call__(self, x: float):
        self.count += 1
        fx = self.f(x)
        if isinstance(fx, complex):
            if math.isnan(fx.real) or math.isnan(fx.imag):
                raise QuadratureError(f"integrand returned NaN at x = {x!r}")
            return fx
        if math.isnan(fx):
            raise QuadratureError(f"integrand returned NaN at x = {x!r}")
        return fx


def _quad_real(f, a, b, spec, points=None) -> QuadResult:
    wrapped = _CountedIntegrand(f)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _integrate.IntegrationWarning)
        out = _integrate.quad(
            wrapped,
            a,
            b,
            epsabs=spec.abs_tol,
            epsrel=spec.rel_tol,
            limit=spec.max_subdivisions,
            points=points,
            full_output=1,
        )
    value, err = out[0], out[1]
    trouble = len(out) > 3
    converged = (not trouble) and err <= spec.tolerance_for(value)
    return QuadResult(value, err, converged, wrapped.count)


def integrate_finite(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    points: Sequence[float] | None = None,
) -> QuadResult:
    """Integral of f over (a, b); integrable endpoint singularities allowed.

    `points` lists interior abscissae where the integrand changes
    behaviour (kinks, regime seams); the interval is pre-split there.
    """
    if not a < b:
        raise ValueError(f"integrate_finite needs a < b, got ({a}, {b})")
    pts = None
    if points is not None:
        pts = sorted(p for p in points if a < p < b)
        if not pts:
            pts = None
    probe = 0.5 * (a + b) if pts is None else 0.5 * (a + pts[0])
    if isinstance(f(probe), complex):
        re = _quad_real(lambda x: f(x).real, a, b, spec, pts)
        im = _quad_real(lambda x: f(x).imag, a, b, spec, pts)
        return QuadResult(
            complex(re.value, im.value),
            re.err_est + im.err_est,
            re.converged and im.converged,
            re.evaluations + im.evaluations + 1,
        )
    result = _quad_real(f, a, b, spec, pts)
    result.evaluations += 1
    return result


def _map_rational(f, c, spec) -> QuadResult:
    # t = c + s/(1-s) maps (0,1) onto (c, inf); dt = ds/(1-s)^2.  Deep
    # bisection can round nodes onto s = 1 exactly; the weight there is 0
    # for any convergent integrand.
    def g(s):
        w = 1.0 - s
        if w <= 1e-300:
            return 0.0
        return f(c + s / w) / (w * w)

    return integrate_finite(g, 0.0, 1.0, spec)


def integrate_semi_infinite(
    f: Callable[[float], float],
    a: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    split: Sequence[float] | None = None,
    unit_split: bool = True,
) -> QuadResult:
    """Integral of f over (a, inf) after a change of variables.

    The tail beyond the last split point is mapped to (0,1) per
    spec.infinite_map.  When a < 1 the interval is split at t = 1 by
    default (unit_split) so an origin singularity and a decaying tail are
    treated by separate rules; callers may list further scale points in
    `split`.
    """
    cuts = sorted({float(s) for s in (split or ()) if s > a and math.isfinite(s)})
    if unit_split and a < 1.0 and not any(abs(c - 1.0) < 1e-12 for c in cuts):
        cuts.append(1.0)
        cuts.sort()
    total = _zero_result()
    lo = a
    for c in cuts:
        total += integrate_finite(f, lo, c, spec)
        lo = c
    if spec.infinite_map == "rational":
        total += _map_rational(f, lo, spec)
    else:
        # t = lo + e^v - 1 turns (lo, inf) into v in (0, inf), compressing
        # power tails to exponential ones; the v-integral is then mapped
        # rationally.  The abscissa is capped at e^150 so that moderate
        # powers of it stay representable; integrands this map is suited
        # to have vanished long before.
        def g(v):
            if v > 150.0:
                return 0.0
            ev = math.exp(v)
            return f(lo + ev - 1.0) * ev

        total += _map_rational(g, 0.0, spec)
    return total


def _aitken_pass(vals: list) -> list:
    # A_i = x_{i+2} - (d_2)^2 / (d_2 - d_1), exact on geometric error decay
    out = []
    for i in range(len(vals) - 2):
        d1, d2 = vals[i + 1] - vals[i], vals[i + 2] - vals[i + 1]
        denom = d2 - d1
        if denom == 0.0:
            out.append(vals[i + 2])
        else:
            out.append(vals[i + 2] - d2 * d2 / denom)
    return out


def richardson_extrapolate(
    values: Sequence[float], tol: float
) -> tuple[float, float, bool]:
    """Limit of a sequence with (near-)geometric error decay, plus spread
    and a health flag.

    Two passes of Aitken's delta-squared on the tail; the decay rate is
    taken from the iterates themselves, so unknown power laws and mild
    logarithmic corrections are handled.  Returns (limit, spread,
    converged).
    """
    vals = [float(v) for v in values]
    if len(vals) < 3:
        v = vals[-1]
        return v, abs(vals[-1] - vals[0]) if len(vals) > 1 else tol, False
    d_last = vals[-1] - vals[-2]
    if abs(d_last) <= tol:
        # Differences already at tolerance: no extrapolation needed.
        return vals[-1], abs(d_last), True
    accel = _aitken_pass(vals)
    if len(accel) >= 3:
        accel2 = _aitken_pass(accel)
        spread2 = abs(accel2[-1] - accel2[-2]) if len(accel2) > 1 else abs(
            accel2[-1] - accel[-1]
        )
        spread1 = abs(accel[-1] - accel[-2])
        if spread2 < spread1:
            limit, spread = accel2[-1], spread2
        else:
            limit, spread = accel[-1], spread1
    else:
        limit = accel[-1]
        spread = abs(accel[-1] - accel[-2]) if len(accel) > 1 else abs(d_last)
    d_prev = vals[-2] - vals[-3]
    ratio = abs(d_last / d_prev) if d_prev != 0.0 else 0.0
    converged = ratio < 0.97 or spread <= tol
    return limit, spread, converged


def integrate_pv(
    f: Callable[[float], float],
    a: float,
    b: float,
    x0: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> QuadResult:
    """Principal value of f over (a, b) with symmetric excision around x0.

    Integrates over (a, x0-eps) u (x0+eps, b) along the excision schedule
    and extrapolates the iterates; the extrapolation spread is reported
    as the error estimate.
    """
    if not (a < x0 < b):
        raise ValueError(f"singular point {x0} must lie inside ({a}, {b})")
    if spec.pv_schedule is not None:
        schedule = spec.pv_schedule
    else:
        eps0 = 0.125 * min(x0 - a, b - x0)
        schedule = tuple(eps0 * 2.0**-k for k in range(spec.pv_levels))
    iterates = []
    quad_err = 0.0
    evals = 0
    ok = True
    for eps in schedule:
        part = _zero_result()
        if x0 - eps > a:
            part += integrate_finite(f, a, x0 - eps, spec)
        if x0 + eps < b:
            part += integrate_finite(f, x0 + eps, b, spec)
        iterates.append(part.value)
        quad_err = max(quad_err, part.err_est)
        evals += part.evaluations
        ok = ok and part.converged
    scale = max(abs(v) for v in iterates)
    tol = max(spec.abs_tol, spec.rel_tol * scale)
    limit, spread, extrap_ok = richardson_extrapolate(iterates, tol)
    # A tail that stops improving because it hit the side-quad noise floor
    # is settled, not diverging.
    extrap_ok = extrap_ok or spread <= 5.0 * quad_err + tol
    err = spread + quad_err
    if not extrap_ok:
        warnings.warn(
            f"principal-value iterates not settling (last: {iterates[-3:]})",
            RuntimeWarning,
            stacklevel=2,
        )
    converged = ok and extrap_ok and err <= spec.tolerance_for(limit)
    return QuadResult(limit, err, converged, evals)


# ---------------------------------------------------------------------------
# Regions for iterated 2-D integrals: outer variable t, inner variable y.


@dataclass(frozen=True)
class Rectangle:
    y_lo: float
    y_hi: float
    t_lo: float
    t_hi: float

    def t_interval(self):
        return self.t_lo, self.t_hi

    def y_interval(self, t):
        return self.y_lo, self.y_hi


@dataclass(frozen=True)
class Cone:
    """{(y, t): y > 0, 0 < t < t_max, |x - y| < t} with apex abscissa x."""

    x: float
    t_max: float

    def t_interval(self):
        return 0.0, self.t_max

    def y_interval(self, t):
        return max(0.0, self.x - t), self.x + t


@dataclass(frozen=True)
class CarlesonBox:
    """I x (0, |I|] over the bounded interval I = (y_lo, y_hi)."""

    y_lo: float
    y_hi: float

    def t_interval(self):
        return 0.0, self.y_hi - self.y_lo

    def y_interval(self, t):
        return self.y_lo, self.y_hi


def integrate_iterated_2d(
    f: Callable[[float, float], float],
    region,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> QuadResult:
    """Iterated integral of f(y, t) over a rectangle, cone or Carleson box.

    Inner integral in y at tolerances tightened by 10x, outer in t.
    """
    inner_spec = spec.tightened(10.0)
    t_lo, t_hi = region.t_interval()
    inner_err = 0.0
    inner_evals = 0
    inner_ok = True

    def outer(t):
        nonlocal inner_err, inner_evals, inner_ok
        y_lo, y_hi = region.y_interval(t)
        if not y_lo < y_hi:
            return 0.0
        r = integrate_finite(lambda y: f(y, t), y_lo, y_hi, inner_spec)
        inner_err = max(inner_err, r.err_est)
        inner_evals += r.evaluations
        inner_ok = inner_ok and r.converged
        return r.value

    result = integrate_finite(outer, t_lo, t_hi, spec)
    result.err_est += inner_err * (t_hi - t_lo)
    result.evaluations += inner_evals
    result.converged = result.converged and inner_ok
    return result


def require_converged(result: QuadResult, what: str) -> QuadResult:
    """Raise QuadratureError unless the result converged."""
    if not result.converged:
        raise QuadratureError(
            f"{what} did not converge (value {result.value!r}, "
            f"err_est {result.err_est:.3g} after {result.evaluations} evaluations)"
        )
    return result
