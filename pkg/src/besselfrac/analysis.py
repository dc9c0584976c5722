"""Characterization functionals built on fractional time derivatives of the
Poisson semigroup: the square (Littlewood-Paley type) function, the area
function over positive cones, fractional Carleson box integrals, the
Holder-growth ratio, and Hardy-space atoms as standardized inputs.

All functionals consume |F(x, t)| with F(x, t) = t^beta d_t^beta P_t f(x);
F itself comes from operators.poisson_deriv_field, which picks the fastest
sound evaluation strategy per input class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, PreconditionError
from .grids import Grid, OperatorParams, default_grid
from .operators import poisson_deriv_field
from .quad import (
    DEFAULT_SPEC,
    CarlesonBox,
    Cone,
    QuadratureSpec,
    integrate_finite,
    integrate_iterated_2d,
    integrate_semi_infinite,
)


@dataclass(frozen=True)
class IntervalFamily:
    """Bounded subintervals of the half-line over which suprema are taken."""

    intervals: tuple[tuple[float, float], ...]

    @classmethod
    def dyadic(cls, x_max: float = 4.0, k_min: int = -3, k_max: int = 6) -> "IntervalFamily":
        """Dyadic intervals (j 2^-k, (j+1) 2^-k) clipped to (0, x_max)."""
        out = []
        for k in range(k_min, k_max + 1):
            length = 2.0**-k
            j = 0
            while j * length < x_max:
                lo = j * length
                hi = min((j + 1) * length, x_max)
                if hi > lo:
                    out.append((lo, hi))
                j += 1
        return cls(tuple(sorted(set(out))))

    def refined(self) -> "IntervalFamily":
        """One extra (finer) dyadic generation; the supremum over the
        refinement can only grow."""
        extra = []
        for lo, hi in self.intervals:
            mid = 0.5 * (lo + hi)
            extra.append((lo, mid))
            extra.append((mid, hi))
        return IntervalFamily(tuple(sorted(set(self.intervals) | set(extra))))

    def __len__(self) -> int:
        return len(self.intervals)


@dataclass(frozen=True)
class ConeSpec:
    """Positive cone {(y, t): y > 0, |x - y| < t} truncated at t_max."""

    x: float
    t_max: float = 16.0

    def __post_init__(self):
        if self.x <= 0 or not math.isfinite(self.t_max):
            raise DomainError("cone needs x > 0 and finite t_max")


@dataclass(frozen=True)
class Atom:
    """Hardy-space building block on the half-line.

    kind "boundary": b^{-1/p} on (0, b).  kind "cancellative": a two-box
    difference on (b, c) with exact zero integral and sup norm exactly
    (c-b)^{-1/p}.  The profile carries a .boxes decomposition used by the
    closed-form Poisson evaluations.
    """

    kind: str
    p: float
    b: float
    c: float | None
    profile: Callable[[float], float] = field(compare=False)

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, self.b) if self.kind == "boundary" else (self.b, self.c)


def make_atom(kind: str, b: float, c: float | None = None, p: float = 1.0) -> Atom:
    if not 0.5 < p <= 1.0:
        raise DomainError(f"atom exponent p must lie in (1/2, 1], got {p}")
    if kind == "boundary":
        if b <= 0:
            raise DomainError("boundary atom needs b > 0")
        height = b ** (-1.0 / p)
        boxes = ((height, 0.0, b),)
    elif kind == "cancellative":
        if c is None or not 0.0 <= b < c:
            raise DomainError("cancellative atom needs 0 <= b < c")
        height = (c - b) ** (-1.0 / p)
        mid = 0.5 * (b + c)
        boxes = ((height, b, mid), (-height, mid, c))
    else:
        raise ValueError(f"unknown atom kind {kind!r}")

    def profile(x):
        xx = np.asarray(x, dtype=float)
        out = np.zeros_like(xx)
        for coef, lo, hi in boxes:
            out = out + coef * ((xx > lo) & (xx <= hi))
        return out if out.ndim else float(out)

    profile.boxes = boxes
    profile.decay = "compact"
    profile.support = (boxes[0][1], boxes[-1][2])
    return Atom(kind, p, b, c, profile)


def g_function(
    p: OperatorParams,
    beta: float,
    f: Callable[[float], float],
    x: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> float:
    """Square function (int_0^inf |t^beta d_t^beta P_t f(x)|^2 dt/t)^{1/2}."""
    F = poisson_deriv_field(p, beta, f, spec.tightened(10.0))
    r = integrate_semi_infinite(
        lambda t: abs(F(x, t)) ** 2 / t, 0.0, spec, split=(x,)
    )
    return math.sqrt(max(float(r.value), 0.0))


def area_function(
    p: OperatorParams,
    beta: float,
    f: Callable[[float], float],
    cone: ConeSpec,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> float:
    """Area function over the truncated positive cone with apex cone.x.

    The part of the cone above t_max is not integrated; a crude tail bound
    from the uniform kernel estimate (|F| <= C t^{-1}-type decay) is
    t_max^{-2}-small and covered by the functional's use in ratio checks.
    """
    F = poisson_deriv_field(p, beta, f, spec.tightened(10.0))
    r = integrate_iterated_2d(
        lambda y, t: abs(F(y, t)) ** 2 / (t * t),
        Cone(cone.x, cone.t_max),
        spec,
    )
    return math.sqrt(max(float(r.value), 0.0))


def carleson_box_integral(
    p: OperatorParams,
    beta: float,
    f: Callable[[float], float],
    interval: tuple[float, float],
    spec: QuadratureSpec = DEFAULT_SPEC,
    field_fn: Callable[[float, float], complex] | None = None,
) -> float:
    """int_0^{|I|} int_I |t^beta d_t^beta P_t f(x)|^2 dx dt/t over one box."""
    lo, hi = interval
    F = field_fn or poisson_deriv_field(p, beta, f, spec.tightened(10.0))
    r = integrate_iterated_2d(
        lambda y, t: abs(F(y, t)) ** 2 / t, CarlesonBox(lo, hi), spec
    )
    return float(r.value)


def carleson_norm(
    p: OperatorParams,
    beta: float,
    alpha: float,
    f: Callable[[float], float],
    fam: IntervalFamily,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> float:
    """Supremum of the Carleson box integrals over the family.

    The box integral is taken exactly as displayed in the fractional
    Carleson condition (no extra |I|-power normalization); the
    alpha-dependence of the matching growth condition lives in
    poisson_holder_ratio.  alpha < min(lam, beta) is required for the
    finiteness statement to apply.
    """
    if not alpha < min(p.lam, beta):
        raise PreconditionError(
            f"carleson_norm needs alpha < min(lam, beta) = {min(p.lam, beta):g}"
        )
    F = poisson_deriv_field(p, beta, f, spec.tightened(10.0))
    best = 0.0
    for interval in fam.intervals:
        best = max(
            best, carleson_box_integral(p, beta, f, interval, spec, field_fn=F)
        )
    return best


def poisson_holder_ratio(
    p: OperatorParams,
    beta: float,
    alpha: float,
    f: Callable[[float], float],
    t_set: Sequence[float],
    spec: QuadratureSpec = DEFAULT_SPEC,
    x_grid: Grid | None = None,
) -> float:
    """sup over the grid and t_set of |t^beta d_t^beta P_t f(x)| / t^alpha.

    Finite exactly when f lies in the Holder-plus class of exponent alpha
    (with alpha < min(lam, beta)); comparable to the Holder norm.
    """
    if not alpha < min(p.lam, beta):
        raise PreconditionError(
            f"poisson_holder_ratio needs alpha < min(lam, beta) = {min(p.lam, beta):g}"
        )
    grid = x_grid or default_grid()
    F = poisson_deriv_field(p, beta, f, spec)
    best = 0.0
    for t in t_set:
        ta = t**alpha
        for x in grid.nodes:
            best = max(best, abs(F(x, t)) / ta)
    return best


def polarization_pairing(
    p: OperatorParams,
    beta: float,
    f: Callable[[float], float],
    a: Callable[[float], float],
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> complex:
    """int_0^inf int_0^inf F_f(x,t) conj(F_a(x,t)) dx dt/t.

    For the square-function fields this pairing reproduces a Gamma-factor
    multiple of int f a; the constant is pinned in the verification suite.
    """
    Ff = poisson_deriv_field(p, beta, f, spec.tightened(10.0))
    Fa = poisson_deriv_field(p, beta, a, spec.tightened(10.0))

    def inner(t):
        r = integrate_semi_infinite(
            lambda x: Ff(x, t) * Fa(x, t).conjugate(), 0.0, spec, split=(1.0 + t,)
        )
        return r.value

    r = integrate_semi_infinite(lambda t: inner(t) / t, 0.0, spec, split=(1.0,))
    return complex(r.value)
