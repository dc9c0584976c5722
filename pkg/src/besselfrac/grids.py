"""Grids on the half-line, weighted Holder norms, Campanato ratios and the
test-function families every operator check runs on.

The Holder-plus norm combines the usual Holder quotient with the weighted
supremum of x^{-alpha} |f(x)|; functions of finite norm may grow like
x^alpha at infinity and must vanish like x^alpha at the origin.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, QuadratureError
from .quad import DEFAULT_SPEC, QuadratureSpec, integrate_finite, integrate_semi_infinite


@dataclass(frozen=True)
class OperatorParams:
    """The parameter pair (lam, sigma) of the fractional Bessel operator.

    lam > 0 selects the operator -d^2/dx^2 + lam(lam-1)/x^2; sigma in (0,1)
    is the fractional power.  lam_tilde = min(lam, 1) governs the boundary
    exponents of the Poisson kernel estimates.
    """

    lam: float
    sigma: float

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError(f"lam must be positive, got {self.lam}")
        if not 0.0 < self.sigma < 1.0:
            raise DomainError(f"sigma must lie in (0, 1), got {self.sigma}")

    @property
    def lam_tilde(self) -> float:
        return min(self.lam, 1.0)

    @property
    def nu(self) -> float:
        """Bessel order lam - 1/2 entering every kernel."""
        return self.lam - 0.5


@dataclass(frozen=True)
class Grid:
    nodes: tuple[float, ...]

    def __post_init__(self):
        x = np.asarray(self.nodes, dtype=float)
        if x.size < 8:
            raise ValueError("grid needs at least 8 nodes")
        if not np.all(np.isfinite(x)) or not np.all(x > 0):
            raise ValueError("grid nodes must be finite and positive")
        if not np.all(np.diff(x) > 0):
            raise ValueError("grid nodes must be strictly increasing")

    @classmethod
    def geometric(cls, x_min: float = 1e-2, x_max: float = 20.0, n: int = 256) -> "Grid":
        return cls(tuple(np.geomspace(x_min, x_max, n)))

    @classmethod
    def linear(cls, a: float, b: float, n: int) -> "Grid":
        return cls(tuple(np.linspace(a, b, n)))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.nodes, dtype=float)

    def __len__(self) -> int:
        return len(self.nodes)


def default_grid() -> Grid:
    return Grid.geometric(1e-2, 20.0, 256)


@dataclass
class GridFunction:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.shape != (len(self.grid),):
            raise ValueError("one value per grid node required")
        if not np.all(np.isfinite(v)):
            raise ValueError("NaN/inf forbidden in grid values")
        self.values = v

    @classmethod
    def from_callable(cls, grid: Grid, f: Callable[[float], float]) -> "GridFunction":
        return cls(grid, np.array([f(x) for x in grid.nodes]))

    def to_csv(self) -> str:
        out = io.StringIO()
        complex_valued = np.iscomplexobj(self.values)
        out.write("x,value_re,value_im\n" if complex_valued else "x,value_re\n")
        for x, v in zip(self.grid.nodes, self.values):
            if complex_valued:
                out.write(f"{x:.17g},{v.real:.17g},{v.imag:.17g}\n")
            else:
                out.write(f"{x:.17g},{float(v):.17g}\n")
        return out.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "GridFunction":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        header = lines[0].split(",")
        xs, vals = [], []
        for ln in lines[1:]:
            parts = ln.split(",")
            xs.append(float(parts[0]))
            if len(header) == 3:
                vals.append(complex(float(parts[1]), float(parts[2])))
            else:
                vals.append(float(parts[1]))
        return cls(Grid(tuple(xs)), np.array(vals))


@dataclass(frozen=True)
class HolderEstimate:
    alpha: float
    quotient_sup: float
    weight_sup: float
    total: float


def holder_norm_plus(f: GridFunction, alpha: float) -> HolderEstimate:
    """Discrete Holder-plus estimate: sup |f(x)-f(y)|/|x-y|^alpha over all
    node pairs plus sup x^{-alpha} |f(x)|.

    Exact over the given nodes (all O(n^2) pairs), monotone under grid
    refinement.
    """
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if np.iscomplexobj(f.values):
        raise DomainError("holder_norm_plus expects real-valued samples")
    x = f.grid.array
    v = f.values.astype(float)
    if x.size > 4096:
        raise ValueError("holder_norm_plus caps at 4096 nodes (O(n^2) pairs)")
    dv = np.abs(v[:, None] - v[None, :])
    dx = np.abs(x[:, None] - x[None, :])
    mask = dx > 0
    quotient = float(np.max(dv[mask] / dx[mask] ** alpha)) if np.any(mask) else 0.0
    weight = float(np.max(np.abs(v) * x ** (-alpha)))
    return HolderEstimate(alpha, quotient, weight, quotient + weight)


def l_rho_norm(
    f: Callable[[float], float], rho: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> float:
    """Weighted norm int_0^inf |f(x)| (1+x)^{-1-2 rho} dx; raises on divergence."""
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho}")
    r = integrate_semi_infinite(lambda x: abs(f(x)) * (1.0 + x) ** (-1.0 - 2.0 * rho), 0.0, spec)
    if not r.converged:
        raise QuadratureError(
            f"weighted-norm integral did not converge (estimate {r.value:.4g}, "
            f"err {r.err_est:.2g}); the function likely grows too fast for rho={rho:g}"
        )
    return float(r.value)


@dataclass(frozen=True)
class CampanatoRatio:
    m1: float
    m2: float | None  # only for intervals with left endpoint exactly 0


def campanato_ratio(
    f: Callable[[float], float],
    interval: tuple[float, float],
    alpha: float,
    p: float = 1.0,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> CampanatoRatio:
    """Mean-oscillation ratio |I|^{-1-alpha} int_I |f - f_I|^p, plus the
    absolute variant with |f| in place of f - f_I when I = (0, b)."""
    lo, hi = interval
    if not (0.0 <= lo < hi) or not math.isfinite(hi):
        raise ValueError(f"interval must be bounded inside [0, inf), got {interval}")
    if p < 1:
        raise ValueError("p must be >= 1")
    length = hi - lo
    mean = integrate_finite(f, lo, hi, spec).value / length
    m1 = (
        integrate_finite(lambda y: abs(f(y) - mean) ** p, lo, hi, spec).value
        / length ** (1.0 + alpha)
    )
    m2 = None
    if lo == 0.0:
        m2 = (
            integrate_finite(lambda y: abs(f(y)) ** p, lo, hi, spec).value
            / length ** (1.0 + alpha)
        )
    return CampanatoRatio(float(m1), None if m2 is None else float(m2))


# ---------------------------------------------------------------------------
# Test-function factory.  Returned callables carry metadata used by the
# operator routes: .decay in {"gaussian", "compact", "bounded"}, optional
# .support, .derivative, .second_derivative.


def _tag(f, **meta):
    for k, v in meta.items():
        setattr(f, k, v)
    return f


def test_functions(kind: str, **params) -> Callable[[float], float]:
    """Factory for the standard input families.

    kind="gaussian": x^lam e^{-a x^2}  (params lam > 0, a > 0)
    kind="holder":   min(x, 1)^alpha   (params alpha in (0, 1])
    kind="bump":     smooth bump supported on (center-width, center+width)
    kind="radial_gaussian": e^{-x^2}   (profile for the conjugacy route)
    """
    if kind == "gaussian":
        lam = float(params.get("lam", 1.0))
        a = float(params.get("a", 1.0))
        if lam <= 0 or a <= 0:
            raise DomainError("gaussian family needs lam > 0 and a > 0")

        def f(x):
            return x**lam * np.exp(-a * x * x)

        def df(x):
            return (lam * x ** (lam - 1.0) - 2.0 * a * x ** (lam + 1.0)) * np.exp(-a * x * x)

        def d2f(x):
            poly = (
                lam * (lam - 1.0) * x ** (lam - 2.0)
                - 2.0 * a * (2.0 * lam + 1.0) * x**lam
                + 4.0 * a * a * x ** (lam + 2.0)
            )
            return poly * np.exp(-a * x * x)

        return _tag(f, decay="gaussian", derivative=df, second_derivative=d2f,
                    lam=lam, scale=a)

    if kind == "holder":
        alpha = float(params.get("alpha", 0.5))
        if not 0.0 < alpha <= 1.0:
            raise DomainError("holder family needs alpha in (0, 1]")

        def h(x):
            return np.minimum(x, 1.0) ** alpha

        return _tag(h, decay="bounded", alpha=alpha)

    if kind == "bump":
        center = float(params.get("center", 1.0))
        width = float(params.get("width", 0.5))
        if width <= 0 or center - width < 0:
            raise DomainError("bump support must stay inside the half-line")

        def b(x):
            u = (np.asarray(x, dtype=float) - center) / width
            inside = np.abs(u) < 1.0
            out = np.zeros_like(u)
            # exp(-1/(1-u^2)) normalised to peak 1 at the center
            uu = np.where(inside, u, 0.0)
            out = np.where(inside, np.exp(1.0 - 1.0 / (1.0 - uu * uu)), 0.0)
            return out if out.ndim else float(out)

        return _tag(b, decay="compact", support=(center - width, center + width))

    if kind == "radial_gaussian":
        a = float(params.get("a", 1.0))
        if a <= 0:
            raise DomainError("radial_gaussian needs a > 0")

        def g(x):
            return np.exp(-a * x * x)

        def dg(x):
            return -2.0 * a * x * np.exp(-a * x * x)

        def d2g(x):
            return (4.0 * a * a * x * x - 2.0 * a) * np.exp(-a * x * x)

        return _tag(g, decay="gaussian", derivative=dg, second_derivative=d2g, scale=a)

    raise ValueError(f"unknown test-function kind: {kind!r}")


# keep pytest from collecting the factory when imported into test modules
test_functions.__test__ = False
