"""Named verification suites: every identity, bound, limit and band the
package claims is measured here and reported as a structured check.

Each check records a target, the measured value, the tolerance and a pass
flag; the CLI serializes them to JSON and the acceptance tests assert
them.  Two checks (`kernels.k_dirichlet_stated`, `holder.g_identity_*`)
encode target constants that the direct evaluation of their defining
integrals contradicts by an explicit factor (4^sigma, respectively 2);
they are kept verbatim and are expected to fail, with the derived-value
companions (`*_derived`) passing.  See the tests for the derivations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate as _si

from . import analysis, kernels, operators, specfun, transforms
from .grids import Grid, GridFunction, OperatorParams, default_grid, holder_norm_plus, test_functions
from .quad import DEFAULT_SPEC, FAST_SPEC, QuadratureSpec, integrate_finite, integrate_semi_infinite

SUITES = ("kernels", "routes", "semigroup", "limits", "holder", "carleson", "extension")

#: survey-grade tolerances for supremum scans and factor-of-ten bands
SURVEY_SPEC = QuadratureSpec(abs_tol=1e-8, rel_tol=3e-5, max_subdivisions=150)


@dataclass
class Check:
    name: str
    target: float
    measured: float
    tolerance: float
    passed: bool
    detail: str = ""

    @classmethod
    def relative(cls, name, target, measured, tol, detail=""):
        err = abs(measured - target) / max(abs(target), 1e-300)
        return cls(name, target, measured, tol, err <= tol, detail)

    @classmethod
    def absolute(cls, name, target, measured, tol, detail=""):
        return cls(name, target, measured, tol, abs(measured - target) <= tol, detail)

    @classmethod
    def bound(cls, name, measured, tol, detail=""):
        """measured must not exceed tol."""
        return cls(name, tol, measured, tol, measured <= tol, detail)


def _pairwise_rel_spread(values: dict[str, float]) -> float:
    vs = list(values.values())
    scale = max(abs(v) for v in vs)
    return (max(vs) - min(vs)) / scale if scale > 0 else 0.0


# ---------------------------------------------------------------------------
# kernels suite


def suite_kernels(quick: bool = False) -> list[Check]:
    checks: list[Check] = []
    pts = [(0.5, 0.5, 1.0), (1.0, 1.0, 1.0), (0.2, 2.0, 0.7), (3.0, 0.4, 1.6)]

    # Dirichlet half-line closed forms at lam = 1.
    p1 = lambda s: OperatorParams(1.0, s)
    worst = 0.0
    for t, x, y in pts:
        w = kernels.heat_kernel(p1(0.5), t, x, y).value
        closed = kernels.gauss_weierstrass(t, x - y) - kernels.gauss_weierstrass(t, x + y)
        worst = max(worst, abs(w - closed))
    checks.append(Check.bound("kernels.heat_dirichlet", worst, 1e-10))

    worst = 0.0
    for t, x, y in pts:
        pk = kernels.poisson_kernel(p1(0.5), t, x, y).value
        closed = kernels.classical_poisson(t, x - y) - kernels.classical_poisson(t, x + y)
        worst = max(worst, abs(pk - closed))
    checks.append(Check.bound("kernels.poisson_dirichlet", worst, 1e-8))

    worst = 0.0
    for t, x, _ in pts:
        m = kernels.heat_mass(p1(0.5), t, x)
        worst = max(worst, abs(m - math.erf(x / (2.0 * math.sqrt(t)))))
    checks.append(Check.bound("kernels.heat_mass_erf", worst, 1e-8))

    # Jump-kernel closed form at lam = 1.  The stated coefficient
    # c_s = s Gamma(1/2+s) / (sqrt(pi) Gamma(1-s)) disagrees with the
    # defining time integral by the factor 4^s (at s = 1/2: 1/(2 pi)
    # stated vs 1/pi evaluated); both variants are recorded.
    for s in (0.25, 0.5) if quick else (0.25, 0.5, 0.75):
        ps = p1(s)
        c_stated = s * specfun.gamma(0.5 + s) / (math.sqrt(math.pi) * specfun.gamma(1.0 - s))
        worst_stated = 0.0
        worst_derived = 0.0
        for x, y in ((1.0, 1.7), (0.5, 0.3), (2.0, 2.5)):
            shape = abs(x - y) ** (-1.0 - 2.0 * s) - (x + y) ** (-1.0 - 2.0 * s)
            got = kernels.k_sigma(ps, x, y).value
            worst_stated = max(worst_stated, abs(got - c_stated * shape) / (c_stated * shape))
            worst_derived = max(
                worst_derived, abs(got - 4.0**s * c_stated * shape) / (4.0**s * c_stated * shape)
            )
        checks.append(
            Check.bound(
                f"kernels.k_dirichlet_stated[s={s:g}]",
                worst_stated,
                1e-6,
                detail="stated coefficient; expected to fail by the factor 4^s",
            )
        )
        checks.append(
            Check.bound(f"kernels.k_dirichlet_derived[s={s:g}]", worst_derived, 1e-6)
        )

    # Gaussian domination and the far-field correction coefficient.
    lat_l = (0.7, 1.0, 2.5)
    sup_ratio = 0.0
    for lam in lat_l:
        p = OperatorParams(lam, 0.5)
        for t, x, y in pts:
            sup_ratio = max(
                sup_ratio,
                kernels.heat_kernel(p, t, x, y).value / kernels.gauss_weierstrass(t, x - y),
            )
    checks.append(Check.bound("kernels.gaussian_domination_sup", sup_ratio, 10.0))

    worst = 0.0
    for lam in (0.7, 2.5):
        p = OperatorParams(lam, 0.5)
        coef = -lam * (lam - 1.0)
        for zz in (50.0, 200.0):
            x = y = 2.0
            t = x * y / zz
            w = kernels.heat_kernel(p, t, x, y).value
            gw = kernels.gauss_weierstrass(t, x - y)
            measured = (w - gw) / (gw * t / (x * y))
            worst = max(worst, abs(measured - coef) / abs(coef))
    checks.append(Check.bound("kernels.far_field_coefficient", worst, 0.10))

    checks.extend(_envelope_checks(quick))
    return checks


def _envelope_sup(fn, pairs) -> float:
    return max(fn(*pair) for pair in pairs)


def _envelope_checks(quick: bool) -> list[Check]:
    checks = []
    lams = (1.0, 2.0) if quick else (1.0, 2.0, 3.0)
    sigmas = (0.25, 0.75) if quick else (0.25, 0.5, 0.75)
    xs = np.geomspace(0.2, 5.0, 4 if quick else 6)
    spec = SURVEY_SPEC

    def k_env(n):
        grid = np.geomspace(0.1, 8.0, n)
        sup = 0.0
        for lam in lams:
            for s in sigmas:
                p = OperatorParams(lam, s)
                for x in grid:
                    for y in grid:
                        if abs(x - y) < 1e-6 * max(x, y):
                            continue
                        sup = max(
                            sup,
                            kernels.k_sigma(p, x, y, spec).value
                            * abs(x - y) ** (1.0 + 2.0 * s),
                        )
        return sup

    def b_env(n):
        grid = np.geomspace(0.2, 5.0, n)
        sup = 0.0
        for lam in lams:
            for s in sigmas:
                p = OperatorParams(lam, s)
                for x in grid:
                    sup = max(sup, x ** (2.0 * s) * abs(kernels.b_sigma(p, x, spec)))
        return sup

    def c_env(n):
        grid = np.geomspace(0.2, 4.0, n)
        sup = 0.0
        for lam in lams:
            for s in (0.5, 0.75):
                p = OperatorParams(lam, s)
                for x in grid:
                    c = abs(kernels.c_sigma_compensator(p, x, spec))
                    if s == 0.5:
                        env = 1.0 + (abs(math.log(x)) if x < 1.0 else 0.0)
                    else:
                        env = x ** (1.0 - 2.0 * s)
                    sup = max(sup, c / env)
        return sup

    n = 4 if quick else 6
    for name, fn in (("k", k_env), ("b", b_env), ("c", c_env)):
        coarse = fn(n)
        fine = fn(2 * n)
        drift = abs(fine - coarse) / max(fine, 1e-300)
        checks.append(
            Check(
                f"kernels.envelope_{name}_finite",
                target=float("inf"),
                measured=fine,
                tolerance=float("inf"),
                passed=math.isfinite(fine) and fine > 0,
                detail=f"sup over the lattice (refined): {fine:.6g}",
            )
        )
        checks.append(
            Check.bound(
                f"kernels.envelope_{name}_stability",
                drift,
                0.10,
                detail=f"coarse {coarse:.6g} vs refined {fine:.6g}",
            )
        )
    return checks


# ---------------------------------------------------------------------------
# routes suite


def suite_routes(quick: bool = False) -> list[Check]:
    checks: list[Check] = []

    lams = (1.0, 3.0) if quick else (1.0, 2.0, 3.0)
    sigmas = (0.25, 0.75) if quick else (0.25, 0.5, 0.75)
    xs = (1.0, 4.0) if quick else (0.5, 1.0, 2.0, 4.0)
    worst = 0.0
    worst_at = ""
    for lam in lams:
        u = test_functions("gaussian", lam=lam, a=1.0)
        for s in sigmas:
            p = OperatorParams(lam, s)
            routes = ["spectral", "heat", "pointwise"] + (["poisson"] if s < 0.5 else [])
            for x in xs:
                vals = {r: operators.frac_power(p, u, x, r) for r in routes}
                rel = _pairwise_rel_spread(vals)
                if rel > worst:
                    worst, worst_at = rel, f"lam={lam:g} s={s:g} x={x:g}"
    checks.append(
        Check.bound("routes.equivalence", worst, 1e-4, detail=f"worst at {worst_at}")
    )

    # Transform identities: Gaussian pair, involution, Plancherel.
    worst = 0.0
    for lam in (0.5, 1.0, 2.0):
        phi = test_functions("gaussian", lam=lam, a=1.0)
        for x in (0.5, 1.0, 2.0):
            got = transforms.hankel(lam, phi, x)
            want = 2.0 ** -(lam + 0.5) * x**lam * math.exp(-x * x / 4.0)
            worst = max(worst, abs(got - want))
    checks.append(Check.bound("routes.hankel_gauss_pair", worst, 1e-8))

    worst = 0.0
    for lam in (1.0, 2.0):
        phi = test_functions("gaussian", lam=lam, a=1.0)
        for x in (0.5, 1.0, 2.0):
            got = transforms.spectral_apply(lam, lambda y: 1.0, phi, x)
            worst = max(worst, abs(got - phi(x)))
    checks.append(Check.bound("routes.hankel_involution", worst, 1e-6))

    worst = 0.0
    for lam in (1.0, 2.0):
        phi = test_functions("gaussian", lam=lam, a=1.0)
        table = transforms.get_table(lam, phi)
        lhs = integrate_finite(
            lambda y: table(y) ** 2, table.y_min, table.y_max, DEFAULT_SPEC
        ).value
        rhs = integrate_semi_infinite(lambda y: phi(y) ** 2, 0.0, DEFAULT_SPEC).value
        worst = max(worst, abs(lhs - rhs))
    checks.append(Check.bound("routes.plancherel", worst, 1e-6))

    # Fractional time derivative: definition vs transform-side multiplier,
    # and the integer case against centered differences.
    worst = 0.0
    lattice = [(1.0, 0.5, 1.0, 1.0), (1.0, 1.25, 0.7, 1.0)]
    if not quick:
        lattice.append((2.0, 0.5, 1.0, 1.0))
    for lam, beta, t, x in lattice:
        p = OperatorParams(lam, 0.25)
        f = test_functions("gaussian", lam=lam, a=1.0)
        a = operators.frac_deriv_poisson(p, beta, f, x, t, route="subordination")
        b = operators.frac_deriv_poisson(p, beta, f, x, t, route="hankel")
        worst = max(worst, abs(a - b))
    checks.append(Check.bound("routes.frac_deriv_agreement", worst, 1e-5))

    p = OperatorParams(1.0, 0.25)
    f = test_functions("gaussian", lam=1.0, a=1.0)
    d1 = operators.frac_deriv_poisson(p, 1.0, f, 1.0, 0.8, route="subordination").real
    h = 1e-4
    fd = (
        operators.poisson_apply(p, 0.8 + h, f, 1.0)
        - operators.poisson_apply(p, 0.8 - h, f, 1.0)
    ) / (2.0 * h)
    checks.append(Check.absolute("routes.frac_deriv_beta1_fd", fd, d1, 1e-5))

    # Radial fractional Laplacian against the frozen Fourier-side oracle
    # (independent brute force, computed before the build).
    oracle = {0.5: 1.607304339997, 1.0: 0.521221461254, 2.0: -0.061712592636}
    psi = test_functions("radial_gaussian")
    worst = 0.0
    for x, want in oracle.items():
        got = operators.radial_frac_laplacian(3, 0.5, psi, x)
        worst = max(worst, abs(got - want) / abs(want))
    checks.append(Check.bound("routes.radial_fourier_oracle", worst, 1e-4))
    return checks


# ---------------------------------------------------------------------------
# semigroup suite


def suite_semigroup(quick: bool = False) -> list[Check]:
    checks: list[Check] = []
    lams = (1.0,) if quick else (0.7, 1.0, 2.5)
    sts = ((0.3, 1.0),) if quick else ((0.3, 0.3), (0.3, 1.0), (1.0, 1.0))
    xys = ((0.5, 1.0), (2.0, 2.0)) if quick else ((0.5, 0.5), (0.5, 1.0), (1.0, 2.0), (2.0, 2.0))
    spec = DEFAULT_SPEC

    worst = 0.0
    for lam in lams:
        p = OperatorParams(lam, 0.5)
        for s, t in sts:
            for x, y in xys:
                conv = integrate_semi_infinite(
                    lambda z: kernels.heat_kernel_value(p, s, x, z)
                    * kernels.heat_kernel_value(p, t, z, y),
                    0.0,
                    spec,
                    split=(x, y),
                ).value
                direct = kernels.heat_kernel_value(p, s + t, x, y)
                worst = max(worst, abs(conv - direct) / abs(direct))
    checks.append(Check.bound("semigroup.chapman_kolmogorov_heat", worst, 1e-6))

    worst = 0.0
    inner = FAST_SPEC
    for lam in lams:
        p = OperatorParams(lam, 0.5)
        for s, t in sts:
            for x, y in xys:
                conv = integrate_semi_infinite(
                    lambda z: kernels.poisson_kernel(p, s, x, z, inner).value
                    * kernels.poisson_kernel(p, t, z, y, inner).value,
                    0.0,
                    QuadratureSpec(abs_tol=1e-9, rel_tol=1e-7),
                    split=(x, y),
                ).value
                direct = kernels.poisson_kernel(p, s + t, x, y).value
                worst = max(worst, abs(conv - direct) / abs(direct))
    checks.append(Check.bound("semigroup.chapman_kolmogorov_poisson", worst, 1e-5))

    # Function-level Poisson semigroup property on the Gaussian family.
    p = OperatorParams(1.0, 0.5)
    f = test_functions("gaussian", lam=1.0, a=1.0)
    s, t, x = 0.4, 0.7, 1.0
    p_t = lambda y: operators.poisson_apply(p, t, f, y, FAST_SPEC)
    lhs = integrate_semi_infinite(
        lambda z: kernels.poisson_kernel(p, s, x, z, FAST_SPEC).value * p_t(z),
        0.0,
        QuadratureSpec(abs_tol=1e-8, rel_tol=1e-6),
        split=(x,),
    ).value
    rhs = operators.poisson_apply(p, s + t, f, x)
    checks.append(Check.absolute("semigroup.poisson_function_level", rhs, lhs, 1e-5))
    return checks


# ---------------------------------------------------------------------------
# limits suite


def suite_limits(quick: bool = False) -> list[Check]:
    checks: list[Check] = []
    u = test_functions("holder", alpha=0.5)
    probes, target = operators.sigma_limit_probe(
        1.0, u, 1.0, "zero", sigmas=(0.05, 0.01) if quick else None
    )
    final = probes[-1][1]
    checks.append(
        Check.absolute(
            "limits.sigma_to_zero", target, final, 0.05,
            detail=f"sequence {[(s, round(v, 5)) for s, v in probes]}",
        )
    )

    v = test_functions("radial_gaussian")
    probes, target = operators.sigma_limit_probe(
        2.0, v, 2.0, "one", sigmas=(0.95, 0.99) if quick else None
    )
    final = probes[-1][1]
    checks.append(
        Check.relative(
            "limits.sigma_to_one", target, final, 0.05,
            detail=f"sequence {[(s, round(v, 5)) for s, v in probes]}",
        )
    )
    return checks


# ---------------------------------------------------------------------------
# holder suite


def _l2_norm_sq(f, hi=12.0):
    return _si.quad(lambda x: f(x) ** 2, 0.0, hi)[0]


def suite_holder(quick: bool = False) -> list[Check]:
    checks: list[Check] = []
    p = OperatorParams(1.0, 0.5)
    f = test_functions("gaussian", lam=1.0, a=1.0)
    spec = QuadratureSpec(abs_tol=1e-10, rel_tol=1e-7)

    # Square-function L2 identity.  The stated ratio Gamma(2b)/2^{2b-1}
    # exceeds the direct Plancherel evaluation of the defining integrals
    # by a factor 2 (the polarization check below, which passes, pins the
    # same constant at Gamma(2b)/2^{2b}); both variants are recorded.
    den = _l2_norm_sq(f)
    for beta in ((1.0,) if quick else (0.5, 1.0)):
        num = integrate_finite(
            lambda x: analysis.g_function(p, beta, f, x, spec) ** 2,
            0.0,
            60.0,
            spec,
            points=(1.0, 4.0),
        ).value
        ratio = num / den
        stated = specfun.gamma(2.0 * beta) / 2.0 ** (2.0 * beta - 1.0)
        derived = specfun.gamma(2.0 * beta) / 2.0 ** (2.0 * beta)
        checks.append(
            Check.relative(
                f"holder.g_identity_stated[beta={beta:g}]", stated, ratio, 0.01,
                detail="stated constant; expected to fail by the factor 2",
            )
        )
        checks.append(
            Check.relative(f"holder.g_identity_derived[beta={beta:g}]", derived, ratio, 0.01)
        )

    # Polarization pairing at beta = 1: e^{2 pi i} Gamma(2)/4 = 1/4.
    atom = analysis.make_atom("boundary", b=1.0)
    pair = analysis.polarization_pairing(
        p, 1.0, f, atom.profile, QuadratureSpec(abs_tol=1e-9, rel_tol=1e-6)
    )
    rhs = _si.quad(lambda y: f(y) * atom.profile(y), 0.0, 1.0)[0]
    checks.append(
        Check.relative("holder.polarization_beta1", 0.25 * rhs, pair.real, 0.02,
                       detail=f"imag part {pair.imag:.2e}")
    )

    # Schauder shadow: the negative power lifts the Holder exponent by
    # 2 sigma with a norm factor recorded against the band 10.
    ph = OperatorParams(2.0, 0.2)
    h = test_functions("holder", alpha=0.3)
    grid = default_grid() if not quick else Grid.geometric(1e-2, 20.0, 64)
    neg = GridFunction(
        grid,
        np.array([operators.neg_power(ph, h, float(x), SURVEY_SPEC, route="kernel")
                  for x in grid.nodes]),
    )
    lifted = holder_norm_plus(neg, 0.3 + 2.0 * 0.2)
    base = holder_norm_plus(GridFunction.from_callable(grid, h), 0.3)
    ratio = lifted.total / base.total
    checks.append(
        Check(
            "holder.schauder_shadow",
            target=10.0,
            measured=ratio,
            tolerance=10.0,
            passed=math.isfinite(ratio) and ratio <= 10.0,
            detail=f"lifted norm {lifted.total:.4g}, base norm {base.total:.4g}",
        )
    )
    return checks


# ---------------------------------------------------------------------------
# carleson suite


def suite_carleson(quick: bool = False) -> list[Check]:
    checks: list[Check] = []
    p = OperatorParams(1.0, 0.5)
    beta, alpha = 1.0, 0.3
    h = test_functions("holder", alpha=alpha)
    spec = SURVEY_SPEC

    fam = analysis.IntervalFamily.dyadic(x_max=4.0, k_min=-3, k_max=3 if quick else 5)
    cn = analysis.carleson_norm(p, beta, alpha, h, fam, spec)
    fam_fine = analysis.IntervalFamily.dyadic(x_max=4.0, k_min=-3, k_max=4 if quick else 6)
    cn_fine = analysis.carleson_norm(p, beta, alpha, h, fam_fine, spec)
    drift = abs(cn_fine - cn) / cn_fine
    checks.append(
        Check(
            "carleson.finite",
            target=float("inf"),
            measured=cn_fine,
            tolerance=float("inf"),
            passed=math.isfinite(cn_fine) and cn_fine > 0,
            detail=f"sup over {len(fam_fine)} boxes",
        )
    )
    checks.append(Check.bound("carleson.family_stability", drift, 0.05))
    if cn_fine < cn:
        checks.append(
            Check("carleson.monotone", 0.0, cn_fine - cn, 0.0, False,
                  "refinement must not decrease the sup")
        )

    t_set = [10.0**k for k in (-3, -2.5, -2, -1.5, -1, -0.5, 0)]
    ratio = analysis.poisson_holder_ratio(
        p, beta, alpha, h, t_set, spec,
        x_grid=Grid.geometric(1e-2, 20.0, 64 if quick else 128),
    )
    hnorm = holder_norm_plus(
        GridFunction.from_callable(default_grid(), h), alpha
    ).total
    quantities = {
        "poisson_ratio": ratio,
        "carleson_sqrt": math.sqrt(cn_fine),
        "holder_norm": hnorm,
    }
    band = max(quantities.values()) / min(quantities.values())
    checks.append(
        Check(
            "carleson.three_way_band",
            target=10.0,
            measured=band,
            tolerance=10.0,
            passed=band <= 10.0,
            detail=", ".join(f"{k}={v:.4g}" for k, v in quantities.items()),
        )
    )

    # Atom uniformity of the area function across scales.
    pa = 0.8
    norms = []
    for b in (0.25, 1.0) if quick else (0.25, 1.0, 4.0):
        atom = analysis.make_atom("boundary", b=b, p=pa)
        val = integrate_semi_infinite(
            lambda x: analysis.area_function(p, beta, atom.profile,
                                             analysis.ConeSpec(x, 16.0), spec) ** pa,
            1e-6,
            spec,
            split=(b, 3.0 * b),
        ).value
        norms.append(val)
    spread = (max(norms) - min(norms)) / (sum(norms) / len(norms))
    checks.append(
        Check.bound(
            "carleson.atom_uniformity", spread, 0.50,
            detail=f"||S(a)||_p^p per scale: {[round(v, 5) for v in norms]}",
        )
    )
    return checks


# ---------------------------------------------------------------------------
# extension suite


def suite_extension(quick: bool = False) -> list[Check]:
    checks: list[Check] = []
    f = test_functions("gaussian", lam=1.0, a=1.0)

    p = OperatorParams(1.0, 0.5)
    u_b = operators.extension_solve(p, f, operators.ExtensionPoint(1.0, 1e-4))
    checks.append(Check.absolute("extension.boundary_recovery", f(1.0), u_b, 1e-2))

    pr = OperatorParams(1.0, 0.3)
    pt = operators.ExtensionPoint(1.0, 1.0)
    _, u_y, u_yy = operators.extension_profile(pr, f, pt)
    lu = operators.extension_bessel_apply(pr, f, pt)
    residual = u_yy + (1.0 - 2.0 * pr.sigma) / pt.y * u_y - lu
    scale = max(abs(u_yy), abs(lu))
    checks.append(
        Check.bound("extension.pde_residual", abs(residual) / scale, 1e-3,
                    detail=f"residual {residual:.3e} against scale {scale:.3g}")
    )

    # Neumann-trace constant: calibrated once, then independent of the
    # boundary function and the abscissa.
    for s in ((0.5,) if quick else (0.3, 0.5, 0.75)):
        ps = OperatorParams(1.0, s)
        c_ref = operators.calibrate_extension_constant(ps)
        f2 = test_functions("gaussian", lam=1.0, a=2.0)
        c_alt = -operators.frac_power(ps, f2, 0.7, "spectral") / operators.neumann_trace(
            ps, f2, 0.7
        )
        checks.append(
            Check.relative(
                f"extension.trace_constant_invariance[s={s:g}]", c_ref, c_alt, 1e-3,
                detail=f"calibrated c = {c_ref:.8f}",
            )
        )
    return checks


_SUITE_FN: dict[str, Callable[[bool], list[Check]]] = {
    "kernels": suite_kernels,
    "routes": suite_routes,
    "semigroup": suite_semigroup,
    "limits": suite_limits,
    "holder": suite_holder,
    "carleson": suite_carleson,
    "extension": suite_extension,
}


def run_suite(name: str, quick: bool = False) -> list[Check]:
    if name == "all":
        out: list[Check] = []
        for key in SUITES:
            out.extend(_SUITE_FN[key](quick))
        return out
    if name not in _SUITE_FN:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES + ('all',)}")
    return _SUITE_FN[name](quick)
