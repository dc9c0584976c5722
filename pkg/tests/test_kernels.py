import math

import numpy as np
import pytest
from scipy import integrate as si

from besselfrac import kernels, specfun
from besselfrac.errors import DomainError
from besselfrac.grids import OperatorParams
from besselfrac.quad import DEFAULT_SPEC, FAST_SPEC, integrate_semi_infinite


def dirichlet_heat(t, x, y):
    return kernels.gauss_weierstrass(t, x - y) - kernels.gauss_weierstrass(t, x + y)


class TestHeatKernel:
    def test_dirichlet_closed_form(self):
        p = OperatorParams(1.0, 0.5)
        got = kernels.heat_kernel(p, 1.0, 1.0, 1.0).value
        want = (1.0 - math.exp(-1.0)) / math.sqrt(4.0 * math.pi)
        assert got == pytest.approx(want, abs=1e-14)
        for t, x, y in ((0.3, 0.5, 2.0), (2.0, 1.0, 0.1)):
            assert kernels.heat_kernel(p, t, x, y).value == pytest.approx(
                dirichlet_heat(t, x, y), abs=1e-12
            )

    def test_symmetry(self):
        p = OperatorParams(2.3, 0.5)
        a = kernels.heat_kernel(p, 0.7, 0.4, 1.9).value
        b = kernels.heat_kernel(p, 0.7, 1.9, 0.4).value
        assert a == pytest.approx(b, rel=1e-13)

    def test_small_argument_constant(self):
        # value / ((xy)^lam t^{-lam-1/2} e^{-(x^2+y^2)/(4t)}) tends to a
        # constant as xy/(2t) -> 0; the small-argument law of the modified
        # Bessel factor (series oracle in test_specfun) fixes it:
        #   sqrt(xy)/(2t) (xy/(4t))^{lam-1/2}/Gamma(lam+1/2)
        #     = (xy)^lam t^{-lam-1/2} / (2^{2 lam} Gamma(lam+1/2))
        lam = 1.7
        p = OperatorParams(lam, 0.5)
        x = y = 1e-4
        t = 1.0
        got = kernels.heat_kernel(p, t, x, y).value
        envelope = (x * y) ** lam * t ** (-lam - 0.5) * math.exp(
            -(x * x + y * y) / (4.0 * t)
        )
        want = 1.0 / (2.0 ** (2.0 * lam) * specfun.gamma(lam + 0.5))
        assert got / envelope == pytest.approx(want, rel=1e-6)

    def test_regime_tag(self):
        p = OperatorParams(1.0, 0.5)
        assert kernels.heat_kernel(p, 10.0, 1.0, 1.0).regime == "series"
        assert kernels.heat_kernel(p, 0.01, 1.0, 1.0).regime == "asymptotic"

    def test_domain_errors(self):
        p = OperatorParams(1.0, 0.5)
        with pytest.raises(DomainError):
            kernels.heat_kernel(p, -1.0, 1.0, 1.0)

    def test_gaussian_domination(self):
        for lam in (0.7, 1.0, 2.5):
            p = OperatorParams(lam, 0.5)
            sup = 0.0
            for t in (0.1, 1.0, 5.0):
                for x in (0.3, 1.0, 3.0):
                    for y in (0.3, 1.0, 3.0):
                        sup = max(sup, kernels.heat_kernel(p, t, x, y).value
                                  / kernels.gauss_weierstrass(t, x - y))
            assert sup < 5.0

    def test_far_field_coefficient(self):
        # (W - GW)/(GW t/(xy)) -> -lam(lam-1)
        for lam in (0.7, 2.5):
            p = OperatorParams(lam, 0.5)
            x = y = 2.0
            for ratio in (50.0, 200.0):
                t = x * y / ratio
                w = kernels.heat_kernel(p, t, x, y).value
                gw = kernels.gauss_weierstrass(t, x - y)
                measured = (w - gw) / (gw * t / (x * y))
                assert measured == pytest.approx(-lam * (lam - 1.0), rel=0.10)


class TestGaussWeierstrass:
    def test_peak_normalization(self):
        assert kernels.gauss_weierstrass(1.0 / (4.0 * math.pi), 0.0) == pytest.approx(1.0)

    def test_unit_mass(self):
        val, _ = si.quad(lambda y: kernels.gauss_weierstrass(1.0, 0.3 - y), -np.inf, np.inf)
        assert val == pytest.approx(1.0, abs=1e-10)

    def test_point_value(self):
        want = math.exp(-1.0) / math.sqrt(4.0 * math.pi)
        assert kernels.gauss_weierstrass(1.0, 2.0) == pytest.approx(want, rel=1e-14)


class TestHeatMass:
    def test_erf_closed_form(self):
        p = OperatorParams(1.0, 0.5)
        for t, x in ((1.0, 1.0), (0.25, 2.0), (4.0, 0.5)):
            want = math.erf(x / (2.0 * math.sqrt(t)))
            assert kernels.heat_mass(p, t, x) == pytest.approx(want, abs=1e-10)
        # x/(2 sqrt t) = 2
        assert kernels.heat_mass(p, 0.25, 2.0) == pytest.approx(math.erf(2.0), abs=1e-10)

    def test_approximate_identity(self):
        p = OperatorParams(1.5, 0.5)
        got = kernels.heat_mass(p, 1e-6, 1.0)
        assert got == pytest.approx(1.0, abs=1e-6)
        # the mass defect follows lam(lam-1) t / x^2 at leading order
        defect = 1.0 - kernels.heat_mass(p, 1e-5, 1.0)
        assert defect == pytest.approx(1.5 * 0.5 * 1e-5, rel=1e-2)


class TestPoissonKernel:
    def test_dirichlet_closed_form(self):
        p = OperatorParams(1.0, 0.5)
        got = kernels.poisson_kernel(p, 1.0, 1.0, 1.0).value
        want = (1.0 / math.pi) * (1.0 - 1.0 / 5.0)
        assert got == pytest.approx(want, abs=1e-9)

    def test_forms_agree(self):
        p = OperatorParams(2.0, 0.5)
        a = kernels.poisson_kernel(p, 0.7, 1.1, 0.6, form="subordination")
        b = kernels.poisson_kernel(p, 0.7, 1.1, 0.6, form="gamma")
        assert abs(a.value - b.value) <= a.err_est + b.err_est + 1e-12

    def test_symmetry(self):
        p = OperatorParams(1.7, 0.5)
        a = kernels.poisson_kernel(p, 0.5, 0.4, 1.3).value
        b = kernels.poisson_kernel(p, 0.5, 1.3, 0.4).value
        assert a == pytest.approx(b, rel=1e-8)

    def test_classical_domination(self):
        for lam in (1.0, 2.0):
            p = OperatorParams(lam, 0.5)
            sup = 0.0
            for t in (0.1, 1.0):
                for x in (0.5, 1.0, 2.0):
                    for y in (0.5, 1.0, 2.0):
                        sup = max(
                            sup,
                            kernels.poisson_kernel(p, t, x, y, FAST_SPEC).value
                            / kernels.classical_poisson(t, x - y),
                        )
            assert sup < 5.0


class TestClassicalPoisson:
    def test_values(self):
        assert kernels.classical_poisson(1.0, 0.0) == pytest.approx(1.0 / math.pi)
        assert kernels.classical_poisson(2.0, 2.0) == pytest.approx(1.0 / (4.0 * math.pi))

    def test_unit_mass(self):
        val, _ = si.quad(lambda y: kernels.classical_poisson(0.7, y), -np.inf, np.inf)
        assert val == pytest.approx(1.0, abs=1e-9)


class TestJumpKernel:
    def test_dirichlet_constant_carries_4_to_sigma(self):
        # The defining time integral of the Dirichlet kernel evaluates to
        #   4^s c_s (|x-y|^{-1-2s} - (x+y)^{-1-2s}),
        # c_s = s Gamma(1/2+s)/(sqrt(pi) Gamma(1-s)): substituting
        # u = |x-y|^2/(4t) gives int GW_t(d) dt/t^{1+s} =
        # [2^{2s} Gamma(s+1/2)/sqrt(pi)] d^{-1-2s}, and the prefactor
        # 1/(-Gamma(-s)) = s/Gamma(1-s).  At s = 1/2 the coefficient is
        # 1/pi, the classical half-line value.
        for s in (0.25, 0.5, 0.75):
            p = OperatorParams(1.0, s)
            c = 4.0**s * s * specfun.gamma(0.5 + s) / (
                math.sqrt(math.pi) * specfun.gamma(1.0 - s)
            )
            for x, y in ((1.0, 1.7), (0.5, 0.3), (2.0, 2.01)):
                want = c * (abs(x - y) ** (-1.0 - 2.0 * s) - (x + y) ** (-1.0 - 2.0 * s))
                got = kernels.k_sigma(p, x, y).value
                assert got == pytest.approx(want, rel=1e-7)

    def test_symmetry_and_positivity(self):
        p = OperatorParams(2.2, 0.4)
        a = kernels.k_sigma(p, 0.8, 1.7).value
        b = kernels.k_sigma(p, 1.7, 0.8).value
        assert a > 0.0
        assert a == pytest.approx(b, rel=1e-9)

    def test_envelope_bound(self):
        for lam in (1.0, 3.0):
            for s in (0.25, 0.75):
                p = OperatorParams(lam, s)
                for x in (0.5, 1.0, 2.0):
                    for y in (0.2, 0.9, 4.0):
                        if abs(x - y) < 1e-3:
                            continue
                        v = kernels.k_sigma(p, x, y, FAST_SPEC).value
                        assert v * abs(x - y) ** (1.0 + 2.0 * s) < 3.0

    def test_diagonal_rejected(self):
        p = OperatorParams(1.0, 0.5)
        with pytest.raises(DomainError, match="diagonal"):
            kernels.k_sigma(p, 1.0, 1.0 + 1e-10)


class TestMassDefect:
    def test_dirichlet_pure_power(self):
        # B at lam=1 is c' x^{-2s}; the constant comes from the 1-D oracle
        # int_0^inf (erf(1/(2 sqrt u)) - 1) u^{-1-s} du / Gamma(-s)
        s = 0.3
        p = OperatorParams(1.0, s)
        oracle, _ = si.quad(
            lambda u: (math.erf(1.0 / (2.0 * math.sqrt(u))) - 1.0) * u ** (-1.0 - s),
            0.0,
            np.inf,
            limit=300,
        )
        c_prime = oracle / specfun.gamma(-s)
        assert c_prime > 0.0
        for x in (0.5, 1.0, 2.0):
            got = kernels.b_sigma(p, x)
            assert got == pytest.approx(c_prime * x ** (-2.0 * s), rel=1e-6)
            assert got > 0.0

    def test_decomposition_flag_agrees(self):
        p = OperatorParams(2.0, 0.4)
        direct = kernels.b_sigma(p, 1.3)
        decomposed = kernels.b_sigma(p, 1.3, via_decomposition=True)
        assert direct == pytest.approx(decomposed, rel=1e-5, abs=1e-8)

    def test_envelope(self):
        for lam in (1.0, 2.0):
            for s in (0.25, 0.75):
                p = OperatorParams(lam, s)
                for x in (0.3, 1.0, 3.0):
                    assert x ** (2.0 * s) * abs(kernels.b_sigma(p, x, FAST_SPEC)) < 3.0


class TestCompensator:
    def test_requires_large_sigma(self):
        with pytest.raises(DomainError):
            kernels.c_sigma_compensator(OperatorParams(1.0, 0.3), 1.0)

    def test_far_from_origin_dirichlet_oracle(self):
        # for x >= 2 at lam = 1 the singular part cancels over the
        # symmetric window and only the reflected term contributes
        s = 0.6
        p = OperatorParams(1.0, s)
        x = 2.5
        c = 4.0**s * s * specfun.gamma(0.5 + s) / (
            math.sqrt(math.pi) * specfun.gamma(1.0 - s)
        )
        oracle, _ = si.quad(
            lambda y: -c * (x + y) ** (-1.0 - 2.0 * s) * (x - y), x - 1.0, x + 1.0,
            limit=200,
        )
        got = kernels.c_sigma_compensator(p, x)
        assert got == pytest.approx(oracle, rel=2e-4, abs=1e-6)

    def test_log_envelope_at_half(self):
        p = OperatorParams(1.0, 0.5)
        for x in (0.05, 0.3, 1.0, 3.0):
            env = 1.0 + (abs(math.log(x)) if x < 1.0 else 0.0)
            assert abs(kernels.c_sigma_compensator(p, x, FAST_SPEC)) / env < 3.0

    def test_power_envelope_above_half(self):
        p = OperatorParams(2.0, 0.75)
        for x in (0.2, 1.0, 3.0):
            v = abs(kernels.c_sigma_compensator(p, x, FAST_SPEC))
            assert v * x ** (2.0 * 0.75 - 1.0) < 3.0


class TestChapmanKolmogorov:
    def test_heat_spot(self):
        p = OperatorParams(2.5, 0.5)
        s, t, x, y = 0.3, 1.0, 0.5, 2.0
        conv = integrate_semi_infinite(
            lambda z: kernels.heat_kernel_value(p, s, x, z)
            * kernels.heat_kernel_value(p, t, z, y),
            0.0,
            DEFAULT_SPEC,
            split=(x, y),
        ).value
        direct = kernels.heat_kernel_value(p, s + t, x, y)
        assert conv == pytest.approx(direct, rel=1e-8)

    def test_poisson_spot(self):
        p = OperatorParams(1.0, 0.5)
        s, t, x, y = 0.4, 0.8, 1.0, 0.5
        conv = integrate_semi_infinite(
            lambda z: kernels.poisson_kernel(p, s, x, z, FAST_SPEC).value
            * kernels.poisson_kernel(p, t, z, y, FAST_SPEC).value,
            0.0,
            FAST_SPEC,
            split=(x, y),
        ).value
        direct = kernels.poisson_kernel(p, s + t, x, y).value
        assert conv == pytest.approx(direct, rel=1e-5)
