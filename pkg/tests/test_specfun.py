import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from besselfrac import specfun
from besselfrac.errors import DomainError


def series_bessel_i(nu, z, terms=160):
    """Independent small/mid-argument oracle: the ascending series of I_nu
    (all terms positive, no cancellation)."""
    if z == 0.0:
        return 0.0 if nu > 0 else 1.0
    total = 0.0
    term = (z / 2.0) ** nu / math.gamma(nu + 1.0)
    for k in range(terms):
        total += term
        term *= (z * z / 4.0) / ((k + 1.0) * (nu + k + 1.0))
        if term < 1e-18 * total:
            break
    return total


class TestGamma:
    def test_classical_values(self):
        assert specfun.gamma(1.0) == pytest.approx(1.0, rel=1e-14)
        assert specfun.gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
        # forced by the recurrence Gamma(1/2) = (-1/2) Gamma(-1/2)
        assert specfun.gamma(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-13)

    @pytest.mark.parametrize("x", [-29.5, -7.3, -0.9, -1e-4, 0.25, 3.7, 29.5])
    def test_recurrence(self, x):
        assert specfun.gamma(x + 1.0) == pytest.approx(x * specfun.gamma(x), rel=1e-12)

    @given(st.floats(min_value=-29.9, max_value=29.9).filter(
        lambda x: abs(x - round(x)) > 1e-3 or x > 0.5))
    @settings(max_examples=60, deadline=None)
    def test_recurrence_property(self, x):
        assert specfun.gamma(x + 1.0) == pytest.approx(x * specfun.gamma(x), rel=1e-11)

    @pytest.mark.parametrize("pole", [0.0, -1.0, -2.0, -17.0])
    def test_poles_rejected(self, pole):
        with pytest.raises(DomainError, match="pole"):
            specfun.gamma(pole)


class TestBesselI:
    def test_half_integer_closed_form(self):
        # I_{1/2}(z) = sqrt(2/(pi z)) sinh z
        for z in (1e-3, 0.3, 1.0, 7.0, 30.0):
            want = math.sqrt(2.0 / (math.pi * z)) * math.sinh(z)
            assert specfun.bessel_i(0.5, z) == pytest.approx(want, rel=1e-10)
        assert specfun.bessel_i(0.5, 1.0) == pytest.approx(0.9376748882, rel=1e-9)

    def test_small_argument_law(self):
        # z^{-nu} I_nu(z) -> 1/(2^nu Gamma(nu+1))
        nu = 0.7
        z = 1e-6
        got = specfun.bessel_i(nu, z) / z**nu
        assert got == pytest.approx(1.0 / (2.0**nu * specfun.gamma(nu + 1.0)), rel=1e-9)
        assert specfun.bessel_i(0.0, 0.0) == pytest.approx(1.0)

    @pytest.mark.parametrize("nu", [0.2, 0.5, 1.5, 2.5])
    def test_series_oracle_through_crossover(self, nu):
        cross = specfun.series_asymptotic_crossover(nu)
        for z in (0.1, 1.0, cross * 0.999, cross, cross * 1.001, 30.0):
            want = series_bessel_i(nu, z) * math.exp(-z)
            assert specfun.bessel_i_scaled(nu, z) == pytest.approx(want, rel=1e-12)

    def test_scaled_matches_unscaled(self):
        for nu, z in ((0.3, 2.0), (1.5, 50.0), (2.5, 400.0)):
            assert specfun.bessel_i_scaled(nu, z) == pytest.approx(
                specfun.bessel_i(nu, z) * math.exp(-z), rel=1e-12
            )

    def test_scaled_backend_seam(self):
        # scipy hands over to the asymptotic expansion above 1e8; both
        # branches must agree where they meet
        for nu in (0.2, 1.5, 2.5):
            z = 0.99e8  # scipy branch
            backend = specfun.bessel_i_scaled(nu, z)
            m = 4.0 * nu * nu
            a1 = (m - 1.0) / 8.0
            a2 = (m - 1.0) * (m - 9.0) / 128.0
            asym = (1.0 - a1 / z + a2 / z**2) / math.sqrt(2.0 * math.pi * z)
            assert backend == pytest.approx(asym, rel=1e-12)

    def test_asymptotic_residual(self):
        # Psi_nu(z) = sqrt(2 pi z) e^{-z} I_nu(z) - 1 -> -(4 nu^2 - 1)/(8z)
        for nu in (0.2, 1.5, 2.5):
            for z in (200.0, 500.0):
                psi = math.sqrt(2.0 * math.pi * z) * specfun.bessel_i_scaled(nu, z) - 1.0
                want = -(4.0 * nu * nu - 1.0) / (8.0 * z)
                assert psi == pytest.approx(want, rel=0.05)
                assert abs(psi * z) < 10.0

    @pytest.mark.parametrize("nu", [0.2, 0.5, 1.5, 2.5])
    def test_derivative_identity(self, nu):
        # d/dz (z^-nu I_nu) = z^-nu I_{nu+1}, by central differences; the
        # step balances the flatness of z^-nu I_nu near the origin against
        # truncation
        import numpy as np

        for z in np.geomspace(1e-2, 50.0, 12):
            h = 1e-4 * min(z, 1.0)  # the profile varies on scale ~1 once z > 1
            f = lambda w: w**-nu * specfun.bessel_i(nu, w)
            got = (f(z + h) - f(z - h)) / (2.0 * h)
            want = z**-nu * specfun.bessel_i(nu + 1.0, z)
            assert got == pytest.approx(want, rel=1e-6)

    def test_overflow_policy(self):
        with pytest.raises(OverflowError):
            specfun.bessel_i(0.5, 701.0)
        assert specfun.bessel_i_scaled(0.5, 1e6) > 0.0

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            specfun.bessel_i(-1.5, 1.0)
        with pytest.raises(DomainError):
            specfun.bessel_i(0.5, -1.0)


class TestBesselJ:
    def test_half_integer_closed_form(self):
        # J_{1/2}(z) = sqrt(2/(pi z)) sin z
        z = math.pi / 2.0
        assert specfun.bessel_j(0.5, z) == pytest.approx(2.0 / math.pi, rel=1e-12)
        assert specfun.bessel_j(0.5, math.pi) == pytest.approx(0.0, abs=1e-15)

    def test_origin(self):
        assert specfun.bessel_j(0.9, 0.0) == 0.0
        # leading series term at tiny argument
        z = 1e-6
        want = (z / 2.0) ** 0.5 / specfun.gamma(1.5)
        assert specfun.bessel_j(0.5, z) == pytest.approx(want, rel=1e-6)

    def test_sqrt_weighted_boundedness(self):
        import numpy as np

        for nu in (0.0, 0.5, 1.5):
            vals = [math.sqrt(z) * abs(specfun.bessel_j(nu, z))
                    for z in np.geomspace(1e-3, 500.0, 64)]
            assert max(vals) < 1.5

    def test_domain_error(self):
        with pytest.raises(DomainError):
            specfun.bessel_j(-0.6, 1.0)


class TestHermite:
    def test_low_orders(self):
        assert specfun.hermite(0, 3.7) == 1.0
        assert specfun.hermite(1, 2.0) == 4.0
        # recurrence gives H_2(r) = 4 r^2 - 2
        assert specfun.hermite(2, 1.0) == pytest.approx(2.0)

    @given(st.integers(min_value=1, max_value=12),
           st.floats(min_value=-5, max_value=5))
    @settings(max_examples=50, deadline=None)
    def test_recurrence_property(self, k, r):
        lhs = specfun.hermite(k + 1, r)
        rhs = 2.0 * r * specfun.hermite(k, r) - 2.0 * k * specfun.hermite(k - 1, r)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-9)
