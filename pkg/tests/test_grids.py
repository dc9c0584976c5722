import math

import numpy as np
import pytest

from besselfrac.errors import DomainError, QuadratureError
from besselfrac.grids import (
    CampanatoRatio,
    Grid,
    GridFunction,
    OperatorParams,
    campanato_ratio,
    default_grid,
    holder_norm_plus,
    l_rho_norm,
    test_functions,
)


class TestOperatorParams:
    def test_lam_tilde(self):
        assert OperatorParams(0.4, 0.5).lam_tilde == 0.4
        assert OperatorParams(2.5, 0.5).lam_tilde == 1.0

    def test_validation(self):
        with pytest.raises(DomainError):
            OperatorParams(0.0, 0.5)
        with pytest.raises(DomainError):
            OperatorParams(1.0, 1.0)
        with pytest.raises(DomainError):
            OperatorParams(1.0, 0.0)


class TestGrid:
    def test_geometric_monotone(self):
        g = Grid.geometric(1e-2, 10.0, 32)
        assert len(g) == 32
        assert all(b > a for a, b in zip(g.nodes, g.nodes[1:]))

    def test_too_small_rejected(self):
        with pytest.raises(ValueError):
            Grid.linear(0.1, 1.0, 4)

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            Grid(tuple(np.linspace(-1.0, 1.0, 16)))


class TestGridFunction:
    def test_nan_forbidden(self):
        g = Grid.linear(0.1, 1.0, 8)
        with pytest.raises(ValueError):
            GridFunction(g, np.array([np.nan] + [0.0] * 7))

    def test_csv_roundtrip_real(self):
        g = Grid.geometric(1e-2, 5.0, 16)
        gf = GridFunction.from_callable(g, lambda x: math.sin(x) * x**0.3)
        back = GridFunction.from_csv(gf.to_csv())
        np.testing.assert_allclose(back.grid.array, g.array, rtol=0, atol=0)
        np.testing.assert_allclose(back.values, gf.values, rtol=0, atol=0)

    def test_csv_roundtrip_complex(self):
        g = Grid.linear(0.5, 2.0, 8)
        gf = GridFunction(g, np.exp(1j * g.array))
        text = gf.to_csv()
        assert text.splitlines()[0] == "x,value_re,value_im"
        back = GridFunction.from_csv(text)
        np.testing.assert_allclose(back.values, gf.values, rtol=0, atol=0)


class TestHolderNorm:
    def test_zero_function(self):
        g = default_grid()
        est = holder_norm_plus(GridFunction(g, np.zeros(len(g))), 0.5)
        assert est.total == 0.0

    def test_identity_function_lipschitz(self):
        g = Grid.geometric(0.1, 10.0, 64)
        est = holder_norm_plus(GridFunction(g, g.array.copy()), 1.0)
        assert est.quotient_sup == pytest.approx(1.0, rel=1e-12)
        assert est.weight_sup == pytest.approx(1.0, rel=1e-12)
        assert est.total == pytest.approx(2.0, rel=1e-12)

    def test_sqrt_function(self):
        # |sqrt x - sqrt y| <= |x-y|^{1/2}, with weight sup exactly 1
        g = Grid.geometric(0.01, 4.0, 128)
        est = holder_norm_plus(GridFunction(g, np.sqrt(g.array)), 0.5)
        assert est.quotient_sup <= 1.0 + 1e-12
        assert est.weight_sup == pytest.approx(1.0, rel=1e-12)

    def test_monotone_under_refinement(self):
        f = test_functions("holder", alpha=0.5)
        coarse = holder_norm_plus(
            GridFunction.from_callable(Grid.geometric(1e-2, 20.0, 64), f), 0.5
        )
        fine = holder_norm_plus(
            GridFunction.from_callable(Grid.geometric(1e-2, 20.0, 256), f), 0.5
        )
        assert fine.total >= coarse.total - 1e-14
        # and the family stays bounded under refinement
        assert fine.total < 3.0

    def test_complex_rejected(self):
        g = Grid.linear(0.5, 2.0, 8)
        with pytest.raises(DomainError):
            holder_norm_plus(GridFunction(g, np.exp(1j * g.array)), 0.5)


class TestWeightedNorm:
    def test_zero(self):
        assert l_rho_norm(lambda x: 0.0, 0.5) == 0.0

    def test_constant_rho_half(self):
        # int (1+x)^{-2} = 1
        assert l_rho_norm(lambda x: 1.0, 0.5) == pytest.approx(1.0, abs=1e-9)

    def test_borderline_growth_diverges(self):
        with pytest.raises(QuadratureError):
            l_rho_norm(lambda x: (1.0 + x), 0.5)

    def test_monotone_in_rho(self):
        f = test_functions("holder", alpha=0.5)
        a = l_rho_norm(f, 0.4)
        b = l_rho_norm(f, 0.8)
        assert b < a


class TestCampanato:
    def test_constant_centered(self):
        r = campanato_ratio(lambda y: 3.0, (1.0, 2.0), alpha=0.5)
        assert r.m1 == pytest.approx(0.0, abs=1e-10)
        assert r.m2 is None

    def test_linear_on_unit_interval(self):
        r = campanato_ratio(lambda y: y, (0.0, 1.0), alpha=1.0, p=1.0)
        assert r.m2 == pytest.approx(0.5, abs=1e-10)  # int_0^1 y dy
        assert r.m1 == pytest.approx(0.25, abs=1e-10)  # int_0^1 |y - 1/2| dy

    def test_holder_campanato_consistency(self):
        # sup of the mean-oscillation ratio over dyadic intervals stays
        # within a factor 10 of the Holder norm for the clamped family
        f = test_functions("holder", alpha=0.4)
        from besselfrac.analysis import IntervalFamily

        fam = IntervalFamily.dyadic(x_max=4.0, k_min=-2, k_max=4)
        sup = 0.0
        for interval in fam.intervals:
            r = campanato_ratio(f, interval, alpha=0.4, p=1.0)
            sup = max(sup, r.m1, r.m2 or 0.0)
        hn = holder_norm_plus(
            GridFunction.from_callable(default_grid(), f), 0.4
        ).total
        assert sup > 0.0
        assert max(sup, hn) / min(sup, hn) < 10.0


class TestFactory:
    def test_gaussian_family(self):
        f = test_functions("gaussian", lam=1.0, a=1.0)
        assert f(1.0) == pytest.approx(math.exp(-1.0))
        assert f.decay == "gaussian"
        h = 1e-6
        fd = (f(1.0 + h) - f(1.0 - h)) / (2.0 * h)
        assert f.derivative(1.0) == pytest.approx(fd, rel=1e-8)
        fd2 = (f(1.0 + h) - 2.0 * f(1.0) + f(1.0 - h)) / (h * h)
        assert f.second_derivative(1.0) == pytest.approx(fd2, rel=1e-3)

    def test_holder_clamp(self):
        h = test_functions("holder", alpha=0.5)
        assert h(4.0) == 1.0
        assert h(0.25) == pytest.approx(0.5)

    def test_bump_support(self):
        b = test_functions("bump", center=1.0, width=0.5)
        assert b(1.0) == pytest.approx(1.0)
        assert b(0.4) == 0.0
        assert b(1.6) == 0.0
        assert b.support == (0.5, 1.5)

    def test_invalid_params(self):
        with pytest.raises(DomainError):
            test_functions("holder", alpha=1.5)
        with pytest.raises(DomainError):
            test_functions("bump", center=0.2, width=0.5)
        with pytest.raises(ValueError):
            test_functions("nonsense")
