"""Fractional powers of the Bessel operator on the half-line.

Evaluates the operator through four independent computational routes
(spectral multiplier, heat semigroup, Poisson semigroup, pointwise
integro-differential formula), together with the kernels, transforms,
Holder/Campanato/Carleson functionals and the extension problem that
surround it.
"""

from .grids import (
    Grid,
    GridFunction,
    HolderEstimate,
    OperatorParams,
    campanato_ratio,
    default_grid,
    holder_norm_plus,
    l_rho_norm,
    test_functions,
)
from .quad import DEFAULT_SPEC, FAST_SPEC, QuadratureSpec, QuadResult

__all__ = [
    "Grid",
    "GridFunction",
    "HolderEstimate",
    "OperatorParams",
    "QuadratureSpec",
    "QuadResult",
    "DEFAULT_SPEC",
    "FAST_SPEC",
    "campanato_ratio",
    "default_grid",
    "holder_norm_plus",
    "l_rho_norm",
    "test_functions",
]

__version__ = "0.1.0"
