"""Catalan's constant through the half hyperbolic secant distribution.

Modules:
    special_functions  Hurwitz zeta, Lerch Phi, Ti2, K0, U, Euler numbers, reference constants
    quadrature         adaptive Gauss-Kronrod, trapezoid rule, alternating-series acceleration
    distribution       the half hyperbolic secant law, its transforms, convolution, truncation
    inequality         Lorenz curve, Gini, Pietra and Theil indices
    representations    catalog of evaluable representations of G, zeta(3), zeta(2), pi
    cli                command-line front end
"""

from .distribution import STANDARD, HhsDistribution, TruncatedHhs
from .quadrature import ConvergenceError, EvalResult, QuadratureConfig, SeriesConfig
from .representations import CatalogConfig, catalog, evaluate, evaluate_all
from .special_functions import ReferenceConstants, reference_constants

__version__ = "0.1.0"

__all__ = [
    "STANDARD",
    "HhsDistribution",
    "TruncatedHhs",
    "ConvergenceError",
    "EvalResult",
    "QuadratureConfig",
    "SeriesConfig",
    "CatalogConfig",
    "catalog",
    "evaluate",
    "evaluate_all",
    "ReferenceConstants",
    "reference_constants",
]
