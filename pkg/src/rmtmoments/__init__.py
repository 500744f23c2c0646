"""Exact finite-n moments of random-matrix ensembles.

Moments ``<sum_j x_j**k>`` of the Gaussian, Laguerre and Jacobi ensembles for
``beta = 1, 2, 4`` as exact values ``p/q * pi**(e/2)``, the transport
observables built on them, and numerical oracles (density quadrature,
literal jpdf integration, Monte Carlo) to check them against.
"""
from .ensembles import EnsembleSpec, MomentQuery, MomentResult, gaussian, jacobi, laguerre
from .errors import (
    DivergentMoment,
    NonExactArgument,
    OddDimension,
    PoleError,
    QuadratureFailure,
    UnrealizableParameters,
)
from .exactnum import ExactReal, HighPrecisionFloat, to_float
from .moments import moment
from .physics import (
    DelayQuery,
    TransportQuery,
    charge_cumulants,
    delay_limit,
    delay_moment,
    limit_catalan,
    schroeder_series,
    transmission_moment,
)

__version__ = "0.1.0"

__all__ = [
    "EnsembleSpec",
    "MomentQuery",
    "MomentResult",
    "gaussian",
    "laguerre",
    "jacobi",
    "moment",
    "ExactReal",
    "HighPrecisionFloat",
    "to_float",
    "TransportQuery",
    "DelayQuery",
    "transmission_moment",
    "delay_moment",
    "charge_cumulants",
    "limit_catalan",
    "schroeder_series",
    "delay_limit",
    "PoleError",
    "DivergentMoment",
    "OddDimension",
    "NonExactArgument",
    "QuadratureFailure",
    "UnrealizableParameters",
]
