"""Ensemble descriptions and the moment query/result records."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import mpmath

from .exactnum import ExactReal, HighPrecisionFloat, NumericValue, frac, to_float

__all__ = ["EnsembleSpec", "MomentQuery", "MomentResult", "gaussian", "laguerre", "jacobi"]

FAMILIES = ("gaussian", "laguerre", "jacobi")
BETAS = (1, 2, 4)


@dataclass(frozen=True)
class EnsembleSpec:
    """Eigenvalue jpdf ``prod w_beta(x_j) prod |x_k - x_j|**beta`` on ``n`` points.

    Weights (``I`` the support):

    * gaussian: ``exp(-beta x**2 / 2)`` on the real line;
    * laguerre: ``x**(beta/2 (b+1) - 1) exp(-beta x / 2)`` on ``[0, inf)``;
    * jacobi: ``x**(beta/2 (b+1) - 1) (1-x)**(beta/2 (a+1) - 1)`` on ``[0, 1]``.

    ``n`` may be a half-integer for ``beta == 4`` (used internally by the
    orthogonal-ensemble formulas).
    """

    family: str
    beta: int
    n: Fraction
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.beta not in BETAS:
            raise ValueError(f"beta must be 1, 2 or 4, got {self.beta!r}")
        n = frac(self.n)
        if n <= 0 or (2 * n).denominator != 1:
            raise ValueError(f"n must be a positive integer or half-integer, got {n}")
        if n.denominator != 1 and self.beta != 4:
            raise ValueError("half-integer n is only meaningful for beta = 4")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "a", frac(self.a))
        object.__setattr__(self, "b", frac(self.b))

    @property
    def interval(self) -> tuple[float, float]:
        return {"gaussian": (-mpmath.inf, mpmath.inf), "laguerre": (0.0, mpmath.inf), "jacobi": (0.0, 1.0)}[
            self.family
        ]

    def log_weight(self, x):
        """``log w_beta(x)`` for numpy arrays (``-inf`` outside the support)."""
        import numpy as np

        x = np.asarray(x, dtype=float)
        beta = self.beta
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.family == "gaussian":
                return -beta * x * x / 2
            pb = beta / 2 * (float(self.b) + 1) - 1
            if self.family == "laguerre":
                out = pb * np.log(x) - beta * x / 2
                return np.where(x > 0, out, -np.inf)
            pa = beta / 2 * (float(self.a) + 1) - 1
            out = pb * np.log(x) + pa * np.log1p(-x)
            return np.where((x > 0) & (x < 1), out, -np.inf)

    def weight(self, x):
        import numpy as np

        return np.exp(self.log_weight(x))

    def with_n(self, n) -> "EnsembleSpec":
        return EnsembleSpec(self.family, self.beta, n, self.a, self.b)


def gaussian(beta: int, n) -> EnsembleSpec:
    return EnsembleSpec("gaussian", beta, n)


def laguerre(beta: int, n, b) -> EnsembleSpec:
    return EnsembleSpec("laguerre", beta, n, 0, b)


def jacobi(beta: int, n, a, b) -> EnsembleSpec:
    return EnsembleSpec("jacobi", beta, n, a, b)


@dataclass(frozen=True)
class MomentQuery:
    """``<sum_j x_j**k>`` for one ensemble; ``k`` is an integer or a real number."""

    ensemble: EnsembleSpec
    k: Union[int, Fraction, float]


@dataclass(frozen=True)
class MomentResult:
    """Outcome of a moment computation.

    ``value`` is ``None`` exactly when the moment diverges.
    """

    value: Optional[NumericValue]
    convergent: bool = True
    terms_summed: int = 0

    def __post_init__(self):
        if not self.convergent and self.value is not None:
            raise ValueError("a divergent result carries no value")
        if self.convergent and self.value is None:
            raise ValueError("a convergent result needs a value")

    @classmethod
    def divergent(cls) -> "MomentResult":
        return cls(None, False, 0)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.value, ExactReal)

    @property
    def exact(self) -> ExactReal:
        if not isinstance(self.value, ExactReal):
            raise TypeError("result is not exact")
        return self.value

    def __float__(self):
        if self.value is None:
            raise ValueError("divergent moment has no value")
        return float(self.value)

    def high_precision(self, digits: int = 30) -> HighPrecisionFloat:
        if isinstance(self.value, HighPrecisionFloat):
            return self.value
        return to_float(self.exact, digits)
