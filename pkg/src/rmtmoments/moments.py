"""One entry point for ``<sum_j x_j**k>`` over all nine ensembles."""
from __future__ import annotations

from .ensembles import EnsembleSpec, MomentResult
from .orthogonal import goe_moment, joe_moment, loe_moment
from .symplectic import gse_moment, jse_moment, lse_moment
from .unitary import gue_moment, jue_moment, lue_moment

__all__ = ["moment"]

_ENGINES = {
    ("gaussian", 2): lambda e, k: gue_moment(k, int(e.n)),
    ("gaussian", 4): lambda e, k: gse_moment(k, e.n),
    ("gaussian", 1): lambda e, k: goe_moment(k, e.n),
    ("laguerre", 2): lambda e, k: lue_moment(k, int(e.n), e.b),
    ("laguerre", 4): lambda e, k: lse_moment(k, e.n, e.b),
    ("laguerre", 1): lambda e, k: loe_moment(k, e.n, e.b),
    ("jacobi", 2): lambda e, k: jue_moment(k, int(e.n), e.a, e.b),
    ("jacobi", 4): lambda e, k: jse_moment(k, e.n, e.a, e.b),
    ("jacobi", 1): lambda e, k: joe_moment(k, e.n, e.a, e.b),
}


def moment(ens: EnsembleSpec, k) -> MomentResult:
    """Closed-form ``<sum_j x_j**k>`` for ``ens`` (public weight conventions).

    Examples
    --------
    >>> from rmtmoments.ensembles import laguerre
    >>> moment(laguerre(2, 2, 0), 1).exact
    ExactReal(4)
    """
    if ens.family == "gaussian" and int(k) != k:
        raise ValueError("Gaussian moments need an integer k")
    return _ENGINES[ens.family, ens.beta](ens, k)
