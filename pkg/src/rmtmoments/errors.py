"""Exception types shared across the package."""


class PoleError(ZeroDivisionError):
    """A Gamma function (or Pochhammer factor) hit a pole in a denominator."""


class DivergentMoment(ArithmeticError):
    """The requested moment integral does not converge."""


class OddDimension(ValueError):
    """The orthogonal-ensemble formulas only cover even matrix dimension."""


class NonExactArgument(ValueError):
    """An argument cannot be handled by the exact (rational times root-pi) path."""


class QuadratureFailure(RuntimeError):
    """Adaptive quadrature did not meet its tolerance within the subdivision budget."""


class UnrealizableParameters(ValueError):
    """No matrix model exists for these ensemble parameters."""
