"""Truncated Laurent series in a regulator ``eps`` with rational coefficients.

Some convergent moments are written as a difference of two terms that each
have a pole at the given parameter value (for example the beta = 4 Laguerre
moment at the edge of the beta = 2 convergence range). Shifting the
parameter by ``eps`` and expanding in ``eps`` lets the poles cancel exactly;
the value is the ``eps**0`` coefficient.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import PoleError

ORDER = 8


class EpsSeries:
    """``eps**val * (c[0] + c[1] eps + ... + c[ORDER-1] eps**(ORDER-1))``."""

    __slots__ = ("val", "c")

    def __init__(self, val: int, coeffs):
        coeffs = [Fraction(x) for x in coeffs][:ORDER]
        coeffs += [Fraction(0)] * (ORDER - len(coeffs))
        # strip leading zeros to keep the leading coefficient invertible
        shift = 0
        while shift < ORDER and coeffs[shift] == 0:
            shift += 1
        if shift == ORDER:
            self.val = 10**6  # exact zero at this truncation
            self.c = [Fraction(0)] * ORDER
            return
        self.val = val + shift
        self.c = coeffs[shift:] + [Fraction(0)] * shift

    @classmethod
    def const(cls, x) -> "EpsSeries":
        return cls(0, [Fraction(x)])

    @classmethod
    def eps(cls) -> "EpsSeries":
        return cls(1, [Fraction(1)])

    @property
    def is_zero(self) -> bool:
        return self.val >= 10**6

    def coeff(self, power: int) -> Fraction:
        i = power - self.val
        if self.is_zero or i < 0:
            return Fraction(0)
        if i >= ORDER:
            raise ArithmeticError("requested coefficient beyond the truncation order")
        return self.c[i]

    def _lift(self, other):
        if isinstance(other, EpsSeries):
            return other
        return EpsSeries.const(other)

    def __add__(self, other):
        other = self._lift(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        v = min(self.val, other.val)
        out = [Fraction(0)] * ORDER
        for s in (self, other):
            off = s.val - v
            for i in range(ORDER - off):
                out[i + off] += s.c[i]
        return EpsSeries(v, out)

    __radd__ = __add__

    def __neg__(self):
        return EpsSeries(self.val, [-x for x in self.c]) if not self.is_zero else self

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if self.is_zero or other.is_zero:
            return EpsSeries(0, [])
        out = [Fraction(0)] * ORDER
        for i, x in enumerate(self.c):
            if x == 0:
                continue
            for j in range(ORDER - i):
                out[i + j] += x * other.c[j]
        return EpsSeries(self.val + other.val, out)

    __rmul__ = __mul__

    def inverse(self) -> "EpsSeries":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero series")
        a0 = self.c[0]
        inv = [Fraction(0)] * ORDER
        inv[0] = 1 / a0
        for m in range(1, ORDER):
            s = sum((self.c[i] * inv[m - i] for i in range(1, m + 1)), Fraction(0))
            inv[m] = -s / a0
        return EpsSeries(-self.val, inv)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __repr__(self):
        return f"EpsSeries(val={self.val}, c={[str(x) for x in self.c[:4]]}...)"


def poch_series(x, m: int):
    """Pochhammer ``(x)_(m)`` for integer ``m`` where ``x`` is a Fraction or EpsSeries."""
    if not isinstance(x, EpsSeries):
        raise TypeError("poch_series expects an EpsSeries argument")
    out = EpsSeries.const(1)
    if m >= 0:
        for i in range(m):
            out = out * (x + i)
        return out
    for i in range(1, -m + 1):
        out = out / (x - i)
    return out


def finite_part(x) -> Fraction:
    """The ``eps**0`` coefficient; raises if a pole survives."""
    if not isinstance(x, EpsSeries):
        return Fraction(x)
    if not x.is_zero and x.val < 0:
        raise PoleError("pole does not cancel")
    return x.coeff(0)


def gpoch(x, m: int):
    """Integer-order Pochhammer for a Fraction (exact, may raise) or an EpsSeries."""
    if isinstance(x, EpsSeries):
        return poch_series(x, m)
    from .exactnum import _poch_int

    return _poch_int(Fraction(x), m)
