"""Arbitrary-precision floats with explicitly declared precision.

A BigFloat is an mpmath value plus the number of bits the caller vouches
for.  Arithmetic is carried out with guard bits above the declared
precision and the result's declared precision is the minimum of the
operands' declarations: an operation can never silently claim more
accuracy than its inputs had.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .errors import PrecisionError

DEFAULT_PRECISION = 256  # bits
_GUARD = 16


def _with_prec(bits):
    return mpmath.workprec(bits + _GUARD)


class BigFloat:
    __slots__ = ("value", "precision")

    def __init__(self, value, precision=DEFAULT_PRECISION):
        if precision <= 0:
            raise PrecisionError("precision must be a positive number of bits")
        if isinstance(value, BigFloat):
            self.value = value.value
            self.precision = min(precision, value.precision)
            return
        with _with_prec(precision):
            if isinstance(value, Fraction):
                v = mpmath.mpf(value.numerator) / value.denominator
            elif isinstance(value, str):
                v = mpmath.mpf(value)
            else:
                v = mpmath.mpf(value)
        self.value = v
        self.precision = precision

    @classmethod
    def from_fraction(cls, frac, precision=DEFAULT_PRECISION):
        return cls(Fraction(frac), precision)

    @classmethod
    def exact_int(cls, n, precision=DEFAULT_PRECISION):
        need = max(precision, n.bit_length() + 1 if n else 1)
        return cls(n, need)

    def to_fraction(self):
        # mpf values are dyadic rationals, so this is exact; go through the
        # raw mantissa/exponent to avoid re-rounding at the ambient precision
        from mpmath.libmp import to_rational

        p, q = to_rational(self.value._mpf_)
        return Fraction(int(p), int(q))

    @property
    def decimal_digits(self):
        return int(self.precision / 3.3219280948873626)

    def require_digits(self, digits):
        if self.decimal_digits < digits:
            raise PrecisionError(
                f"value declares only {self.decimal_digits} decimal digits, "
                f"{digits} required"
            )

    def _bin(self, other, op):
        other = other if isinstance(other, BigFloat) else BigFloat(other, self.precision)
        prec = min(self.precision, other.precision)
        with _with_prec(prec):
            return BigFloat(op(self.value, other.value), prec)

    def __add__(self, other):
        return self._bin(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._bin(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return BigFloat(other, self.precision) - self

    def __mul__(self, other):
        return self._bin(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._bin(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return BigFloat(other, self.precision) / self

    def __neg__(self):
        return BigFloat(-self.value, self.precision)

    def __abs__(self):
        return BigFloat(abs(self.value), self.precision)

    def __pow__(self, n):
        with _with_prec(self.precision):
            return BigFloat(self.value ** n, self.precision)

    def sqrt(self):
        with _with_prec(self.precision):
            return BigFloat(mpmath.sqrt(self.value), self.precision)

    def log(self):
        with _with_prec(self.precision):
            return BigFloat(mpmath.log(self.value), self.precision)

    def __float__(self):
        return float(self.value)

    def _cmp_value(self, other):
        return other.value if isinstance(other, BigFloat) else mpmath.mpf(other)

    def __lt__(self, other):
        return self.value < self._cmp_value(other)

    def __le__(self, other):
        return self.value <= self._cmp_value(other)

    def __gt__(self, other):
        return self.value > self._cmp_value(other)

    def __ge__(self, other):
        return self.value >= self._cmp_value(other)

    def __eq__(self, other):
        if isinstance(other, (BigFloat, int, float, Fraction)):
            return self.value == self._cmp_value(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def str_digits(self, digits=None):
        digits = digits if digits is not None else self.decimal_digits
        return mpmath.nstr(self.value, max(digits, 3), strip_zeros=False)

    def __repr__(self):
        return f"BigFloat({self.str_digits(min(self.decimal_digits, 30))}, prec={self.precision})"
