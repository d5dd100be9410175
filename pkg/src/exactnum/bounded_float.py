"""
Floating-point values carrying a rigorous absolute error bound.

Values are mpmath floats at a stated precision. Every operation adds the
propagated input errors and one rounding of the result.
"""
import logging
from fractions import Fraction
from typing import Union

import mpmath

from src.exactnum.gamma_exact import ExactReal, gamma_half, to_rational
from src.utils.errors import DomainError, PoleError

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

GUARD_BITS = 32


def ulp(x, precision_bits: int) -> mpmath.mpf:
    """Upper bound for one rounding error of |x| at the given precision."""
    with mpmath.workprec(precision_bits + GUARD_BITS):
        return abs(x if isinstance(x, mpmath.mpf) else mpmath.mpf(x)) * mpmath.ldexp(1, 1 - precision_bits)


def mpf_from_rational(value: Fraction, precision_bits: int) -> mpmath.mpf:
    with mpmath.workprec(precision_bits):
        return mpmath.mpf(value.numerator) / value.denominator


def _is_dyadic_fit(value: Fraction, precision_bits: int) -> bool:
    den = value.denominator
    return den & (den - 1) == 0 and abs(value.numerator).bit_length() <= precision_bits


class BoundedFloat:
    """A value with |true - value| <= abs_error."""

    __slots__ = ("value", "abs_error", "precision_bits")

    def __init__(self, value, abs_error, precision_bits: int):
        # mpf() would round to the ambient precision
        self.value = value if isinstance(value, mpmath.mpf) else mpmath.mpf(value)
        self.abs_error = abs_error if isinstance(abs_error, mpmath.mpf) else mpmath.mpf(abs_error)
        self.precision_bits = int(precision_bits)
        if self.abs_error < 0:
            raise ValueError("abs_error must be nonnegative")

    def __repr__(self) -> str:
        return f"BoundedFloat({self.value!r}, {self.abs_error!r}, {self.precision_bits})"

    @classmethod
    def exact(cls, value: Union[int, Fraction, str], precision_bits: int) -> "BoundedFloat":
        """Round a rational; the bound is zero when the rational is representable."""
        q = to_rational(value)
        v = mpf_from_rational(q, precision_bits)
        err = mpmath.mpf(0) if _is_dyadic_fit(q, precision_bits) else ulp(v, precision_bits)
        return cls(v, err, precision_bits)

    @classmethod
    def from_mpf(cls, value, precision_bits: int, rel_error=None) -> "BoundedFloat":
        """Wrap an mpmath result computed with GUARD_BITS extra bits."""
        with mpmath.workprec(precision_bits):
            v = +mpmath.mpf(value)
        if rel_error is None:
            rel_error = mpmath.ldexp(1, 2 - precision_bits)
        with mpmath.workprec(precision_bits + GUARD_BITS):
            err = abs(v) * rel_error + ulp(v, precision_bits)
        return cls(v, err, precision_bits)

    def _coerce(self, other) -> "BoundedFloat":
        if isinstance(other, BoundedFloat):
            return other
        if isinstance(other, ExactReal):
            return to_bounded_float(other, self.precision_bits)
        return BoundedFloat.exact(other, self.precision_bits)

    def _prec(self, other: "BoundedFloat") -> int:
        return min(self.precision_bits, other.precision_bits)

    def __add__(self, other) -> "BoundedFloat":
        other = self._coerce(other)
        p = self._prec(other)
        with mpmath.workprec(p):
            v = self.value + other.value
        with mpmath.workprec(p + GUARD_BITS):
            err = self.abs_error + other.abs_error + ulp(v, p)
        return BoundedFloat(v, err, p)

    __radd__ = __add__

    def __neg__(self) -> "BoundedFloat":
        return BoundedFloat(mpmath.fneg(self.value, exact=True), self.abs_error, self.precision_bits)

    def __sub__(self, other) -> "BoundedFloat":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "BoundedFloat":
        return self._coerce(other) - self

    def __mul__(self, other) -> "BoundedFloat":
        other = self._coerce(other)
        p = self._prec(other)
        with mpmath.workprec(p):
            v = self.value * other.value
        with mpmath.workprec(p + GUARD_BITS):
            err = (abs(self.value) * other.abs_error + abs(other.value) * self.abs_error
                   + self.abs_error * other.abs_error)
        return BoundedFloat(v, err + ulp(v, p), p)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "BoundedFloat":
        other = self._coerce(other)
        p = self._prec(other)
        with mpmath.workprec(p + GUARD_BITS):
            margin = abs(other.value) - other.abs_error
        if margin <= 0:
            raise DomainError(f"divisor {other} may be zero")
        with mpmath.workprec(p):
            v = self.value / other.value
        with mpmath.workprec(p + GUARD_BITS):
            err = (abs(self.value) * other.abs_error + abs(other.value) * self.abs_error) / (abs(other.value) * margin)
        return BoundedFloat(v, err + ulp(v, p), p)

    def __rtruediv__(self, other) -> "BoundedFloat":
        return self._coerce(other) / self

    def contains(self, x) -> bool:
        """True when x lies within value +- abs_error."""
        wp = self.precision_bits + GUARD_BITS
        with mpmath.workprec(wp):
            if isinstance(x, (Fraction, int)):
                x = mpf_from_rational(Fraction(x), wp)
            elif not isinstance(x, mpmath.mpf):
                x = mpmath.mpf(x)
            gap = abs(x - self.value)
        return gap <= self.abs_error + ulp(x, wp)

    def overlaps(self, other: "BoundedFloat") -> bool:
        """True when the two enclosures intersect."""
        with mpmath.workprec(max(self.precision_bits, other.precision_bits) + GUARD_BITS):
            return abs(self.value - other.value) <= self.abs_error + other.abs_error

    def log(self) -> "BoundedFloat":
        """Natural logarithm; requires the enclosure to be strictly positive."""
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            lo = self.value - self.abs_error
        if lo <= 0:
            raise DomainError(f"log of a value that may be nonpositive: {self}")
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            v = mpmath.log(self.value)
            err = self.abs_error / lo
        return BoundedFloat.from_mpf(v, self.precision_bits, rel_error=0) + BoundedFloat(mpmath.mpf(0), err, self.precision_bits)

    def sqrt(self) -> "BoundedFloat":
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            lo = self.value - self.abs_error
        if lo < 0:
            raise DomainError(f"sqrt of a value that may be negative: {self}")
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            v = mpmath.sqrt(self.value)
            err = self.abs_error / (mpmath.sqrt(lo) + v) if v > 0 else mpmath.sqrt(self.abs_error)
        return BoundedFloat.from_mpf(v, self.precision_bits, rel_error=0) + BoundedFloat(mpmath.mpf(0), err, self.precision_bits)

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        digits = max(6, int(self.precision_bits * 0.30103))
        return f"{mpmath.nstr(self.value, digits)} +- {mpmath.nstr(self.abs_error, 3)}"


def to_bounded_float(x: ExactReal, precision_bits: int) -> BoundedFloat:
    """
    Round coeff * sqrt(pi)**m to the given precision.

    Rationals whose denominator is a power of two and whose numerator fits
    are returned with a zero bound; otherwise the bound is two units in the
    last place.
    """
    if x.sqrtpi_pow == 0:
        return BoundedFloat.exact(x.coeff, precision_bits)
    with mpmath.workprec(precision_bits + GUARD_BITS):
        v = mpmath.mpf(x.coeff.numerator) / x.coeff.denominator * mpmath.sqrt(mpmath.pi) ** x.sqrtpi_pow
    with mpmath.workprec(precision_bits):
        rounded = +v
    return BoundedFloat(rounded, ulp(rounded, precision_bits), precision_bits)


def sqrt_pi(precision_bits: int) -> BoundedFloat:
    return to_bounded_float(ExactReal(Fraction(1), 1), precision_bits)


def pi(precision_bits: int) -> BoundedFloat:
    return to_bounded_float(ExactReal(Fraction(1), 2), precision_bits)


def sqrt_rational(value: Union[int, Fraction], precision_bits: int) -> BoundedFloat:
    q = to_rational(value)
    if q < 0:
        raise DomainError(f"sqrt of negative {q}")
    with mpmath.workprec(precision_bits + GUARD_BITS):
        v = mpmath.sqrt(mpmath.mpf(q.numerator) / q.denominator)
    return BoundedFloat.from_mpf(v, precision_bits)


def gamma_value(x: Union[int, Fraction, str], precision_bits: int) -> BoundedFloat:
    """
    Gamma at a rational argument.

    Integers and half-integers go through the exact path; other rationals
    use mpmath with guard bits.
    """
    q = to_rational(x)
    if q <= 0 and q.denominator == 1:
        raise PoleError(f"gamma has a pole at {q}")
    if (2 * q).denominator == 1:
        return to_bounded_float(gamma_half(q), precision_bits)
    with mpmath.workprec(precision_bits + GUARD_BITS):
        v = mpmath.gamma(mpmath.mpf(q.numerator) / q.denominator)
    return BoundedFloat.from_mpf(v, precision_bits)


def power_value(base: Union[int, Fraction, str], exponent: Union[int, Fraction, str], precision_bits: int) -> BoundedFloat:
    """base**exponent for a positive rational base; exact when the exponent is an integer."""
    b = to_rational(base)
    e = to_rational(exponent)
    if e.denominator == 1:
        return BoundedFloat.exact(b ** int(e), precision_bits)
    if b <= 0:
        raise DomainError(f"non-integer power of nonpositive base {b}")
    with mpmath.workprec(precision_bits + GUARD_BITS):
        v = mpmath.power(mpmath.mpf(b.numerator) / b.denominator, mpmath.mpf(e.numerator) / e.denominator)
    return BoundedFloat.from_mpf(v, precision_bits)


def product(values, precision_bits: int) -> BoundedFloat:
    """Product of BoundedFloats / ExactReals / rationals."""
    result = BoundedFloat.exact(1, precision_bits)
    for v in values:
        result = result * v
    return result
