"""
Exact rationals, half-integers and the field Q[sqrt(pi)] of gamma values.

Gamma at an integer is a factorial and at a half-integer a rational times
sqrt(pi); ratios of such values are rational times a power of sqrt(pi).
Everything here stays exact.
"""
import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Union

from src.utils.errors import PoleError, UnsupportedError

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

Rational = Fraction
RationalLike = Union[int, Fraction, str, "HalfInteger"]

HALF = Fraction(1, 2)


def to_rational(value: RationalLike) -> Fraction:
    """
    Coerce ints, Fractions, HalfIntegers and strings ("3/4", "-0.25", "2") to a Fraction.

    Decimal strings are read exactly ("0.1" is 1/10); binary floats are refused.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, HalfInteger):
        return value.value
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} exactly as a rational; pass an int, Fraction or string")


@dataclass(frozen=True, order=True)
class HalfInteger:
    """A rational of the form n/2, stored as the integer n."""

    twice: int

    @classmethod
    def of(cls, value: RationalLike) -> "HalfInteger":
        x = to_rational(value)
        doubled = 2 * x
        if doubled.denominator != 1:
            raise UnsupportedError(f"{x} is not an integer or half-integer")
        return cls(int(doubled))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __str__(self) -> str:
        return str(self.value)


def is_half_integer(value: RationalLike) -> bool:
    """True when 2*value is an integer."""
    return (2 * to_rational(value)).denominator == 1


class ExactReal:
    """The number coeff * sqrt(pi)**sqrtpi_pow with a rational coefficient."""

    __slots__ = ("coeff", "sqrtpi_pow")

    def __init__(self, coeff: RationalLike, sqrtpi_pow: int = 0):
        self.coeff = to_rational(coeff)
        self.sqrtpi_pow = 0 if self.coeff == 0 else int(sqrtpi_pow)

    def __repr__(self) -> str:
        return f"ExactReal({self.coeff!r}, {self.sqrtpi_pow})"

    @classmethod
    def rational(cls, value: RationalLike) -> "ExactReal":
        return cls(to_rational(value), 0)

    @property
    def is_rational(self) -> bool:
        return self.sqrtpi_pow == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise UnsupportedError(f"{self} is not rational")
        return self.coeff

    def _coerce(self, other) -> "ExactReal":
        if isinstance(other, ExactReal):
            return other
        return ExactReal(to_rational(other), 0)

    def __mul__(self, other) -> "ExactReal":
        other = self._coerce(other)
        return ExactReal(self.coeff * other.coeff, self.sqrtpi_pow + other.sqrtpi_pow)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ExactReal":
        other = self._coerce(other)
        if other.coeff == 0:
            raise ZeroDivisionError("division by an exact zero")
        return ExactReal(self.coeff / other.coeff, self.sqrtpi_pow - other.sqrtpi_pow)

    def __rtruediv__(self, other) -> "ExactReal":
        return self._coerce(other) / self

    def __neg__(self) -> "ExactReal":
        return ExactReal(-self.coeff, self.sqrtpi_pow)

    def __add__(self, other) -> "ExactReal":
        other = self._coerce(other)
        if other.coeff == 0:
            return self
        if self.coeff == 0:
            return other
        if other.sqrtpi_pow != self.sqrtpi_pow:
            raise UnsupportedError(f"cannot add {self} and {other} exactly")
        return ExactReal(self.coeff + other.coeff, self.sqrtpi_pow)

    __radd__ = __add__

    def __sub__(self, other) -> "ExactReal":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ExactReal":
        return self._coerce(other) - self

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.coeff == other.coeff and self.sqrtpi_pow == other.sqrtpi_pow

    def __hash__(self) -> int:
        return hash((self.coeff, self.sqrtpi_pow))

    def __str__(self) -> str:
        if self.sqrtpi_pow == 0:
            return str(self.coeff)
        return f"{self.coeff}*sqrt(pi)^{self.sqrtpi_pow}"


def pochhammer(x: RationalLike, n: int) -> Fraction:
    """
    Rising factorial (x)_n = x (x+1) ... (x+n-1).

    Args:
        x: Rational base
        n: Nonnegative number of factors

    Returns:
        Exact value; (x)_0 = 1 for every x
    """
    if n < 0:
        raise ValueError(f"pochhammer length must be nonnegative, got {n}")
    x = to_rational(x)
    if x.denominator == 1:
        a = int(x)
        if a > 0:
            return Fraction(math.factorial(a + n - 1), math.factorial(a - 1))
        if a + n - 1 >= 0 and n > 0:
            return Fraction(0)
    result = Fraction(1)
    for i in range(n):
        result *= x + i
    return result


def _check_pole(x: Fraction):
    if x <= 0 and x.denominator == 1:
        raise PoleError(f"gamma has a pole at {x}")


def gamma_half(x: RationalLike) -> ExactReal:
    """
    Gamma at an integer or half-integer.

    Gamma(n) = (n-1)!, Gamma(n + 1/2) = (2n)! / (4^n n!) sqrt(pi); negative
    half-integers follow from the reflection of the Pochhammer chain.
    """
    h = HalfInteger.of(x)
    value = h.value
    _check_pole(value)
    if h.is_integer:
        return ExactReal(Fraction(math.factorial(int(value) - 1)), 0)
    n = int(value - HALF)
    if n >= 0:
        return ExactReal(Fraction(math.factorial(2 * n), 4 ** n * math.factorial(n)), 1)
    # Gamma(1/2) = Gamma(value) * (value)_{-n}
    return ExactReal(1 / pochhammer(value, -n), 1)


def _as_fractions(values: Iterable[RationalLike]) -> List[Fraction]:
    return [to_rational(v) for v in values]


def gamma_ratio(numerators: Iterable[RationalLike], denominators: Iterable[RationalLike]) -> ExactReal:
    """
    Exact value of prod Gamma(numerators) / prod Gamma(denominators).

    Arguments are grouped by their residue mod 1. Within a class they are
    paired off after sorting and each pair collapses to a Pochhammer chain;
    unpaired arguments fall back to Gamma at 1 or 1/2. Classes other than
    integers and half-integers must pair off completely.

    Args:
        numerators: Gamma arguments in the numerator
        denominators: Gamma arguments in the denominator

    Returns:
        The ratio as coeff * sqrt(pi)**m

    Raises:
        PoleError: an argument is a nonpositive integer
        UnsupportedError: an unpaired argument is neither integer nor half-integer
    """
    num = _as_fractions(numerators)
    den = _as_fractions(denominators)
    for x in num + den:
        _check_pole(x)

    classes: Dict[Fraction, List[List[Fraction]]] = defaultdict(lambda: [[], []])
    for x in num:
        classes[x - math.floor(x)][0].append(x)
    for x in den:
        classes[x - math.floor(x)][1].append(x)

    coeff = Fraction(1)
    sqrtpi_pow = 0
    for residue, (tops, bottoms) in classes.items():
        tops.sort()
        bottoms.sort()
        paired = min(len(tops), len(bottoms))
        for a, b in zip(tops[:paired], bottoms[:paired]):
            # Gamma(a) / Gamma(b) for a - b integer
            shift = int(a - b)
            if shift >= 0:
                coeff *= pochhammer(b, shift)
            else:
                coeff /= pochhammer(a, -shift)
        leftovers = [(x, 1) for x in tops[paired:]] + [(x, -1) for x in bottoms[paired:]]
        if not leftovers:
            continue
        if residue not in (0, HALF):
            raise UnsupportedError(
                f"Gamma at {leftovers[0][0]} is not exact in Q[sqrt(pi)]"
            )
        for x, sign in leftovers:
            g = gamma_half(x)
            if sign > 0:
                coeff *= g.coeff
                sqrtpi_pow += g.sqrtpi_pow
            else:
                coeff /= g.coeff
                sqrtpi_pow -= g.sqrtpi_pow
    return ExactReal(coeff, sqrtpi_pow)

