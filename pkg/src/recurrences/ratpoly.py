"""
Univariate polynomials with exact rational coefficients.
"""
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, List, Sequence, Tuple, Union

from src.exactnum.gamma_exact import to_rational

Scalar = Union[int, Fraction]


class RatPoly:
    """Polynomial sum c_i x^i, coefficients stored lowest degree first, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Union[Scalar, str]] = ()):
        values = [to_rational(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(values)

    @classmethod
    def constant(cls, c: Scalar) -> "RatPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "RatPoly":
        return cls([0, 1])

    @classmethod
    def linear(cls, slope: Scalar, offset: Scalar) -> "RatPoly":
        """slope * x + offset."""
        return cls([offset, slope])

    @classmethod
    def product(cls, factors: Iterable["RatPoly"]) -> "RatPoly":
        return reduce(lambda a, b: a * b, factors, cls.constant(1))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x: Scalar) -> Fraction:
        result = Fraction(0)
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def __add__(self, other: Union["RatPoly", Scalar]) -> "RatPoly":
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RatPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other: Union["RatPoly", Scalar]) -> "RatPoly":
        return self + (-_lift(other))

    def __rsub__(self, other: Scalar) -> "RatPoly":
        return _lift(other) - self

    def __mul__(self, other: Union["RatPoly", Scalar]) -> "RatPoly":
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RatPoly":
        result = RatPoly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatPoly.constant(other)
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def divmod(self, divisor: "RatPoly") -> Tuple["RatPoly", "RatPoly"]:
        """Euclidean division over Q."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coeffs)
        quotient = [Fraction(0)] * max(0, len(remainder) - len(divisor.coeffs) + 1)
        lead = divisor.leading
        d = divisor.degree
        for shift in range(len(quotient) - 1, -1, -1):
            factor = remainder[shift + d] / lead
            quotient[shift] = factor
            if factor:
                for i, c in enumerate(divisor.coeffs):
                    remainder[shift + i] -= factor * c
        return RatPoly(quotient), RatPoly(remainder[:d] if d > 0 else [])

    def divides(self, other: "RatPoly") -> bool:
        """True when self divides other exactly."""
        return other.divmod(self)[1].is_zero()

    def shift(self, c: Scalar) -> "RatPoly":
        """The polynomial x -> p(x + c) (Horner in the shifted variable)."""
        result = RatPoly()
        step = RatPoly.linear(1, c)
        for coeff in reversed(self.coeffs):
            result = result * step + coeff
        return result

    def scale_variable(self, s: Scalar) -> "RatPoly":
        """The polynomial x -> p(s x)."""
        s = to_rational(s)
        return RatPoly(c * s ** i for i, c in enumerate(self.coeffs))

    def antiderivative(self) -> "RatPoly":
        return RatPoly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def derivative(self) -> "RatPoly":
        return RatPoly(c * i for i, c in enumerate(self.coeffs) if i > 0)

    def primitive(self) -> "RatPoly":
        """Integer coefficients with gcd 1 and a positive leading coefficient."""
        if self.is_zero():
            return self
        lcm = reduce(_lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * lcm) for c in self.coeffs]
        g = reduce(math.gcd, ints, 0)
        sign = 1 if ints[-1] > 0 else -1
        return RatPoly(Fraction(sign * c, g) for c in ints)

    def is_proportional_to(self, other: "RatPoly") -> bool:
        """True when self = c * other for a nonzero rational c."""
        if self.is_zero() or other.is_zero():
            return False
        return self * other.leading == other * self.leading

    def to_strings(self) -> List[str]:
        return [str(c) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"RatPoly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*a")
            else:
                terms.append(f"{c}*a^{i}")
        return " + ".join(terms).replace("+ -", "- ")


def _lift(value: Union[RatPoly, Scalar]) -> RatPoly:
    return value if isinstance(value, RatPoly) else RatPoly.constant(value)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def from_integers(coeffs_high_first: Sequence[int]) -> RatPoly:
    """Build from integer coefficients listed highest degree first."""
    return RatPoly(reversed(list(coeffs_high_first)))
