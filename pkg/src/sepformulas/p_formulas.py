"""
Total separability probabilities P(k, alpha) = 1 - p_alpha(k) G(k, alpha) and the complementary share P - Q.
"""
import logging
from fractions import Fraction
from typing import Callable, Dict

from src.exactnum.bounded_float import gamma_value, power_value, product, sqrt_pi
from src.exactnum.gamma_exact import ExactReal, RationalLike, gamma_ratio, is_half_integer, to_rational
from src.recurrences.ratpoly import RatPoly, from_integers
from src.sepformulas.q_formulas import q_value
from src.sepformulas.types import DEFAULT_PRECISION, SepKind, SepValue
from src.utils.errors import PoleError, UnsupportedError

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

P_ALPHAS = (Fraction(1, 2), Fraction(1), Fraction(2))


def _check_poles(*args: Fraction):
    for x in args:
        if x <= 0 and x.denominator == 1:
            raise PoleError(f"Gamma({x}) is at a pole")


def _p_rebit(k: int) -> ExactReal:
    _check_poles(Fraction(k + 2), Fraction(3 * k + 7))
    ratio = gamma_ratio([k + 2, 2 * k + Fraction(9, 2)], [3 * k + 7])
    return 1 - ratio * ExactReal(Fraction(4) ** (k + 1) * (8 * k + 15), -1)


def _p_complex(k: int) -> ExactReal:
    _check_poles(Fraction(2 * k + 9), Fraction(3 * k + 13))
    ratio = gamma_ratio([k + Fraction(7, 2), 2 * k + 9], [3 * k + 13])
    return 1 - ratio * ExactReal(3 * Fraction(4) ** (k + 3) * (2 * k * (k + 7) + 25), -1)


def _p_quaternion(k: int) -> ExactReal:
    _check_poles(Fraction(2 * k + 15), Fraction(3 * k + 22))
    ratio = gamma_ratio([k + Fraction(13, 2), 2 * k + 15], [3 * k + 22])
    poly = k * (k * (2 * k * (k + 21) + 355) + 1452) + 2430
    return 1 - ratio * ExactReal(Fraction(4) ** (k + 6) * poly / 3, -1)


_P_CLOSED: Dict[Fraction, Callable[[int], ExactReal]] = {
    Fraction(1, 2): _p_rebit,
    Fraction(1): _p_complex,
    Fraction(2): _p_quaternion,
}


def p_total_closed(k: int, alpha: RationalLike) -> SepValue:
    """
    Exact P(k, alpha) for the two-rebit (1/2), two-qubit (1) and two-quaterbit (2) cases.

    Raises:
        UnsupportedError: alpha is not 1/2, 1 or 2
        PoleError: a gamma argument is a nonpositive integer
    """
    a = to_rational(alpha)
    if a not in _P_CLOSED:
        raise UnsupportedError(f"closed P(k, alpha) exists for alpha in {{1/2, 1, 2}}, got {a}")
    value = _P_CLOSED[a](k)
    return SepValue.of_exact(value, method="closed-form", kind=SepKind.P_TOTAL)


def complement_prob(k: int, alpha: RationalLike) -> SepValue:
    """P(k, alpha) - Q(k, alpha): the share where |rho| > |rho^PT| >= 0."""
    a = to_rational(alpha)
    p = p_total_closed(k, a)
    q = q_value(k, a)
    if not q.is_exact:
        raise UnsupportedError(f"Q({k}, {a}) has no exact value")
    return SepValue.of_exact(p.exact - q.exact, method="P-minus-Q", kind=SepKind.COMPLEMENT)


def p_value(k: int, alpha: RationalLike) -> SepValue:
    return p_total_closed(k, alpha)


def complement_value(k: int, alpha: RationalLike) -> SepValue:
    return complement_prob(k, alpha)


def p_envelope(k: int, alpha: RationalLike, precision_bits: int = DEFAULT_PRECISION) -> SepValue:
    """
    G(k, alpha) = 4^k Gamma(k+3a+3/2) Gamma(2k+5a+2) / (Gamma(1/2) Gamma(3k+10a+2)).

    Exact for integer and half-integer alpha, numeric otherwise.
    """
    a = to_rational(alpha)
    num = [k + 3 * a + Fraction(3, 2), 2 * k + 5 * a + 2]
    den = [3 * k + 10 * a + 2]
    _check_poles(*num, *den)
    if is_half_integer(a):
        value = gamma_ratio(num, den) * ExactReal(Fraction(4) ** k, -1)
        return SepValue.of_exact(value, method="envelope", kind=SepKind.OTHER)
    p = precision_bits + 16
    value = product([power_value(4, k, p)] + [gamma_value(x, p) for x in num], p)
    value = value / (gamma_value(den[0], p) * sqrt_pi(p))
    return SepValue.of_numeric(value, method="envelope", kind=SepKind.OTHER)


def p_polynomial(alpha: RationalLike) -> RatPoly:
    """
    p_alpha(k) for alpha in {1, 2}, so that P(k, alpha) = 1 - p_alpha(k) G(k, alpha).

    Its degree is 4 alpha - 2 and its leading coefficient 2^(8 alpha + 1) / (2 alpha - 1)!.
    """
    a = to_rational(alpha)
    if a == 1:
        return from_integers([2, 14, 25]) * 256
    if a == 2:
        quartic = from_integers([2, 42, 355, 1452, 2430])
        return RatPoly.product([RatPoly.linear(1, 6), RatPoly.linear(1, 7), quartic]) * Fraction(32768, 3)
    raise UnsupportedError(f"p_alpha(k) is tabulated for alpha in {{1, 2}}, got {a}")


def p_polynomial_constant(alpha: RationalLike) -> Fraction:
    """(1 - 2 Q(0, alpha)) / G(0, alpha), which equals p_alpha(0) where P(0) = 2 Q(0)."""
    a = to_rational(alpha)
    q = q_value(0, a)
    g = p_envelope(0, a)
    if not (q.is_exact and g.is_exact):
        raise UnsupportedError(f"no exact constant coefficient for alpha={a}")
    return (1 - 2 * q.exact.as_fraction()) / g.exact.as_fraction()
