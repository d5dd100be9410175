"""
Digamma and the alternating Lerch transcendent Phi(-1, 1, b) at rational arguments.
"""
import logging
import math
from fractions import Fraction

import mpmath

from src.exactnum.bounded_float import GUARD_BITS, BoundedFloat, mpf_from_rational
from src.exactnum.gamma_exact import RationalLike, to_rational
from src.utils.errors import ConvergenceError, DomainError, PoleError

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

MAX_BERNOULLI_TERMS = 400


def digamma(x: RationalLike, precision_bits: int) -> BoundedFloat:
    """
    psi(x) for rational x that is not a nonpositive integer.

    Shifts the argument up by an integer n (the recurrence psi(x+1) = psi(x) + 1/x,
    summed exactly), then uses the Stirling series
    psi(y) = log y - 1/(2y) - sum_k B_2k / (2k y^2k), whose error is bounded by
    the first omitted term.

    Args:
        x: Rational argument
        precision_bits: Target precision

    Returns:
        BoundedFloat enclosing psi(x)
    """
    q = to_rational(x)
    if q <= 0 and q.denominator == 1:
        raise PoleError(f"digamma has a pole at {q}")
    wp = precision_bits + GUARD_BITS
    threshold = Fraction(math.ceil(0.12 * wp) + 2)
    shift = max(0, math.ceil(threshold - q))
    y = q + shift
    correction = sum((1 / (q + i) for i in range(shift)), Fraction(0))

    eps = mpmath.ldexp(1, -wp)
    with mpmath.workprec(wp):
        y_mp = mpf_from_rational(y, wp)
        value = mpmath.log(y_mp) - 1 / (2 * y_mp) - mpf_from_rational(correction, wp)
        y2 = y_mp * y_mp
        power = y2
        truncation = None
        for k in range(1, MAX_BERNOULLI_TERMS):
            b = mpmath.bernfrac(2 * k)
            term = mpmath.mpf(b[0]) / b[1] / (2 * k * power)
            if abs(term) < eps * abs(value):
                truncation = abs(term)
                break
            value -= term
            power *= y2
        if truncation is None:
            raise ConvergenceError(f"digamma({q}): Stirling series did not settle")
    logger.debug(f"digamma({q}) shifted by {shift}, {k} Bernoulli terms")
    rounding = abs(value) * mpmath.ldexp(k + 8, -wp)
    result = BoundedFloat.from_mpf(value, precision_bits, rel_error=0)
    return BoundedFloat(result.value, result.abs_error + truncation + rounding, precision_bits)


def lerch_phi_neg1(b: RationalLike, precision_bits: int) -> BoundedFloat:
    """
    Phi(-1, 1, b) = sum_{i>=0} (-1)^i / (i + b).

    Evaluated as (psi((b+1)/2) - psi(b/2)) / 2.

    Raises:
        PoleError: b is a nonpositive integer (some i + b vanishes)
        DomainError: b is negative
    """
    q = to_rational(b)
    if q <= 0 and q.denominator == 1:
        raise PoleError(f"Phi(-1, 1, b) has a pole at b={q}")
    if q < 0:
        raise DomainError(f"Phi(-1, 1, b) is defined here for b > 0, got {q}")
    p = precision_bits + 4
    upper = digamma((q + 1) / 2, p)
    lower = digamma(q / 2, p)
    half = (upper - lower) * Fraction(1, 2)
    return BoundedFloat(half.value, half.abs_error, precision_bits)
