"""
Named transcendental constants that appear in closed forms of Q(-1, alpha).
"""
import logging
from fractions import Fraction

import mpmath

from src.exactnum.bounded_float import GUARD_BITS, BoundedFloat
from src.exactnum.gamma_exact import RationalLike, to_rational
from src.utils.errors import UnsupportedError

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def _wrap(compute, precision_bits: int) -> BoundedFloat:
    with mpmath.workprec(precision_bits + GUARD_BITS):
        value = compute()
    return BoundedFloat.from_mpf(value, precision_bits)


def baxter_c2(precision_bits: int) -> BoundedFloat:
    """C^2 = 3 Gamma(1/3)^3 / (4 pi^2)."""
    return _wrap(lambda: 3 * mpmath.gamma(mpmath.mpf(1) / 3) ** 3 / (4 * mpmath.pi ** 2), precision_bits)


def lemniscate_l(precision_bits: int) -> BoundedFloat:
    """L = Gamma(1/4)^2 / (2 sqrt(2 pi))."""
    return _wrap(lambda: mpmath.gamma(mpmath.mpf(1) / 4) ** 2 / (2 * mpmath.sqrt(2 * mpmath.pi)), precision_bits)


def gauss_g(precision_bits: int) -> BoundedFloat:
    """G = Gamma(1/4)^2 / (2 sqrt(2) pi^(3/2)), i.e. L / pi."""
    return _wrap(
        lambda: mpmath.gamma(mpmath.mpf(1) / 4) ** 2 / (2 * mpmath.sqrt(2) * mpmath.pi ** mpmath.mpf(1.5)),
        precision_bits,
    )


def omega1_im(precision_bits: int) -> BoundedFloat:
    """Imaginary part of the real-period constant omega_1 = (1 + i sqrt 3) Gamma(1/3)^3 / (8 pi)."""
    return _wrap(lambda: mpmath.sqrt(3) * mpmath.gamma(mpmath.mpf(1) / 3) ** 3 / (8 * mpmath.pi), precision_bits)


def q_neg_one_constant(alpha: RationalLike, precision_bits: int) -> BoundedFloat:
    """
    Closed constant of Q(-1, alpha) for the alphas where one is known.

    alpha = -1/3 -> 19 C^2 / 60, 2/3 -> 1 - 27 C^2 / 44, 1/4 -> 1 - G,
    -1/4 -> 1 + 8 / (5 L), -2/3 -> 1 - 163 / (1008 Im omega_1).
    """
    a = to_rational(alpha)
    p = precision_bits + 8
    if a == Fraction(-1, 3):
        return baxter_c2(p) * Fraction(19, 60)
    if a == Fraction(2, 3):
        return 1 - baxter_c2(p) * Fraction(27, 44)
    if a == Fraction(1, 4):
        return 1 - gauss_g(p)
    if a == Fraction(-1, 4):
        return 1 + Fraction(8, 5) / lemniscate_l(p)
    if a == Fraction(-2, 3):
        return 1 - Fraction(163, 1008) / omega1_im(p)
    raise UnsupportedError(f"no named constant for Q(-1, {a})")


def q_zero_quarter_constant(precision_bits: int) -> BoundedFloat:
    """Q(0, 1/4) = 1 - 17 G / 21."""
    return 1 - gauss_g(precision_bits + 8) * Fraction(17, 21)
