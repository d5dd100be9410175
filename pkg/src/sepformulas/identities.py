"""
Structural facts around Q(k, alpha) and P(k, alpha): root windows, the half-sum
identity, boundary and limiting values, leading-coefficient rules, exterior
probabilities and the P/Q ratio first part.
"""
import logging
import math
from enum import Enum
from fractions import Fraction
from typing import Dict, Sequence, Tuple

import mpmath

from src.exactnum.bounded_float import (
    BoundedFloat,
    gamma_value,
    pi,
    power_value,
    product,
    sqrt_pi,
    sqrt_rational,
)
from src.exactnum.gamma_exact import ExactReal, RationalLike, gamma_ratio, pochhammer, to_rational
from src.hyperg.digamma import lerch_phi_neg1
from src.hyperg.series import HyperSeries, pfq_numeric
from src.sepformulas.params import h_parameters
from src.sepformulas.q_formulas import q_at_neg_alpha
from src.sepformulas.types import (
    DEFAULT_PRECISION,
    BoundaryValues,
    IdentityCheck,
    LimitClass,
    LimitResult,
    RootWindow,
    SepKind,
    SepValue,
)
from src.utils.errors import DomainError

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


def _sign_power(alpha: int) -> int:
    return -1 if alpha % 2 else 1


def root_window(alpha: RationalLike) -> RootWindow:
    """
    Consecutive negative roots of Q(k, alpha) in k, from -alpha-1 downwards.

    For integer alpha the end point is -(10 alpha + 1 - (-1)^alpha) / 4 and the
    count is the closed count formula taken as-is. The count formula is not
    real for half-integer alpha; those windows are reported empty with a note.
    """
    a = to_rational(alpha)
    if a < 0 or (2 * a).denominator != 1:
        raise DomainError(f"root_window needs a nonnegative integer or half-integer alpha, got {a}")
    k_start = -a - 1
    if a.denominator == 2:
        return RootWindow(alpha=a, k_start=k_start, k_end=k_start, count=0,
                          note="end-point formula is complex for half-integer alpha")
    s = _sign_power(int(a))
    k_end = Fraction(-(10 * a + 1 - s), 4)
    count = int(-a + Fraction(10 * a + 1 - s, 4) - 1)
    return RootWindow(alpha=a, k_start=k_start, k_end=k_end, count=count)


def half_sum_series(alpha: RationalLike) -> HyperSeries:
    upper, lower = h_parameters(alpha)
    return HyperSeries(upper=list(upper), lower=list(lower), z=1)


def half_sum_closed(alpha: RationalLike, precision_bits: int) -> BoundedFloat:
    """3 / (2 sqrt 2) (27/4)^a Gamma(a+5/6) Gamma(a+7/6) / (Gamma(a+3/4) Gamma(a+5/4))."""
    a = to_rational(alpha)
    p = precision_bits + 16
    num = product([power_value(Fraction(27, 4), a, p), gamma_value(a + Fraction(5, 6), p),
                   gamma_value(a + Fraction(7, 6), p), Fraction(3, 2)], p)
    den = product([sqrt_rational(2, p), gamma_value(a + Fraction(3, 4), p), gamma_value(a + Fraction(5, 4), p)], p)
    return num / den


def half_sum_identity_check(alpha: RationalLike, precision_bits: int = DEFAULT_PRECISION) -> IdentityCheck:
    """
    Compare the 5F4 at unit argument whose terms are h_term(alpha, j) against
    its conjectured gamma-ratio closed form.

    Raises:
        DomainError: alpha <= -1/8
    """
    a = to_rational(alpha)
    if a <= Fraction(-1, 8):
        raise DomainError(f"half-sum identity needs alpha > -1/8, got {a}")
    lhs = pfq_numeric(half_sum_series(a), precision_bits)
    rhs = half_sum_closed(a, precision_bits)
    check = IdentityCheck(alpha=a, lhs=lhs, rhs=rhs, residual=lhs - rhs)
    logger.debug(f"half-sum identity at alpha={a}: residual {check.residual}")
    return check


def hyper2_value(alpha: RationalLike, precision_bits: int = DEFAULT_PRECISION) -> BoundedFloat:
    """Q(-alpha, alpha) times the full 5F4 sum; equals 1/2 for alpha > 0."""
    a = to_rational(alpha)
    if a <= 0:
        raise DomainError(f"the full-sum assembly needs alpha > 0, got {a}")
    p = precision_bits + 16
    return q_at_neg_alpha(a, p).bounded(p) * pfq_numeric(half_sum_series(a), p)


def boundary_values(alpha: int, precision_bits: int = DEFAULT_PRECISION) -> BoundaryValues:
    """
    P and Q one step past the end of the root window, at k = -(10a + 1 - (-1)^a) / 4.

    P = (3a(5a+2) - 1) sin(pi a/2) / (4(a+1)) + cos(pi a/2); Q has real part
    1/2 (even a) or -1/4 (odd a) and imaginary part
    -3 (-1)^a (20((-1)^a + 3) a + 5(-1)^a + 7) / (4 pi (400a^2 + 80a + 3)).
    """
    if int(alpha) != alpha or alpha < 1:
        raise DomainError(f"boundary_values needs a positive integer alpha, got {alpha}")
    a = int(alpha)
    s = _sign_power(a)
    sin_term = (0, 1, 0, -1)[a % 4]
    cos_term = (1, 0, -1, 0)[a % 4]
    p_boundary = Fraction(3 * a * (5 * a + 2) - 1, 4 * (a + 1)) * sin_term + cos_term
    q_im_rational = Fraction(-3 * s * (20 * (s + 3) * a + 5 * s + 7), 4 * (400 * a * a + 80 * a + 3))
    q_im = q_im_rational / pi(precision_bits)
    return BoundaryValues(
        alpha=Fraction(a),
        k_end=Fraction(-(10 * a + 1 - s), 4),
        p_boundary=ExactReal(p_boundary, 0),
        q_real=HALF if s == 1 else Fraction(-1, 4),
        q_im=q_im,
    )


class LimitCase(str, Enum):
    """Limiting k-values where one 6F5 parameter of the master formula vanishes."""

    P_MINUS_2_MINUS_4A = "p:k=-2-4a"
    P_MINUS_1_MINUS_4A = "p:k=-1-4a"
    P_MINUS_2_MINUS_A = "p:k=-2-a"
    P_MINUS_1_MINUS_5A_2 = "p:k=-1-5a/2"
    P_MINUS_3_2_MINUS_5A_2 = "p:k=-3/2-5a/2"
    P_MINUS_1_2_MINUS_5A_2 = "p:k=-1/2-5a/2"
    Q_MINUS_1_2_MINUS_5A_2 = "q:k=-1/2-5a/2"
    P_MINUS_5A_2 = "p:k=-5a/2"
    Q_MINUS_5A_2 = "q:k=-5a/2"


_LERCH_EVEN: Sequence[Tuple[int, Fraction]] = (
    (3, Fraction(1, 10)), (5, Fraction(1, 6)), (-3, Fraction(3, 10)), (-3, Fraction(7, 10)),
    (5, Fraction(5, 6)), (3, Fraction(9, 10)), (-2, HALF),
)
_LERCH_ODD: Sequence[Tuple[int, Fraction]] = (
    (5, Fraction(1, 3)), (3, Fraction(2, 5)), (-3, Fraction(3, 5)), (-5, Fraction(2, 3)),
    (3, Fraction(4, 5)), (2, Fraction(1)), (3, Fraction(6, 5)),
)


def _lerch_combination(a: Fraction, terms, p: int) -> BoundedFloat:
    total = BoundedFloat.exact(0, p)
    for weight, offset in terms:
        total = total + lerch_phi_neg1(a / 2 + offset, p) * weight
    return total


def _integer_alpha(a: Fraction, case: LimitCase) -> int:
    if a.denominator != 1 or a < 1:
        raise DomainError(f"{case.value} needs a positive integer alpha, got {a}")
    return int(a)


def _parity(a: int, want_even: bool, case: LimitCase):
    if (a % 2 == 0) != want_even:
        raise DomainError(f"{case.value} holds for {'even' if want_even else 'odd'} alpha, got {a}")


def _finite(case: LimitCase, a: Fraction, value: SepValue) -> LimitResult:
    return LimitResult(case=case.value, alpha=a, classification=LimitClass.FINITE, value=value)


def limit_values(alpha: RationalLike, case: LimitCase, precision_bits: int = DEFAULT_PRECISION) -> LimitResult:
    """
    Limiting values of P or Q at k-values tied to zero parameters of the 6F5.

    Mod-4 cases return a classification; the others a finite value, exact
    where the gamma arguments allow.

    Raises:
        DomainError: the case's parity or integrality condition fails
    """
    a = to_rational(alpha)
    case = LimitCase(case)
    p = precision_bits + 16

    if case == LimitCase.P_MINUS_2_MINUS_4A:
        if a.denominator == 1 and a >= 0:
            front = Fraction(2) ** int(4 * a - 1) * 3 * (5 * a + 2) / (3 * a + 2)
            ratio = gamma_ratio([2 * a + Fraction(3, 2)], [2 * a + 2]) * ExactReal(front, -1)
            return _finite(case, a, SepValue.of_exact(ratio + Fraction(1, 4), method="limit", kind=SepKind.P_TOTAL))
        front = power_value(2, 4 * a - 1, p) * 3 * (5 * a + 2) / (3 * a + 2)
        value = front * gamma_value(2 * a + Fraction(3, 2), p) / (sqrt_pi(p) * gamma_value(2 * a + 2, p)) + Fraction(1, 4)
        return _finite(case, a, SepValue.of_numeric(value, method="limit", kind=SepKind.P_TOTAL))

    if case == LimitCase.P_MINUS_1_MINUS_4A:
        if a.denominator == 1 and a >= 0:
            ratio = gamma_ratio([2 * a + HALF], [2 * a + 1]) * ExactReal(3 * Fraction(16) ** int(a), -1)
            return _finite(case, a, SepValue.of_exact((ratio + 1) * Fraction(1, 4), method="limit", kind=SepKind.P_TOTAL))
        value = (3 * power_value(16, a, p) * gamma_value(2 * a + HALF, p) / (sqrt_pi(p) * gamma_value(2 * a + 1, p)) + 1) * Fraction(1, 4)
        return _finite(case, a, SepValue.of_numeric(value, method="limit", kind=SepKind.P_TOTAL))

    if case == LimitCase.P_MINUS_2_MINUS_A:
        _integer_alpha(a, case)
        return _finite(case, a, SepValue.of_exact(0, method="limit", kind=SepKind.P_TOTAL))

    if case == LimitCase.P_MINUS_1_MINUS_5A_2:
        n = _integer_alpha(a, case)
        classification = (LimitClass.PLUS_ONE, LimitClass.MINUS_INFINITY,
                          LimitClass.MINUS_ONE, LimitClass.PLUS_INFINITY)[n % 4]
        return LimitResult(case=case.value, alpha=a, classification=classification)

    if case == LimitCase.P_MINUS_3_2_MINUS_5A_2:
        n = _integer_alpha(a, case)
        if n % 2 == 0:
            classification = LimitClass.MINUS_INFINITY if n % 4 == 2 else LimitClass.PLUS_INFINITY
            return LimitResult(case=case.value, alpha=a, classification=classification)
        # -i * i^a is real for odd a
        sign = -1 if ((n + 1) // 2) % 2 else 1
        value = Fraction(-sign * (3 * n * (5 * n + 2) - 1), 4 * (n + 1))
        return _finite(case, a, SepValue.of_exact(value, method="limit", kind=SepKind.P_TOTAL))

    if case == LimitCase.P_MINUS_1_2_MINUS_5A_2:
        n = _integer_alpha(a, case)
        _parity(n, True, case)
        i_pow = 1 if n % 4 == 0 else -1
        value = _lerch_combination(a, _LERCH_EVEN, p) * i_pow / (pi(p) * 15)
        return _finite(case, a, SepValue.of_numeric(value, method="limit-lerch", kind=SepKind.P_TOTAL))

    if case == LimitCase.Q_MINUS_1_2_MINUS_5A_2:
        n = _integer_alpha(a, case)
        _parity(n, False, case)
        h = a / 2
        num = product([gamma_value(h + Fraction(c, 10), p) for c in (7, 9, 11, 13)] + [gamma_value((a + 1) / 2, p)], p)
        den = product([gamma_value(h + Fraction(c, 5), p) for c in (3, 4, 5, 6, 7)], p)
        value = num * 3 * sqrt_pi(p) / (sqrt_rational(5, p) * 8) / den
        return _finite(case, a, SepValue.of_numeric(value, method="limit"))

    if case == LimitCase.P_MINUS_5A_2:
        n = _integer_alpha(a, case)
        _parity(n, False, case)
        # -i e^(i pi a/2) = -i^(a+1), real for odd a
        sign = -1 if ((n + 1) // 2) % 2 else 1
        inner = _lerch_combination(a, _LERCH_ODD, p) * (n * (5 * n + 2)) + (12 - 40 * n)
        value = inner * (-sign) / (pi(p) * (15 * n * (5 * n + 2)))
        return _finite(case, a, SepValue.of_numeric(value, method="limit-lerch", kind=SepKind.P_TOTAL))

    # LimitCase.Q_MINUS_5A_2
    n = _integer_alpha(a, case)
    _parity(n, True, case)
    h = a / 2
    num = product([pi(p), pi(p), sqrt_pi(p), power_value(5, -5 * a / 2 - 2, p),
                   gamma_value(5 * a / 2 + 2, p), 3 * (35 * n + 22)], p)
    den = product([gamma_value(h + Fraction(c, 10), p) for c in (7, 9, 11, 13)] + [gamma_value((a + 3) / 2, p), 88], p)
    return _finite(case, a, SepValue.of_numeric(num / den, method="limit"))


# Leading coefficients of the monic-normalized p_alpha(k), i-th rule parameter
_C4_POLY = (542508998592, -173872269670, 30016283027, -5492491130, 613817365)
_C5_POLY = (13657232612174832, -8722204904328012, 2137571940201488, -325978342903557,
            38051293414691, -4403156498055, 305067230405)
_C6_POLY = (-385892347895176978944, 169446873953910154824, -35895786322816308558, 5002806671861237555,
            -526319720165886192, 46257531538470350, -4033760477145378, 212265778915799)
_C7_POLY = (-118165465673929410155118720, 78054176824402526959936464, -20874814527662001270399420,
            3466800379462987766973880, -414647891239558549971645, 39074939804872696010811,
            -3070915881213672409050, 216128338841103270330, -14061542253335879085, 527480460605760515)


def _poly(coeffs_low_first: Sequence[int], i: int) -> int:
    return sum(c * i ** n for n, c in enumerate(coeffs_low_first))


def _pow(base: int, exponent: int) -> Fraction:
    return Fraction(base) ** exponent


def leading_coeffs(order: int, i: int) -> Fraction:
    """
    C_order(i), order = 1..7: the order-th highest coefficient rule of the
    monic p_alpha polynomials, as a function of the rule index i.
    """
    if i < 1:
        raise DomainError(f"leading_coeffs needs i >= 1, got {i}")
    fact_i = math.factorial(i)
    fact_im1 = math.factorial(i - 1)
    if order == 1:
        return Fraction(17, 2) ** i / fact_i
    if order == 2:
        return _pow(2, -i - 2) * _pow(17, i - 2) * (1109 - 497 * i) / (3 * fact_im1)
    if order == 3:
        cubic = i * (i * (247009 * i - 1370262) + 3942323) - 11308734
        return _pow(2, -i - 5) * _pow(17, i - 4) * cubic / (9 * fact_im1)
    if order == 4:
        front = -_pow(2, -i - 7) * _pow(17, i - 6) * (i - 1) * i / (405 * fact_i)
        return front * _poly(_C4_POLY, i)
    if order == 5:
        front = _pow(2, -i - 11) * _pow(17, i - 8) * (i - 1) * i / (1215 * fact_i)
        return front * _poly(_C5_POLY, i)
    if order == 6:
        front = -_pow(2, -i - 13) * _pow(17, i - 10) * (i - 2) * (i - 1) * i / (25515 * fact_i)
        return front * _poly(_C6_POLY, i)
    if order == 7:
        front = _pow(2, -i - 16) * _pow(17, i - 12) * (i - 2) * (i - 1) * i / (1148175 * fact_i)
        return front * _poly(_C7_POLY, i)
    raise DomainError(f"leading-coefficient rules exist for orders 1..7, got {order}")


class ExteriorCase(str, Enum):
    INSPHERE_QUBIT = "insphere_qubit"
    INSPHERE_REBIT = "insphere_rebit"
    ABSSEP_REBIT = "abssep_rebit"
    ABSSEP_QUBIT_NUMERIC = "abssep_qubit_numeric"


ABSSEP_QUBIT_REFERENCE = "0.239643"

# Printed decimal values the closed forms must reproduce
EXTERIOR_REFERENCES: Dict[ExteriorCase, str] = {
    ExteriorCase.INSPHERE_QUBIT: "0.240357",
    ExteriorCase.INSPHERE_REBIT: "0.453124868",
    ExteriorCase.ABSSEP_REBIT: "0.433387744",
}


def exterior_probabilities(case: ExteriorCase, precision_bits: int = DEFAULT_PRECISION) -> BoundedFloat:
    """
    Separability probability outside the all-separable insphere, or outside
    the absolutely separable states, under the Hilbert-Schmidt measure.

    abssep_qubit_numeric has no closed form; it is returned as its six-digit
    reference value with a half-unit bound.
    """
    case = ExteriorCase(case)
    p = precision_bits + 16
    if case == ExteriorCase.INSPHERE_QUBIT:
        s3pi = sqrt_rational(3, p) * pi(p)
        return (s3pi * 385 - 186624) / ((s3pi * 35 - 69984) * 11)
    if case == ExteriorCase.INSPHERE_REBIT:
        s3 = sqrt_rational(3, p)
        return (s3 * 128 - 416118303) / ((s3 * 2 - 14348907) * 64)
    if case == ExteriorCase.ABSSEP_REBIT:
        s2 = sqrt_rational(2, p)
        s2pi = s2 * pi(p)
        return (29 - s2 * 13856 + s2pi * 4410) / ((32 - s2 * 6928 + s2pi * 2205) * 2)
    with mpmath.workprec(p):
        centre = mpmath.mpf(ABSSEP_QUBIT_REFERENCE)
    return BoundedFloat(centre, mpmath.mpf("5e-7"), precision_bits)


def pq_ratio_firstpart(alpha: int) -> Fraction:
    """
    First part of the solution of the difference equation for
    (P(1,a) - P(0,a)) / (Q(1,a) - Q(0,a)):

    5 3^(-3a-1) 8^(2a+1) (5a+3) (7/10)_a (9/10)_a (1)_a (11/10)_a (13/10)_a (3/2)_a
    / ((20a+11) (2/5)_a (3/5)_a (4/5)_a (5/6)_a (7/6)_a (6/5)_a)
    """
    if int(alpha) != alpha or alpha < 1:
        raise DomainError(f"pq_ratio_firstpart needs a positive integer alpha, got {alpha}")
    a = int(alpha)
    num = 5 * _pow(3, -3 * a - 1) * _pow(8, 2 * a + 1) * (5 * a + 3)
    for c in ("7/10", "9/10", "1", "11/10", "13/10", "3/2"):
        num *= pochhammer(Fraction(c), a)
    den = Fraction(20 * a + 11)
    for c in ("2/5", "3/5", "4/5", "5/6", "7/6", "6/5"):
        den *= pochhammer(Fraction(c), a)
    return num / den
