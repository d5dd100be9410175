"""
Evaluation routes for the partial-transpose-positivity probability Q(k, alpha).

Routes:
  * finite hypergeometric sum (integer alpha, exact),
  * closed-form catalog in k for fixed alpha,
  * the 6F5 master formula (any alpha > 0),
  * concise sums over alpha for k in {-1, 0, 1, 3}.
"""
import logging
import math
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import mpmath

from src.exactnum.bounded_float import (
    GUARD_BITS,
    BoundedFloat,
    gamma_value,
    mpf_from_rational,
    power_value,
    product,
    sqrt_pi,
)
from src.exactnum.gamma_exact import ExactReal, RationalLike, gamma_ratio, is_half_integer, pochhammer, to_rational
from src.hyperg.series import HyperSeries, pfq_numeric, pfq_regularized
from src.recurrences.ratpoly import RatPoly, from_integers
from src.sepformulas.params import h_ratio
from src.sepformulas.types import DEFAULT_PRECISION, Flag, SepValue
from src.utils.cache_utils import cached
from src.utils.errors import ConvergenceError, DomainError, PoleError, UnsupportedError

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)

# k-ranges over which each catalog formula is known to agree with the finite sums
VERIFIED_K: Dict[Fraction, Tuple[int, int]] = {
    Fraction(-1, 2): (1, 9),
    Fraction(-1, 4): (0, 9),
    Fraction(1, 4): (-1, 9),
    Fraction(1, 2): (-1, 9),
    Fraction(3, 4): (-1, 9),
    Fraction(1): (-2, 9),
    Fraction(3, 2): (-1, 9),
    Fraction(2): (-3, 10),
}
CATALOG_ALPHAS = tuple(sorted(VERIFIED_K))


def _alpha(alpha: RationalLike) -> Fraction:
    return to_rational(alpha)


def _as_rational(x: ExactReal, label: str) -> Fraction:
    if not x.is_rational:
        raise UnsupportedError(f"{label} did not reduce to a rational: {x}")
    return x.coeff


# ---------------------------------------------------------------------------
# Finite sums
# ---------------------------------------------------------------------------

@cached()
def _q_neg_alpha_exact(alpha: int) -> Fraction:
    """1/2 (4/27)^a (3/4)_a (5/4)_a / ((5/6)_a (7/6)_a)."""
    return (HALF * Fraction(4, 27) ** alpha
            * pochhammer(Fraction(3, 4), alpha) * pochhammer(Fraction(5, 4), alpha)
            / (pochhammer(Fraction(5, 6), alpha) * pochhammer(Fraction(7, 6), alpha)))


def q_at_neg_alpha(alpha: RationalLike, precision_bits: int = DEFAULT_PRECISION) -> SepValue:
    """
    Q(-alpha, alpha), the first term of the finite sums.

    Exact for integer alpha; otherwise the Pochhammer symbols are gamma
    ratios evaluated numerically.
    """
    a = _alpha(alpha)
    if a < 0:
        raise DomainError(f"q_at_neg_alpha needs alpha >= 0, got {a}")
    if a.denominator == 1:
        return SepValue.of_exact(_q_neg_alpha_exact(int(a)), method="finite-sum")
    p = precision_bits + 16
    value = (power_value(Fraction(4, 27), a, p) * HALF
             * gamma_value(Fraction(3, 4) + a, p) * gamma_value(Fraction(5, 4) + a, p)
             * gamma_value(Fraction(5, 6), p) * gamma_value(Fraction(7, 6), p)
             / (gamma_value(Fraction(3, 4), p) * gamma_value(Fraction(5, 4), p)
                * gamma_value(Fraction(5, 6) + a, p) * gamma_value(Fraction(7, 6) + a, p)))
    return SepValue.of_numeric(_round(value, precision_bits), method="finite-sum")


def _check_finite_sum_domain(k: int, alpha) -> int:
    if int(alpha) != alpha or alpha < 0:
        raise DomainError(f"finite sums need a nonnegative integer alpha, got {alpha}")
    a = int(alpha)
    if k < -a - 1:
        raise DomainError(f"finite sum for Q({k}, {a}) needs k >= {-a - 1}")
    return a


@cached()
def q_integer_alpha(k: int, alpha: int) -> Fraction:
    """
    Q(k, alpha) = Q(-alpha, alpha) * sum_{j=0}^{alpha+k} h_term(alpha, j) for integer alpha.

    k = -alpha-1 gives the empty sum, Q = 0.

    Raises:
        DomainError: alpha is not a nonnegative integer, or k < -alpha - 1
    """
    a = _check_finite_sum_domain(k, alpha)
    n = a + k
    total = Fraction(0)
    term = Fraction(1)
    a_frac = Fraction(a)
    for j in range(n + 1):
        total += term
        if j < n:
            term *= h_ratio(a_frac, j)
            if term == 0:
                break
    return _q_neg_alpha_exact(a) * total


def q_integer_alpha_numeric(k: int, alpha: int, precision_bits: int = DEFAULT_PRECISION) -> BoundedFloat:
    """
    The finite sum of q_integer_alpha in floating point, for large alpha.

    All terms are positive for alpha >= 1, so the rounding bound is a small
    multiple of the unit roundoff times the number of operations.
    """
    a = _check_finite_sum_domain(k, alpha)
    if a == 0:
        return BoundedFloat.exact(q_integer_alpha(k, 0), precision_bits)
    n = a + k
    if n < 0:
        return BoundedFloat.exact(0, precision_bits)
    wp = precision_bits + GUARD_BITS
    af = Fraction(a)
    with mpmath.workprec(wp):
        upper = [mpf_from_rational(f, wp) for f in (
            Fraction(3, 2) * af, af + HALF, Fraction(3, 2) * af + HALF,
            Fraction(3, 2) * af + Fraction(11, 8), 2 * af + HALF)]
        lower = [mpf_from_rational(f, wp) for f in (
            Fraction(3, 2) * af + Fraction(3, 8), Fraction(3, 2) * af + Fraction(3, 4),
            Fraction(3, 2) * af + Fraction(5, 4), 3 * af + 1)]
        total = mpmath.mpf(0)
        term = mpmath.mpf(1)
        for j in range(n + 1):
            total += term
            num = mpmath.fprod(u + j for u in upper)
            den = (j + 1) * mpmath.fprod(b + j for b in lower)
            term = term * num / den
        start = (mpmath.log(mpmath.mpf(4) / 27) * a
                 + mpmath.loggamma(mpmath.mpf(3) / 4 + a) - mpmath.loggamma(mpmath.mpf(3) / 4)
                 + mpmath.loggamma(mpmath.mpf(5) / 4 + a) - mpmath.loggamma(mpmath.mpf(5) / 4)
                 - mpmath.loggamma(mpmath.mpf(5) / 6 + a) + mpmath.loggamma(mpmath.mpf(5) / 6)
                 - mpmath.loggamma(mpmath.mpf(7) / 6 + a) + mpmath.loggamma(mpmath.mpf(7) / 6))
        value = mpmath.exp(start) * total / 2
    rel = mpmath.ldexp(12 * (n + 2) + 64, -wp)
    return BoundedFloat.from_mpf(value, precision_bits, rel_error=rel)


# ---------------------------------------------------------------------------
# Successive differences and the master formula
# ---------------------------------------------------------------------------

def _diff_gamma_args(k: int, a: Fraction):
    num = [k + 2 * a + Fraction(3, 2), k + 3 * a + Fraction(3, 2), 2 * k + 5 * a + 2]
    den = [k + a + 2, k + 4 * a + 2, 2 * k + 5 * a + Fraction(7, 2)]
    return num, den


def _check_poles(args: Sequence[Fraction], label: str):
    for x in args:
        if x <= 0 and x.denominator == 1:
            raise PoleError(f"{label}: Gamma({x}) is at a pole")


def q_successive_diff(k: int, alpha: RationalLike, precision_bits: int = DEFAULT_PRECISION) -> SepValue:
    """
    Q(k+1, alpha) - Q(k, alpha)
      = alpha (20 alpha + 8k + 11) Gamma(k+2a+3/2) Gamma(k+3a+3/2) Gamma(2k+5a+2)
        / (4 sqrt(pi) Gamma(k+a+2) Gamma(k+4a+2) Gamma(2k+5a+7/2)).

    The cube-root-of-unity gamma factors of the unreduced form collapse by
    Gauss multiplication, so the value is exact whenever alpha is an integer
    or half-integer.
    """
    a = _alpha(alpha)
    num, den = _diff_gamma_args(k, a)
    _check_poles(num + den, f"q_successive_diff({k}, {a})")
    front = a * (20 * a + 8 * k + 11) / 4
    if is_half_integer(a):
        value = gamma_ratio(num, den) * ExactReal(front, -1)
        return SepValue.of_exact(value, method="successive-diff")
    p = precision_bits + 16
    value = product([gamma_value(x, p) for x in num], p) / product([gamma_value(x, p) for x in den], p)
    value = value * front / sqrt_pi(p)
    return SepValue.of_numeric(_round(value, precision_bits), method="successive-diff")


def master_series(k: int, alpha: RationalLike) -> HyperSeries:
    """The 6F5 at z = 1 of the master formula (parameter excess 1/2)."""
    a = _alpha(alpha)
    c = Fraction(5, 2) * a + k
    upper = [1, c + 1, c + Fraction(3, 2), 2 * a + k + Fraction(3, 2), 3 * a + k + Fraction(3, 2), c + Fraction(19, 8)]
    lower = [a + k + 2, 4 * a + k + 2, c + Fraction(7, 4), c + Fraction(9, 4), c + Fraction(11, 8)]
    return HyperSeries(upper=upper, lower=lower, z=1)


def q_master(k: int, alpha: RationalLike, precision_bits: int = DEFAULT_PRECISION) -> SepValue:
    """
    Q(k, alpha) = 1/2 - D(k, alpha) * 6F5(...; 1), D the successive difference.

    Valid for every rational alpha > 0.
    """
    a = _alpha(alpha)
    if a <= 0:
        raise DomainError(f"master formula needs alpha > 0, got {a}")
    p = precision_bits + 16
    diff = q_successive_diff(k, a, p).bounded(p)
    series_value = pfq_numeric(master_series(k, a), p)
    value = HALF - diff * series_value
    logger.debug(f"q_master({k}, {a}) = {value}")
    return SepValue.of_numeric(_round(value, precision_bits), method="master-formula")


# ---------------------------------------------------------------------------
# Closed forms in k
# ---------------------------------------------------------------------------

def _validity_flags(k: int, a: Fraction) -> List[Flag]:
    lo, hi = VERIFIED_K[a]
    if lo <= k <= hi:
        return []
    logger.warning(f"Q({k}, {a}) lies outside the verified k-range {lo}..{hi} of its closed form")
    return [Flag.OUTSIDE_VERIFIED_RANGE]


def _closed_half(k: int) -> Fraction:
    return HALF - _as_rational(gamma_ratio([2 * k + Fraction(9, 2)], [2 * k + 5]) * ExactReal(1, -1), "Q(k,1/2)")


def _closed_one(k: int) -> Fraction:
    ratio = gamma_ratio([k + Fraction(7, 2), k + Fraction(7, 2), k + Fraction(9, 2)], [k + 5, 2 * k + Fraction(13, 2)])
    return HALF - _as_rational(ratio * ExactReal(Fraction(4) ** (k + 3), -2), "Q(k,1)")


def _closed_three_halves(k: int) -> Fraction:
    if k in (-5, -6):
        raise PoleError(f"Q({k}, 3/2) closed form has a pole")
    ratio = gamma_ratio([2 * k + Fraction(19, 2)], [2 * k + 9])
    front = Fraction(6 * k + 31, 4 * (k + 5) * (k + 6))
    return HALF - _as_rational(ratio * ExactReal(front, -1), "Q(k,3/2)")


def _closed_two(k: int) -> Fraction:
    ratio = gamma_ratio([k + Fraction(11, 2), k + Fraction(13, 2), k + Fraction(15, 2)], [k + 9, 2 * k + Fraction(23, 2)])
    return HALF - _as_rational(ratio * ExactReal(Fraction(4) ** (k + 6) * (k + 6), -2), "Q(k,2)")


def _closed_minus_half(k: int) -> Tuple[Fraction, List[Flag]]:
    if k in (-1, 0):
        return HALF, [Flag.OBSERVED_OVERRIDE]
    if k < -1:
        raise DomainError(f"Q({k}, -1/2) is tabulated for k >= -1")
    ratio = gamma_ratio([2 * k - HALF], [2 * k])
    return _as_rational(ratio * ExactReal(1, -1), "Q(k,-1/2)") + HALF, []


def _closed_three_quarters(k: int, precision_bits: int) -> BoundedFloat:
    p = precision_bits + 16
    s = HyperSeries(upper=[1, k + Fraction(23, 8), k + Fraction(27, 8)], lower=[k + Fraction(29, 8), k + Fraction(33, 8)])
    g = gamma_value(2 * k + Fraction(23, 4), p)
    first = power_value(2, -2 * k - Fraction(29, 4), p) * g * pfq_regularized(s, p)
    second = g / (gamma_value(2 * k + Fraction(21, 4), p) * sqrt_pi(p) * (2 * (k + 3)))
    return HALF - first - second


_EXACT_CLOSED: Dict[Fraction, Callable[[int], Fraction]] = {
    Fraction(1, 2): _closed_half,
    Fraction(1): _closed_one,
    Fraction(3, 2): _closed_three_halves,
    Fraction(2): _closed_two,
}


def q_closed_form(k: int, alpha: RationalLike, precision_bits: int = DEFAULT_PRECISION) -> SepValue:
    """
    Closed form of Q(k, alpha) in k for alpha in {-1/2, -1/4, 1/4, 1/2, 3/4, 1, 3/2, 2}.

    Exact for the half-integer alphas; the quarter alphas go through a
    regularized 3F2 and are numeric. Values outside the k-range where a form
    is known to hold carry the outside-verified-range flag.

    Raises:
        UnsupportedError: alpha is not in the catalog
    """
    a = _alpha(alpha)
    if a not in VERIFIED_K:
        raise UnsupportedError(f"no closed form in k for alpha={a}; catalog is {[str(c) for c in CATALOG_ALPHAS]}")
    if a == Fraction(-1, 2):
        value, flags = _closed_minus_half(k)
        return SepValue.of_exact(value, method="closed-form", flags=flags or _validity_flags(k, a))
    flags = _validity_flags(k, a)
    if a in _EXACT_CLOSED:
        return SepValue.of_exact(_EXACT_CLOSED[a](k), method="closed-form", flags=flags)
    if a == Fraction(3, 4):
        value = _closed_three_quarters(k, precision_bits)
    else:
        value = _generalized(k, a, precision_bits)
    return SepValue.of_numeric(_round(value, precision_bits), method="closed-form", flags=flags)


def _generalized(k: int, a: Fraction, precision_bits: int) -> BoundedFloat:
    if a == 0:
        raise DomainError("the regularized 3F2 form needs alpha != 0")
    p = precision_bits + 16
    c = Fraction(5, 2) * a + k
    s = HyperSeries(upper=[1, c + 1, c + Fraction(3, 2)], lower=[c + Fraction(7, 4), c + Fraction(9, 4)])
    sign = 1 if a > 0 else -1
    body = power_value(2, -5 * a - 2 * k - Fraction(7, 2), p) * gamma_value(2 * k + 5 * a + 2, p) * pfq_regularized(s, p)
    return HALF - body * sign


def q_generalized(k: int, alpha: RationalLike, precision_bits: int = DEFAULT_PRECISION) -> SepValue:
    """
    1/2 - 2^(-5a-2k-7/2) sgn(a) Gamma(2k+5a+2) 3F2~(1, k+5a/2+1, k+5a/2+3/2; k+5a/2+7/4, k+5a/2+9/4; 1).

    Reproduces the alpha = +-1/4 closed forms; any other alpha is flagged.
    """
    a = _alpha(alpha)
    flags = [] if a in (Fraction(1, 4), Fraction(-1, 4)) else [Flag.OUTSIDE_VERIFIED_RANGE]
    return SepValue.of_numeric(_round(_generalized(k, a, precision_bits), precision_bits),
                               method="generalized-3F2", flags=flags)


# ---------------------------------------------------------------------------
# Concise sums over alpha
# ---------------------------------------------------------------------------

class ConciseTerm:
    """
    Summand f(x) of Q(k, alpha) = sum_{i>=0} f(alpha + i).

    The ratio f(x+1)/f(x) = const * prod(x + a_i) / prod(x + b_i) * poly(x+1) / poly(x)
    is exact; f itself is evaluated once, at x = alpha.
    """

    def __init__(self, k: int, const: Fraction, num_offsets: Sequence[Fraction], den_offsets: Sequence[Fraction],
                 poly: RatPoly, value: Callable[[mpmath.mpf], mpmath.mpf]):
        self.k = k
        self.const = const
        self.num_offsets = sorted(num_offsets)
        self.den_offsets = sorted(den_offsets)
        self.poly = poly
        self._value = value
        if any(c < 0 for c in poly.coeffs):
            raise ValueError("concise-sum polynomials must have nonnegative coefficients")

    def ratio(self, x: Fraction) -> Fraction:
        r = self.const * self.poly(x + 1) / self.poly(x)
        for a in self.num_offsets:
            r *= x + a
        for b in self.den_offsets:
            r /= x + b
        return r

    def ratio_sup(self, x0: Fraction) -> Fraction:
        """Upper bound of ratio(x) over x >= x0 > 0."""
        bound = self.const * ((x0 + 1) / x0) ** self.poly.degree
        for a, b in zip(self.num_offsets, self.den_offsets):
            bound *= max(Fraction(1), (x0 + a) / (x0 + b))
        return bound

    def value_at(self, x: Fraction, precision_bits: int) -> BoundedFloat:
        with mpmath.workprec(precision_bits + GUARD_BITS):
            v = self._value(mpf_from_rational(x, precision_bits + GUARD_BITS))
        return BoundedFloat.from_mpf(v, precision_bits, rel_error=mpmath.ldexp(1, 8 - precision_bits))


def _g(x):
    return mpmath.gamma(x)


def _f0(x):
    q0 = 185000 * x ** 5 + 779750 * x ** 4 + 1289125 * x ** 3 + 1042015 * x ** 2 + 410694 * x + 63000
    return (q0 * mpmath.power(2, -4 * x - 6) * _g(3 * x + mpmath.mpf(5) / 2) * _g(5 * x + 2)
            / (6 * _g(x + 1) * _g(2 * x + 3) * _g(5 * x + mpmath.mpf(13) / 2)))


_P6 = from_integers([74000, 578300, 1830820, 3013197, 2724024, 1284280, 246960])


def _f1(x):
    p6 = sum(int(c) * x ** i for i, c in enumerate(_P6.coeffs))
    q1 = 9 * mpmath.pi / 1000000 * (5 * x + 1) * (5 * x + 2) * (5 * x + 3) * p6
    return (q1 * mpmath.power(27, x) * _g(5 * x) * _g(x + mpmath.mpf(5) / 6) * _g(x + mpmath.mpf(7) / 6)
            / (mpmath.power(50000, x) * _g(x) * _g(x + mpmath.mpf(17) / 10) * _g(x + mpmath.mpf(19) / 10)
               * _g(x + mpmath.mpf(21) / 10) * _g(x + mpmath.mpf(23) / 10) * _g(2 * x + 5)))


def _fm1(x):
    poly = x * (10 * x + 7) * (925 * x ** 2 + 615 * x + 134) + 54
    return (mpmath.pi * mpmath.power(5, -5 * x - 4) * mpmath.power(16, -x - 1) * mpmath.power(27, x) * poly
            * _g(x + mpmath.mpf(1) / 6) * _g(x + mpmath.mpf(5) / 6) * _g(5 * x + 1)
            / (_g(x + mpmath.mpf(9) / 10) * _g(x + 1) * _g(x + mpmath.mpf(11) / 10) * _g(x + mpmath.mpf(13) / 10)
               * _g(x + mpmath.mpf(17) / 10) * _g(2 * x + 2)))


_Q3 = from_integers([740000, 11666000, 76382750, 271168745, 566336789, 698007782, 471120306, 134548128])


def _f3(x):
    q3 = sum(int(c) * x ** i for i, c in enumerate(_Q3.coeffs))
    return (mpmath.power(3, 3 * x + 4) * mpmath.power(4, -2 * x - 5) * (2 * x + 5)
            * _g(x + mpmath.mpf(8) / 5) * _g(x + mpmath.mpf(9) / 5) * _g(x + mpmath.mpf(11) / 6)
            * _g(x + mpmath.mpf(13) / 6) * _g(x + mpmath.mpf(11) / 5) * _g(x + mpmath.mpf(12) / 5) * q3
            / (625 * mpmath.sqrt(5) * mpmath.pi * (x + 4) * _g(x + mpmath.mpf(27) / 10) * _g(x + mpmath.mpf(29) / 10)
               * _g(x + mpmath.mpf(31) / 10) * _g(x + mpmath.mpf(33) / 10) * _g(2 * x + 7)))


def _fr(*values: str) -> List[Fraction]:
    return [Fraction(v) for v in values]


_CONCISE: Dict[int, ConciseTerm] = {
    -1: ConciseTerm(
        -1, Fraction(27, 64),
        _fr("1/6", "5/6", "1/5", "2/5", "3/5", "4/5"),
        _fr("9/10", "11/10", "13/10", "17/10", "1", "3/2"),
        from_integers([9250, 12625, 5645, 938, 54]), _fm1),
    0: ConciseTerm(
        0, Fraction(27, 64),
        _fr("5/6", "7/6", "2/5", "3/5", "4/5", "6/5"),
        _fr("3/2", "2", "13/10", "17/10", "19/10", "21/10"),
        from_integers([185000, 779750, 1289125, 1042015, 410694, 63000]), _f0),
    1: ConciseTerm(
        1, Fraction(27, 64),
        _fr("1/5", "2/5", "3/5", "4/5", "5/6", "7/6"),
        _fr("17/10", "19/10", "21/10", "23/10", "5/2", "3"),
        RatPoly.product([RatPoly.linear(5, 1), RatPoly.linear(5, 2), RatPoly.linear(5, 3), _P6]), _f1),
    3: ConciseTerm(
        3, Fraction(27, 64),
        _fr("8/5", "9/5", "11/6", "13/6", "11/5", "12/5"),
        _fr("5/2", "5", "27/10", "29/10", "31/10", "33/10"),
        _Q3, _f3),
}

CONCISE_MAX_TERMS = 5000


def concise_term(k: int) -> ConciseTerm:
    if k not in _CONCISE:
        raise DomainError(f"concise sums exist for k in {sorted(_CONCISE)}, got {k}")
    return _CONCISE[k]


def q_concise_sum(k: int, alpha: RationalLike, tol: float = 1e-20,
                  precision_bits: Optional[int] = None) -> SepValue:
    """
    Q(k, alpha) = sum_{i>=0} f_k(alpha + i) for k in {-1, 0, 1, 3}, alpha > 0.

    Terms decay like (27/64)^i. Summation stops when a geometric majorant of
    the remaining terms falls below tol.

    Args:
        k: One of -1, 0, 1, 3
        alpha: Rational alpha > 0
        tol: Absolute tolerance of the truncated tail
        precision_bits: Working precision (default: enough bits for tol)
    """
    term = concise_term(k)
    a = _alpha(alpha)
    if a <= 0:
        raise DomainError(f"concise sums need alpha > 0, got {a}")
    bits = precision_bits or max(DEFAULT_PRECISION, int(-math.log2(tol)) + 24)
    first = term.value_at(a, bits)
    scale = abs(first.value) + first.abs_error
    weights = Fraction(0)
    w = Fraction(1)
    for i in range(CONCISE_MAX_TERMS):
        x = a + i
        rho = term.ratio_sup(x)
        if rho < 1:
            tail_w = w / (1 - rho)
            with mpmath.workprec(64):
                tail = scale * mpf_from_rational(tail_w, 64) * (1 + mpmath.ldexp(1, -60))
            if tail <= tol:
                logger.debug(f"concise sum k={k}, alpha={a}: {i} terms, tail {mpmath.nstr(tail, 4)}")
                value = first * weights
                value = BoundedFloat(value.value, value.abs_error + tail, bits)
                return SepValue.of_numeric(value, method="concise-sum")
        weights += w
        w *= term.ratio(x)
    raise ConvergenceError(f"concise sum k={k}, alpha={a} did not reach tol={tol}")


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def q_value(k: int, alpha: RationalLike, precision_bits: int = DEFAULT_PRECISION) -> SepValue:
    """
    Q(k, alpha) by the best available route: finite sum for integer alpha,
    then the closed-form catalog, then the master formula.
    """
    a = _alpha(alpha)
    if a.denominator == 1 and a >= 0 and k >= -a - 1:
        return SepValue.of_exact(q_integer_alpha(k, int(a)), method="finite-sum")
    if a in VERIFIED_K:
        return q_closed_form(k, a, precision_bits)
    if a > 0:
        return q_master(k, a, precision_bits)
    raise UnsupportedError(f"no evaluation route for Q({k}, {a})")


def _round(value: BoundedFloat, precision_bits: int) -> BoundedFloat:
    with mpmath.workprec(precision_bits):
        rounded = +value.value
    with mpmath.workprec(precision_bits + GUARD_BITS):
        err = value.abs_error + abs(rounded - value.value)
    return BoundedFloat(rounded, err, precision_bits)
