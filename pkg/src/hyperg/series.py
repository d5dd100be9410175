"""
Generalized hypergeometric series pFq(upper; lower; z) with rational parameters.

Terminating series are summed exactly. Convergent non-terminating series
are summed with exact rational terms and a rigorous tail bound:

  * geometric majorant when the term ratio is eventually bounded below 1
    (|z| < 1, or p <= q);
  * at z = 1 with p = q + 1, an asymptotic telescoping tail: a rational
    function R(j) with R(j) - r(j) R(j+1) = 1 + eps(j), eps(j) = O(j^-(d+1)),
    gives sum_{j>=J} t_j = t_J R(J) - sum_{j>=J} t_j eps(j), and the last sum
    is bounded by an integral comparison.
"""
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

import mpmath
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from src.exactnum.bounded_float import GUARD_BITS, BoundedFloat, gamma_value, mpf_from_rational
from src.exactnum.gamma_exact import to_rational
from src.recurrences.linear_algebra import solve
from src.recurrences.ratpoly import RatPoly
from src.utils.errors import ConvergenceError, DomainError, ModeError, PoleError

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

MAX_TERMS = 20000
CHECK_EVERY = 8
TELESCOPING_ORDERS = (6, 10, 16, 24, 32, 48, 64)


class HyperSeries(BaseModel):
    """Parameters of pFq(upper; lower; z)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    upper: Tuple[Fraction, ...]
    lower: Tuple[Fraction, ...]
    z: Fraction = Fraction(1)

    @field_validator("upper", "lower", mode="before")
    @classmethod
    def _coerce_params(cls, value):
        return tuple(to_rational(v) for v in value)

    @field_validator("z", mode="before")
    @classmethod
    def _coerce_z(cls, value):
        return to_rational(value)

    @model_validator(mode="after")
    def _check_lower_poles(self):
        n = self.truncation_index()
        for b in self.lower:
            if b <= 0 and b.denominator == 1:
                m = -int(b)
                if n is None or m < n:
                    raise PoleError(
                        f"lower parameter {b} vanishes before the series terminates"
                    )
        return self

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def parameter_excess(self) -> Fraction:
        """sum(lower) - sum(upper); the z = 1 series converges when p = q + 1 and this is positive."""
        return sum(self.lower, Fraction(0)) - sum(self.upper, Fraction(0))

    def truncation_index(self) -> Optional[int]:
        """Index of the last nonzero term when an upper parameter is a nonpositive integer."""
        if self.z == 0:
            return 0
        stops = [-int(a) for a in self.upper if a <= 0 and a.denominator == 1]
        return min(stops) if stops else None

    def term_ratio(self, j: int) -> Fraction:
        """t_{j+1} / t_j."""
        num = self.z
        for a in self.upper:
            num *= a + j
        den = Fraction(j + 1)
        for b in self.lower:
            den *= b + j
        return num / den

    def terms(self) -> Iterator[Fraction]:
        """Exact terms t_0, t_1, ... (stops after the truncation index if any)."""
        n = self.truncation_index()
        t = Fraction(1)
        j = 0
        while True:
            yield t
            if n is not None and j >= n:
                return
            t *= self.term_ratio(j)
            j += 1

    def __str__(self) -> str:
        up = ", ".join(str(a) for a in self.upper)
        lo = ", ".join(str(b) for b in self.lower)
        return f"{self.p}F{self.q}({up}; {lo}; {self.z})"


def pfq_exact(s: HyperSeries) -> Fraction:
    """
    Exact value of a terminating series.

    Raises:
        ModeError: the series does not terminate
    """
    if s.truncation_index() is None:
        raise ModeError(f"{s} does not terminate; use pfq_numeric")
    return sum(s.terms(), Fraction(0))


def _target(partial: mpmath.mpf, precision_bits: int) -> mpmath.mpf:
    scale = max(abs(partial), mpmath.ldexp(1, -precision_bits))
    return mpmath.ldexp(scale, -precision_bits - 2)


def pfq_numeric(s: HyperSeries, precision_bits: int) -> BoundedFloat:
    """
    Sum a convergent series with a rigorous bound on the truncation error.

    Args:
        s: Series parameters
        precision_bits: Target precision; the returned bound is about 2^-precision_bits
            relative to the value

    Returns:
        BoundedFloat enclosing the sum

    Raises:
        ConvergenceError: the series diverges, or the tail bound cannot be met
    """
    if s.truncation_index() is not None:
        return BoundedFloat.exact(pfq_exact(s), precision_bits)
    if s.p <= s.q or (s.p == s.q + 1 and abs(s.z) < 1):
        return _sum_geometric(s, precision_bits)
    if s.p == s.q + 1 and s.z == 1:
        excess = s.parameter_excess()
        if excess <= 0:
            raise ConvergenceError(f"{s} diverges: parameter excess {excess} <= 0")
        return _sum_telescoping(s, precision_bits)
    raise ConvergenceError(f"{s} is outside the supported convergence region")


def _positive_from(s: HyperSeries) -> int:
    """Smallest index from which every j + a and j + b is positive."""
    worst = max([-a for a in s.upper] + [-b for b in s.lower] + [Fraction(-1)])
    return max(1, math.floor(worst) + 1)


def _ratio_sup(s: HyperSeries, J: int) -> Fraction:
    """Upper bound for |t_{j+1}/t_j| over all j >= J (J past every parameter sign change)."""
    lowers = sorted(list(s.lower) + [Fraction(1)])
    uppers = sorted(s.upper)
    paired_lowers = lowers[len(lowers) - len(uppers):] if len(uppers) <= len(lowers) else lowers
    bound = abs(s.z)
    for a, b in zip(uppers, paired_lowers):
        bound *= max(Fraction(1), (a + J) / (b + J))
    for b in lowers[:len(lowers) - len(uppers)]:
        bound /= b + J
    return bound


def _sum_geometric(s: HyperSeries, precision_bits: int) -> BoundedFloat:
    wp = precision_bits + GUARD_BITS
    start = _positive_from(s)
    partial = mpmath.mpf(0)
    abs_sum = mpmath.mpf(0)
    t = Fraction(1)
    for j in range(MAX_TERMS):
        if j >= start and j % CHECK_EVERY == 0:
            rho = _ratio_sup(s, j)
            if rho < 1:
                with mpmath.workprec(wp):
                    tail = abs(mpf_from_rational(t, wp)) / mpf_from_rational(1 - rho, wp)
                if tail <= _target(partial, precision_bits):
                    logger.debug(f"{s}: geometric tail after {j} terms, bound {mpmath.nstr(tail, 5)}")
                    return _finish(partial, abs_sum, tail, j, precision_bits)
        with mpmath.workprec(wp):
            term = mpf_from_rational(t, wp)
            partial += term
            abs_sum += abs(term)
        t *= s.term_ratio(j)
        if t == 0:
            return _finish(partial, abs_sum, mpmath.mpf(0), j + 1, precision_bits)
    raise ConvergenceError(f"{s}: tail bound not reached within {MAX_TERMS} terms")


def _finish(partial, abs_sum, tail_bound, n_terms: int, precision_bits: int, extra=0) -> BoundedFloat:
    wp = precision_bits + GUARD_BITS
    with mpmath.workprec(wp):
        value = partial + extra
        rounding = abs_sum * mpmath.ldexp(n_terms + 4, 1 - wp)
    with mpmath.workprec(precision_bits):
        rounded = +value
    err = tail_bound + rounding + abs(rounded - value) + mpmath.ldexp(abs(rounded), -precision_bits - 8)
    return BoundedFloat(rounded, err, precision_bits)


class _TelescopingTail:
    """Asymptotic telescoping data of order d for a z = 1 series."""

    def __init__(self, s: HyperSeries, order: int):
        self.order = order
        d = order
        x = RatPoly.x()
        a_poly = RatPoly.product(RatPoly.linear(1, a) for a in s.upper)
        lower_offsets = [Fraction(1)] + list(s.lower)
        b_poly = RatPoly.product(RatPoly.linear(1, b) for b in lower_offsets)
        jp = x ** (d - 1)
        jp1 = RatPoly.linear(1, 1) ** (d - 1)
        constant = b_poly * jp * jp1
        columns = []
        for m in range(d + 1):
            columns.append(b_poly * x ** m * jp1 - a_poly * RatPoly.linear(1, 1) ** m * jp)
        top = b_poly.degree + 2 * d - 2
        rows = list(range(top, top - d - 1, -1))
        matrix = [[_coeff(col, t) for col in columns] for t in rows]
        rhs = [_coeff(constant, t) for t in rows]
        solution = solve(matrix, rhs)
        if solution is None:
            raise ConvergenceError(f"telescoping system of order {d} is singular")
        self.numerator = RatPoly(solution)
        residual = RatPoly()
        for n_m, col in zip(solution, columns):
            residual = residual + col * n_m
        self.residual = residual - constant
        self.denominator_degree = constant.degree
        # linear factors (j + c) of the denominator other than powers of j
        self.factor_offsets = lower_offsets + [Fraction(1)] * (d - 1)
        self.jb_minus_ja = b_poly - a_poly

    def R(self, J: int) -> Fraction:
        return self.numerator(J) / Fraction(J) ** (self.order - 1)

    def remainder_bound(self, J: int) -> Optional[mpmath.mpf]:
        """Bound of |sum_{j>=J} eps(j)| / |t_J| in units of |t_J|, or None if J is too small."""
        if not _positive_for_all(self.jb_minus_ja, J):
            return None
        e = self.residual
        if e.is_zero():
            return mpmath.mpf(0)
        deg_e = e.degree
        s_exp = self.denominator_degree - deg_e
        if s_exp < 2:
            return None
        K = sum(abs(c) * Fraction(J) ** (i - deg_e) for i, c in enumerate(e.coeffs))
        kappa = Fraction(1)
        for c in self.factor_offsets:
            if c < 0:
                kappa *= (J + c) / Fraction(J)
        M = K / kappa
        # sum_{j>=J} j^-s <= J^-s + J^(1-s)/(s-1)
        series = Fraction(1, J ** s_exp) + Fraction(1, (s_exp - 1) * J ** (s_exp - 1))
        with mpmath.workprec(64):
            return mpmath.mpf(M.numerator) / M.denominator * (mpmath.mpf(series.numerator) / series.denominator) * (1 + mpmath.ldexp(1, -40))


def _coeff(poly: RatPoly, i: int) -> Fraction:
    return poly.coeffs[i] if 0 <= i < len(poly.coeffs) else Fraction(0)


def _positive_for_all(poly: RatPoly, J: int) -> bool:
    """Sufficient test that poly(j) > 0 for all j >= J: all coefficients of poly(x + J) are >= 0."""
    shifted = poly.shift(J)
    return not shifted.is_zero() and shifted.leading > 0 and all(c >= 0 for c in shifted.coeffs)


@lru_cache(maxsize=256)
def _telescoping_tails(s: HyperSeries) -> Tuple[_TelescopingTail, ...]:
    tails = []
    for d in TELESCOPING_ORDERS:
        try:
            tails.append(_TelescopingTail(s, d))
        except ConvergenceError as e:
            logger.debug(f"{s}: {e}")
    return tuple(tails)


def _sum_telescoping(s: HyperSeries, precision_bits: int) -> BoundedFloat:
    wp = precision_bits + GUARD_BITS
    tails = _telescoping_tails(s)
    start = max(_positive_from(s), 2)
    partial = mpmath.mpf(0)
    abs_sum = mpmath.mpf(0)
    t = Fraction(1)
    for j in range(MAX_TERMS):
        if j >= start and j % CHECK_EVERY == 0:
            with mpmath.workprec(wp):
                t_abs = abs(mpf_from_rational(t, wp))
            target = _target(partial, precision_bits)
            for tail in tails:
                bound = tail.remainder_bound(j)
                if bound is None:
                    continue
                remainder = bound * t_abs
                if remainder <= target:
                    with mpmath.workprec(wp):
                        main = mpf_from_rational(t * tail.R(j), wp)
                    logger.debug(
                        f"{s}: telescoping order {tail.order} at J={j}, remainder {mpmath.nstr(remainder, 5)}"
                    )
                    return _finish(partial, abs_sum + abs(main), remainder, j + 1, precision_bits, extra=main)
        with mpmath.workprec(wp):
            term = mpf_from_rational(t, wp)
            partial += term
            abs_sum += abs(term)
        t *= s.term_ratio(j)
    raise ConvergenceError(f"{s}: tail bound not reached within {MAX_TERMS} terms")


def pfq_regularized(s: HyperSeries, precision_bits: int) -> BoundedFloat:
    """
    pFq divided by the product of Gamma(lower).

    Raises:
        PoleError: a lower parameter is a nonpositive integer
        DomainError: a lower parameter is negative
    """
    for b in s.lower:
        if b <= 0 and b.denominator == 1:
            raise PoleError(f"Gamma({b}) in the regularization is infinite")
        if b < 0:
            raise DomainError(f"regularized series needs positive lower parameters, got {b}")
    value = pfq_numeric(s, precision_bits + 8)
    for b in s.lower:
        value = value / gamma_value(b, precision_bits + 8)
    return BoundedFloat(value.value, value.abs_error, precision_bits) if value.precision_bits != precision_bits else value


def series(upper: List, lower: List, z=1) -> HyperSeries:
    """Shorthand constructor."""
    return HyperSeries(upper=upper, lower=lower, z=z)
