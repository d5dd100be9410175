"""
Legendre-polynomial density approximation from a finite moment sequence.

The support [lo, hi] is mapped onto t in [-1, 1]. The density of t is
approximated by sum_j lambda_j P_j(t) with lambda_j = (2j+1)/2 E[P_j(t)];
the expectations are exact linear combinations of the raw moments.
"""
import logging
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np
from numpy.polynomial import legendre as npleg
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.exactnum.bounded_float import BoundedFloat
from src.exactnum.gamma_exact import RationalLike, to_rational
from src.momentdensity.moments import shifted_moments
from src.recurrences.ratpoly import RatPoly
from src.sepformulas.types import DEFAULT_PRECISION
from src.utils.errors import DomainError

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class SupportInterval(BaseModel):
    """Compact support [lo, hi] of a moment-determined variable."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    lo: Fraction = Field(Fraction(-1, 16), description="Lower end; |rho^PT| >= -1/16 for 4x4 states")
    hi: Fraction = Field(Fraction(1, 256), description="Upper end; the maximally mixed state gives 1/256")

    @field_validator("lo", "hi", mode="before")
    @classmethod
    def _coerce(cls, value):
        return to_rational(value)

    @model_validator(mode="after")
    def _check_order(self):
        if not self.lo < self.hi:
            raise ValueError(f"support needs lo < hi, got [{self.lo}, {self.hi}]")
        return self

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def to_t(self, x: RationalLike) -> Fraction:
        """Affine map of [lo, hi] onto [-1, 1]."""
        return (2 * to_rational(x) - self.lo - self.hi) / self.width

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def legendre_poly(j: int) -> RatPoly:
    """P_j(t) with exact coefficients, by (j+1) P_{j+1} = (2j+1) t P_j - j P_{j-1}."""
    return _legendre_table(j)[j]


_TABLE: List[RatPoly] = [RatPoly.constant(1), RatPoly.x()]


def _legendre_table(j: int) -> List[RatPoly]:
    while len(_TABLE) <= j:
        n = len(_TABLE) - 1
        _TABLE.append((RatPoly.x() * _TABLE[n] * (2 * n + 1) - _TABLE[n - 1] * n) * Fraction(1, n + 1))
    return _TABLE


class DensityApprox(BaseModel):
    """f(t) = sum_j lambda_j P_j(t) on the support mapped to [-1, 1]."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    support: SupportInterval
    degree: int = Field(..., ge=0)
    exact_coeffs: List[Fraction] = Field(..., description="lambda_j as exact rationals")
    legendre_coeffs: List[BoundedFloat] = Field(..., description="lambda_j rounded to the working precision")

    @model_validator(mode="after")
    def _check_lengths(self):
        if len(self.exact_coeffs) != self.degree + 1 or len(self.legendre_coeffs) != self.degree + 1:
            raise ValueError("DensityApprox needs degree + 1 coefficients")
        return self

    def pdf(self, x) -> np.ndarray:
        """Density in x (per unit of x) at one point or an array of points; zero outside the support."""
        xs = np.asarray(x, dtype=float)
        lo, hi = float(self.support.lo), float(self.support.hi)
        t = (2 * xs - lo - hi) / (hi - lo)
        coeffs = np.array([float(c) for c in self.exact_coeffs])
        values = npleg.legval(t, coeffs) * 2 / (hi - lo)
        return np.where((xs >= lo) & (xs <= hi), values, 0.0)

    def total_mass(self) -> Fraction:
        """Integral of the approximation over the support; equals 2 lambda_0."""
        return 2 * self.exact_coeffs[0]


def t_moments(moments: Sequence[Fraction], support: SupportInterval) -> List[Fraction]:
    """E[t^m] for t = (2X - lo - hi) / (hi - lo)."""
    center = (support.lo + support.hi) / 2
    return shifted_moments(moments, center, support.width / 2)


def legendre_coeffs(moments: Sequence[RationalLike], support: Optional[SupportInterval] = None,
                    degree: Optional[int] = None,
                    precision_bits: int = DEFAULT_PRECISION) -> DensityApprox:
    """
    Legendre coefficients of the density whose raw moments are given.

    Args:
        moments: E[X^0], E[X^1], ... with E[X^0] = 1
        support: Support of X; defaults to [-1/16, 1/256]
        degree: Highest Legendre degree; defaults to len(moments) - 1
        precision_bits: Precision of the rounded coefficients

    Returns:
        The density approximation

    Raises:
        DomainError: degree exceeds the available moments or moments[0] != 1
    """
    support = support or SupportInterval()
    values = [to_rational(m) for m in moments]
    if not values:
        raise DomainError("legendre_coeffs needs at least the zeroth moment")
    if degree is None:
        degree = len(values) - 1
    if degree < 0 or degree > len(values) - 1:
        raise DomainError(f"degree {degree} needs {degree + 1} moments, got {len(values)}")
    if values[0] != 1:
        raise DomainError(f"zeroth moment must be 1, got {values[0]}")
    mt = t_moments(values[:degree + 1], support)
    exact = []
    for j, poly in enumerate(_legendre_table(degree)[:degree + 1]):
        expectation = sum((c * mt[i] for i, c in enumerate(poly.coeffs)), Fraction(0))
        exact.append(Fraction(2 * j + 1, 2) * expectation)
    rounded = [BoundedFloat.exact(c, precision_bits) for c in exact]
    logger.info(f"Legendre reconstruction of degree {degree} on {support}")
    return DensityApprox(support=support, degree=degree, exact_coeffs=exact, legendre_coeffs=rounded)


def tail_probability(d: DensityApprox, threshold: RationalLike = 0,
                     precision_bits: int = DEFAULT_PRECISION) -> BoundedFloat:
    """
    Mass of the approximation above the threshold.

    int_tau^1 P_0 = 1 - tau and, for j >= 1,
    int_tau^1 P_j = (P_{j-1}(tau) - P_{j+1}(tau)) / (2j+1).
    The sum is exact; the bound covers only the final rounding, not the
    truncation of the Legendre series.

    Raises:
        DomainError: threshold outside the support
    """
    x = to_rational(threshold)
    if not d.support.lo <= x <= d.support.hi:
        raise DomainError(f"threshold {x} outside support {d.support}")
    tau = d.support.to_t(x)
    table = _legendre_table(d.degree + 1)
    at_tau = [p(tau) for p in table[:d.degree + 2]]
    total = d.exact_coeffs[0] * (1 - tau)
    for j in range(1, d.degree + 1):
        total += d.exact_coeffs[j] * (at_tau[j - 1] - at_tau[j + 1]) / (2 * j + 1)
    logger.debug(f"Tail above {x}: {float(total)}")
    return BoundedFloat.exact(total, precision_bits)
