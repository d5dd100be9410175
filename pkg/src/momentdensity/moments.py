"""
Exact moments of the determinantal random variables |rho|, |rho^PT| - |rho| and |rho^PT|.

Every moment is a finite combination of Pochhammer symbols and a terminating
hypergeometric sum, so all values are exact rationals.
"""
import logging
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.exactnum.gamma_exact import RationalLike, pochhammer, to_rational
from src.hyperg.series import pfq_exact, series
from src.recurrences.linear_algebra import determinant
from src.utils.cache_utils import cached
from src.utils.errors import DomainError, PoleError
from src.utils.output_handler import PathLike, ResultWriter

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


class MomentKind(str, Enum):
    DIFF = "diff"
    PTDET = "ptdet"
    DET = "det"


class MomentSpec(BaseModel):
    """Which moment sequence to build and how far."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kind: MomentKind = Field(..., description="diff: |rho^PT| - |rho| under the induced measure; ptdet: |rho^PT|; det: |rho|")
    k: int = Field(0, ge=0, description="Induced-measure exponent")
    alpha: Fraction = Field(Fraction(1), description="Random-matrix parameter")
    order: int = Field(..., ge=0, description="Highest moment order (inclusive)")

    @field_validator("alpha", mode="before")
    @classmethod
    def _coerce_alpha(cls, value):
        return to_rational(value)

    @model_validator(mode="after")
    def _check_k(self):
        if self.kind == MomentKind.PTDET and self.k != 0:
            raise ValueError("ptdet moments are defined for k = 0 only")
        return self


def _nonzero(value: Fraction, what: str) -> Fraction:
    if value == 0:
        raise PoleError(f"{what} vanishes")
    return value


@cached()
def _det_moment(k: int) -> Fraction:
    num = pochhammer(1, k) * pochhammer(Fraction(3, 2), k) * pochhammer(2, k) * pochhammer(Fraction(5, 2), k)
    return num / pochhammer(10, 4 * k)


def det_moment(k: int) -> Fraction:
    """
    <|rho|^k> = (1)_k (3/2)_k (2)_k (5/2)_k / (10)_{4k}.

    Args:
        k: Nonnegative order

    Returns:
        Exact moment
    """
    if k < 0:
        raise DomainError(f"det_moment needs k >= 0, got {k}")
    return _det_moment(int(k))


@cached()
def _diff_moment(n: int, k: int, a: Fraction) -> Fraction:
    if n == 0:
        return Fraction(1)
    lead = n + 2 * k + 2 + 5 * a
    num = (-1) ** n * pochhammer(a, n) * pochhammer(a + HALF, n) * pochhammer(lead, n)
    den = (Fraction(2) ** (4 * n)
           * _nonzero(pochhammer(k + 3 * a + Fraction(3, 2), n), "(k+3a+3/2)_n")
           * _nonzero(pochhammer(2 * k + 6 * a + Fraction(5, 2), 2 * n), "(2k+6a+5/2)_2n"))
    hyper = series(
        [Fraction(-n, 2), Fraction(1 - n, 2), k + 1 + a, k + 1 + 2 * a],
        [1 - n - a, HALF - n - a, lead],
    )
    return num / den * pfq_exact(hyper)


def diff_moment(n: int, k: int, alpha: RationalLike) -> Fraction:
    """
    n-th moment of |rho^PT| - |rho| under the measure weighted by |rho|^k.

    The hypergeometric factor terminates through its upper parameters
    -n/2 and (1-n)/2.

    Args:
        n: Moment order
        k: Induced-measure exponent
        alpha: Random-matrix parameter

    Returns:
        Exact moment

    Raises:
        PoleError: a Pochhammer denominator vanishes
    """
    if n < 0 or k < 0:
        raise DomainError(f"diff_moment needs n, k >= 0, got n={n}, k={k}")
    return _diff_moment(int(n), int(k), to_rational(alpha))


@cached()
def _pt_moment(n: int, a: Fraction) -> Fraction:
    if n == 0:
        return Fraction(1)
    shared = (_nonzero(pochhammer(3 * a + Fraction(3, 2), n), "(3a+3/2)_n")
              * _nonzero(pochhammer(6 * a + Fraction(5, 2), 2 * n), "(6a+5/2)_2n"))
    first = (pochhammer(1, n) * pochhammer(a + 1, n) * pochhammer(2 * a + 1, n)
             / (Fraction(2) ** (6 * n) * shared))
    second = (pochhammer(-2 * n - 1 - 5 * a, n) * pochhammer(a, n) * pochhammer(a + HALF, n)
              / (Fraction(2) ** (4 * n) * shared))
    hyper = series(
        [Fraction(2 - n, 2), Fraction(1 - n, 2), -n, a + 1, 2 * a + 1],
        [1 - n, n + 2 + 5 * a, 1 - n - a, HALF - n - a],
    )
    return first + second * pfq_exact(hyper)


def pt_moment(n: int, alpha: RationalLike) -> Fraction:
    """
    <|rho^PT|^n> under the Hilbert-Schmidt-type measure (no |rho|^k weight).

    A two-term sum whose second term carries a 5F4 terminating through -n.
    The zeroth moment is 1.

    Raises:
        PoleError: a Pochhammer denominator vanishes
    """
    if n < 0:
        raise DomainError(f"pt_moment needs n >= 0, got {n}")
    return _pt_moment(int(n), to_rational(alpha))


def moment_sequence(spec: MomentSpec) -> List[Fraction]:
    """Moments of orders 0..spec.order inclusive."""
    if spec.kind == MomentKind.DIFF:
        values = [diff_moment(n, spec.k, spec.alpha) for n in range(spec.order + 1)]
    elif spec.kind == MomentKind.PTDET:
        values = [pt_moment(n, spec.alpha) for n in range(spec.order + 1)]
    else:
        values = [det_moment(n) for n in range(spec.order + 1)]
    logger.info(f"Computed {len(values)} {spec.kind.value} moments (k={spec.k}, alpha={spec.alpha})")
    return values


def shifted_moments(moments: Sequence[Fraction], shift: Fraction, scale: Fraction) -> List[Fraction]:
    """
    Moments of (X - shift) / scale from the raw moments of X.

    E[((X - s)/h)^m] = h^-m sum_i C(m, i) (-s)^(m-i) E[X^i]
    """
    out = []
    binom = [Fraction(1)]
    for m in range(len(moments)):
        if m > 0:
            binom = [Fraction(1)] + [binom[i - 1] + binom[i] for i in range(1, m)] + [Fraction(1)]
        total = sum((binom[i] * (-shift) ** (m - i) * moments[i] for i in range(m + 1)), Fraction(0))
        out.append(total / scale ** m)
    return out


class HankelReport(BaseModel):
    """Leading principal minors of the Hankel matrix of the rescaled moments."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    order: int
    minors: List[Fraction]

    @property
    def positive_semidefinite(self) -> bool:
        return all(m >= 0 for m in self.minors)


def hankel_check(moments: Sequence[Fraction], lo: Fraction, hi: Fraction,
                 order: Optional[int] = None) -> HankelReport:
    """
    Exact Hausdorff plausibility check on [lo, hi].

    The variable is mapped to [0, 1] and the leading principal minors of
    the Hankel matrix (E[s^(i+j)]), i, j = 0..order, are computed exactly.

    Args:
        moments: Raw moments E[X^0], E[X^1], ...
        lo: Lower end of the support
        hi: Upper end of the support
        order: Largest Hankel index; defaults to the largest the moments allow

    Returns:
        The minors, smallest first
    """
    lo, hi = to_rational(lo), to_rational(hi)
    if not lo < hi:
        raise DomainError(f"support needs lo < hi, got [{lo}, {hi}]")
    available = (len(moments) - 1) // 2
    if order is None:
        order = available
    if order > available:
        raise DomainError(f"Hankel order {order} needs {2 * order + 1} moments, got {len(moments)}")
    s = shifted_moments([Fraction(m) for m in moments[:2 * order + 1]], lo, hi - lo)
    minors = []
    for size in range(1, order + 2):
        matrix = [[s[i + j] for j in range(size)] for i in range(size)]
        minors.append(determinant(matrix))
    report = HankelReport(order=order, minors=minors)
    logger.info(f"Hankel check to order {order}: {'PSD' if report.positive_semidefinite else 'not PSD'}")
    return report


def export_moments(moments: Sequence[Fraction], path: Optional[PathLike] = None,
                   writer: Optional[ResultWriter] = None) -> str:
    """Write (order, numerator, denominator) rows as CSV and return the path."""
    writer = writer or ResultWriter()
    target = writer.resolve(path, "moments", ".csv")
    rows = [(n, Fraction(m).numerator, Fraction(m).denominator) for n, m in enumerate(moments)]
    return str(writer.write_csv(["order", "numerator", "denominator"], rows, target))
