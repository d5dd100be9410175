"""
First-order inhomogeneous recurrences p0(a) + p1(a) y(a) + p2(a) y(a+1) = 0 for the
hypergeometric factor G2 of Q(k, alpha) = G1 * G2.
"""
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.recurrences.linear_algebra import nullspace, primitive_vector
from src.recurrences.ratpoly import RatPoly, from_integers
from src.sepformulas.params import g1_factor, param_offsets
from src.sepformulas.q_formulas import q_integer_alpha
from src.utils.errors import DomainError, SingularStepError

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

DegreeShape = Tuple[int, int, int]


class RecurrenceCandidate(BaseModel):
    """p0 + p1 y(a) + p2 y(a+1) = 0 with the three polynomials jointly content-free."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    p0: RatPoly
    p1: RatPoly
    p2: RatPoly
    normalization: str = Field("content-free, p2 leading coefficient positive",
                               description="How the common scale of p0, p1, p2 was fixed")

    @model_validator(mode="after")
    def _check_nontrivial(self):
        if self.p0.is_zero() and self.p1.is_zero() and self.p2.is_zero():
            raise ValueError("a recurrence needs at least one nonzero polynomial")
        return self

    @classmethod
    def normalized(cls, p0: RatPoly, p1: RatPoly, p2: RatPoly) -> "RecurrenceCandidate":
        """Scale to coprime integer coefficients with the last nonzero coefficient (of p2 if any) positive."""
        shape = (len(p0.coeffs), len(p1.coeffs), len(p2.coeffs))
        flat = list(p0.coeffs) + list(p1.coeffs) + list(p2.coeffs)
        flat = primitive_vector(flat)
        a, b = shape[0], shape[0] + shape[1]
        return cls(p0=RatPoly(flat[:a]), p1=RatPoly(flat[a:b]), p2=RatPoly(flat[b:]))

    @property
    def shape(self) -> DegreeShape:
        return self.p0.degree, self.p1.degree, self.p2.degree

    def residual(self, alpha: int, y: Fraction, y_next: Fraction) -> Fraction:
        return self.p0(alpha) + self.p1(alpha) * y + self.p2(alpha) * y_next

    def satisfied_by(self, sequence: Sequence[Fraction], start: int = 1) -> bool:
        """True when every consecutive pair of the sequence (indexed from start) satisfies the recurrence."""
        return all(self.residual(start + i, sequence[i], sequence[i + 1]) == 0 for i in range(len(sequence) - 1))

    def to_json(self) -> Dict[str, List[str]]:
        return {"p0": self.p0.to_strings(), "p1": self.p1.to_strings(), "p2": self.p2.to_strings()}

    def __str__(self) -> str:
        return f"({self.p0}) + ({self.p1}) y(a) + ({self.p2}) y(a+1) = 0"


def eval_recurrence(rec: RecurrenceCandidate, y1: Fraction, n: int) -> List[Fraction]:
    """
    y(1) = y1, y(a+1) = -(p0(a) + p1(a) y(a)) / p2(a), for a = 1..n-1.

    Raises:
        SingularStepError: p2 vanishes at some a
    """
    values = [Fraction(y1)]
    for a in range(1, n):
        lead = rec.p2(a)
        if lead == 0:
            raise SingularStepError(a)
        values.append(-(rec.p0(a) + rec.p1(a) * values[-1]) / lead)
    return values


def _design_rows(sequence: Sequence[Fraction], shape: DegreeShape, start: int) -> List[List[Fraction]]:
    d0, d1, d2 = shape
    rows = []
    for i in range(len(sequence) - 1):
        a = Fraction(start + i)
        powers = [a ** j for j in range(max(shape) + 1)]
        y, y_next = sequence[i], sequence[i + 1]
        rows.append(powers[:d0 + 1] + [p * y for p in powers[:d1 + 1]] + [p * y_next for p in powers[:d2 + 1]])
    return rows


def _split(vector: Sequence[Fraction], shape: DegreeShape) -> RecurrenceCandidate:
    d0, d1, d2 = shape
    p0 = RatPoly(vector[:d0 + 1])
    p1 = RatPoly(vector[d0 + 1:d0 + d1 + 2])
    p2 = RatPoly(vector[d0 + d1 + 2:])
    return RecurrenceCandidate.normalized(p0, p1, p2)


def _rank_key(rec: RecurrenceCandidate) -> Tuple[int, int]:
    size = max(abs(c.numerator).bit_length() for p in (rec.p0, rec.p1, rec.p2) for c in p.coeffs)
    return sum(max(d, 0) for d in rec.shape), size


def _fit_shape(sequence: Sequence[Fraction], shape: DegreeShape, start: int) -> Optional[RecurrenceCandidate]:
    unknowns = sum(d + 1 for d in shape)
    if len(sequence) - 1 < unknowns + 1:
        raise DomainError(f"{len(sequence)} terms cannot overdetermine {unknowns} unknowns of shape {shape}")
    basis = nullspace(_design_rows(sequence, shape, start))
    candidates = []
    for vector in basis:
        rec = _split(vector, shape)
        if rec.p1.is_zero() and rec.p2.is_zero():
            continue
        if rec.satisfied_by(sequence, start):
            candidates.append(rec)
    if not candidates:
        return None
    candidates.sort(key=_rank_key)
    logger.debug(f"shape {shape}: nullspace dimension {len(basis)}, {len(candidates)} verified")
    return candidates[0]


def fit_recurrence(sequence: Sequence[Fraction], degree_bound: Union[int, DegreeShape],
                   start: int = 1) -> Optional[RecurrenceCandidate]:
    """
    Find p0, p1, p2 with p0(a) + p1(a) y(a) + p2(a) y(a+1) = 0 on every
    consecutive pair of the sequence.

    An integer bound scans common degrees d = 0..bound and returns the first
    nontrivial solution; a (d0, d1, d2) tuple fits that exact shape. Every
    returned candidate has been checked against all pairs.

    Args:
        sequence: Exact values y(start), y(start+1), ...
        degree_bound: Common maximum degree, or a per-polynomial degree shape
        start: Index of the first entry

    Returns:
        The normalized candidate, or None when no recurrence of that size exists
    """
    values = [Fraction(v) for v in sequence]
    if isinstance(degree_bound, tuple):
        shape = tuple(int(d) for d in degree_bound)
        rec = _fit_shape(values, shape, start)
        logger.info(f"Recurrence fit with shape {shape}: {'found' if rec else 'none'}")
        return rec
    for d in range(int(degree_bound) + 1):
        shape = (d, d, d)
        if len(values) - 1 < 3 * (d + 1) + 1:
            logger.info(f"Sequence too short for degree {d}; stopping scan")
            break
        rec = _fit_shape(values, shape, start)
        if rec is not None:
            logger.info(f"Recurrence found at common degree {d}")
            return rec
    logger.info(f"No recurrence with degree <= {degree_bound}")
    return None


_REFERENCE_P0: Dict[int, Tuple[int, ...]] = {
    -1: (9250, 12625, 5645, 938, 54),
    0: (185000, 779750, 1289125, 1042015, 410694, 63000),
    1: (74000, 578300, 1830820, 3013197, 2724024, 1284280, 246960),
    2: (740000, 9002000, 45576950, 125164535, 202090226, 192332891, 100092606, 22004136),
    3: (740000, 11666000, 76382750, 271168745, 566336789, 698007782, 471120306, 134548128),
    4: (296000, 5584000, 43492140, 182972656, 451645197, 656629192, 522054355, 175452420),
}


def reference_p0_irreducible(k: int) -> RatPoly:
    """The irreducible factor of the inhomogeneous polynomial for k in -1..4."""
    if k not in _REFERENCE_P0:
        raise DomainError(f"reference polynomials exist for k in -1..4, got {k}")
    return from_integers(_REFERENCE_P0[k])


def reference_p0(k: int) -> RatPoly:
    """Reference inhomogeneous factor; for k = 4 it carries the extra linear factor 4a + 9."""
    poly = reference_p0_irreducible(k)
    if k == 4:
        poly = poly * RatPoly.linear(4, 9)
    return poly


def upper_minus_one_product(k: int) -> RatPoly:
    """prod (u_ik - 1) as a polynomial in alpha."""
    offsets = param_offsets(k)
    return RatPoly.product(RatPoly.linear(1, u - 1) for u in offsets.upper)


def lower_product(k: int) -> RatPoly:
    """prod b_ik as a polynomial in alpha."""
    offsets = param_offsets(k)
    return RatPoly.product(RatPoly.linear(1, b) for b in offsets.lower)


def lower_pair_product(k: int) -> RatPoly:
    """prod b_ik (b_ik - 1) as a polynomial in alpha."""
    offsets = param_offsets(k)
    return RatPoly.product(RatPoly.linear(1, b) * RatPoly.linear(1, b - 1) for b in offsets.lower)


# Common-degree scan used when k has no reference polynomial
UNREFERENCED_SCAN_BOUND = 14


def g2_shape(k: int) -> DegreeShape:
    """Expected (deg p0, deg p1, deg p2) of the G2 recurrence for k in -1..4."""
    return 12 + reference_p0(k).degree, 6, 6


def _is_37_times_2_5(n: int) -> bool:
    n = abs(n)
    if n == 0 or n % 37:
        return False
    n //= 37
    for prime in (2, 5):
        while n % prime == 0:
            n //= prime
    return n == 1


class StructuralReport(BaseModel):
    """Outcome of comparing a fitted recurrence with the parameter-set products."""

    k: int
    p2_matches: bool = Field(..., description="p2 is a rational multiple of prod(u_ik - 1)")
    p1_matches: bool = Field(..., description="p1 is a rational multiple of prod b_ik")
    p0_factor_matches: bool = Field(..., description="p0 is a multiple of prod b_ik(b_ik - 1) times the reference polynomial")
    leading_is_37_2_5: bool = Field(..., description="Reference leading coefficient is 37 times powers of 2 and 5")
    notes: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.p2_matches and self.p1_matches and self.p0_factor_matches


def structural_check(rec: RecurrenceCandidate, k: int) -> StructuralReport:
    """Check p2 ~ prod(u-1), p1 ~ prod b, p0 ~ prod b(b-1) * reference_p0(k)."""
    reference = reference_p0(k)
    notes = []
    p2_ok = rec.p2.is_proportional_to(upper_minus_one_product(k))
    if not p2_ok:
        notes.append(f"p2 = {rec.p2} is not proportional to prod(u_ik - 1)")
    p1_ok = rec.p1.is_proportional_to(lower_product(k))
    if not p1_ok:
        notes.append(f"p1 = {rec.p1} is not proportional to prod b_ik")
    pairs = lower_pair_product(k)
    quotient, remainder = rec.p0.divmod(pairs)
    p0_ok = remainder.is_zero() and quotient.is_proportional_to(reference)
    if not p0_ok:
        notes.append("p0 does not factor as prod b_ik(b_ik - 1) times the reference polynomial")
    leading_ok = _is_37_times_2_5(int(reference_p0_irreducible(k).leading))
    report = StructuralReport(k=k, p2_matches=p2_ok, p1_matches=p1_ok, p0_factor_matches=p0_ok,
                              leading_is_37_2_5=leading_ok, notes=notes)
    logger.info(f"Structural check k={k}: {'passed' if report.passed else 'failed'}")
    return report


def g2_sequence(k: int, alpha_max: int) -> List[Fraction]:
    """G2(k, a) = Q(k, a) / G1(k, a) for a = 1..alpha_max."""
    if k < -1:
        raise DomainError(f"g2_sequence needs k >= -1, got {k}")
    if alpha_max < 3:
        raise DomainError(f"g2_sequence needs alpha_max >= 3, got {alpha_max}")
    return [q_integer_alpha(k, a) / g1_factor(k, a) for a in range(1, alpha_max + 1)]


class RecurrenceRecord(BaseModel):
    """Serialized outcome of fitting the G2 recurrence for one k."""

    k: int
    alpha_max: int
    shape: Tuple[int, int, int]
    found: bool
    p0: List[str] = Field(default_factory=list, description="Coefficients lowest degree first")
    p1: List[str] = Field(default_factory=list)
    p2: List[str] = Field(default_factory=list)
    round_trip_exact: bool = Field(False, description="Stepping from y(1) regenerates the whole sequence")
    structural: Optional[StructuralReport] = None


def fit_g2_record(k: int, alpha_max: int, degree_bound: Optional[Union[int, DegreeShape]] = None) -> RecurrenceRecord:
    """
    Fit the G2 recurrence on alpha = 1..alpha_max and check it against the parameter structure.

    Args:
        k: Induced-measure exponent in -1..4 for the structural check (any k >= -1 to fit)
        alpha_max: Last alpha of the fitted sequence
        degree_bound: Degree shape; defaults to the expected shape for k in -1..4
            and to a common-degree scan up to UNREFERENCED_SCAN_BOUND otherwise
    """
    sequence = g2_sequence(k, alpha_max)
    if degree_bound is not None:
        bound = degree_bound
    elif k in _REFERENCE_P0:
        bound = g2_shape(k)
    else:
        logger.info(f"No reference shape for k = {k}; scanning common degrees up to {UNREFERENCED_SCAN_BOUND}")
        bound = UNREFERENCED_SCAN_BOUND
    rec = fit_recurrence(sequence, bound)
    shape = bound if isinstance(bound, tuple) else (bound, bound, bound)
    if rec is None:
        return RecurrenceRecord(k=k, alpha_max=alpha_max, shape=shape, found=False)
    try:
        round_trip = eval_recurrence(rec, sequence[0], len(sequence)) == sequence
    except SingularStepError as e:
        logger.warning(f"Round trip stopped: {e}")
        round_trip = False
    structural = structural_check(rec, k) if k in _REFERENCE_P0 else None
    payload = rec.to_json()
    return RecurrenceRecord(k=k, alpha_max=alpha_max, shape=rec.shape, found=True,
                            p0=payload["p0"], p1=payload["p1"], p2=payload["p2"],
                            round_trip_exact=round_trip, structural=structural)
