from enum import Enum
from fractions import Fraction
from typing import List, Optional, Union

import mpmath
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.exactnum.bounded_float import BoundedFloat, to_bounded_float
from src.exactnum.gamma_exact import ExactReal, to_rational

DEFAULT_PRECISION = 128


class SepKind(str, Enum):
    """Which probability a value refers to."""

    Q_PARTIAL = "Q-partial"
    P_TOTAL = "P-total"
    COMPLEMENT = "complement"
    OTHER = "other"


class Flag(str, Enum):
    """Provenance and validity flags attached to values."""

    OUTSIDE_VERIFIED_RANGE = "outside-verified-range"
    OBSERVED_OVERRIDE = "observed-override"
    NUMERIC_ONLY = "numeric-only"


class SepValue(BaseModel):
    """A separability quantity, exact when possible, always with a numeric enclosure on demand."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kind: SepKind = SepKind.Q_PARTIAL
    method: str = Field(..., description="Evaluation route that produced the value")
    exact: Optional[ExactReal] = None
    numeric: Optional[BoundedFloat] = None
    flags: List[Flag] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_presence(self):
        if self.exact is None and self.numeric is None:
            raise ValueError("a SepValue needs an exact or a numeric part")
        if self.exact is not None and self.numeric is not None:
            check = to_bounded_float(self.exact, self.numeric.precision_bits)
            if not check.overlaps(self.numeric):
                raise ValueError(f"exact value {self.exact} disagrees with {self.numeric}")
        return self

    @classmethod
    def of_exact(cls, value: Union[ExactReal, Fraction, int], method: str,
                 kind: SepKind = SepKind.Q_PARTIAL, flags: Optional[List[Flag]] = None) -> "SepValue":
        exact = value if isinstance(value, ExactReal) else ExactReal(to_rational(value), 0)
        return cls(kind=kind, method=method, exact=exact, flags=flags or [])

    @classmethod
    def of_numeric(cls, value: BoundedFloat, method: str,
                   kind: SepKind = SepKind.Q_PARTIAL, flags: Optional[List[Flag]] = None) -> "SepValue":
        return cls(kind=kind, method=method, numeric=value, flags=flags or [])

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def as_fraction(self) -> Fraction:
        """The exact rational value (raises if not exact and rational)."""
        if self.exact is None:
            raise ValueError(f"{self.method} value is numeric only")
        return self.exact.as_fraction()

    def bounded(self, precision_bits: int = DEFAULT_PRECISION) -> BoundedFloat:
        if self.exact is not None:
            return to_bounded_float(self.exact, precision_bits)
        return self.numeric

    def __float__(self) -> float:
        return float(self.bounded().value)

    def display(self, digits: int = 30) -> str:
        """Exact rationals print as n/d; everything else as decimal digits."""
        if self.exact is not None and self.exact.is_rational:
            return str(self.exact.coeff)
        return mpmath.nstr(self.bounded().value, digits)

    def to_record(self, k=None, alpha=None, digits: int = 30) -> "SepValueRecord":
        bounded = self.bounded()
        return SepValueRecord(
            k=None if k is None else str(k),
            alpha=None if alpha is None else str(alpha),
            kind=self.kind,
            method=self.method,
            exact=str(self.exact) if self.exact is not None else None,
            value=mpmath.nstr(bounded.value, digits),
            abs_error=mpmath.nstr(bounded.abs_error, 5),
            flags=list(self.flags),
        )


class SepValueRecord(BaseModel):
    """Serialized form of a SepValue for JSON output."""

    k: Optional[str] = None
    alpha: Optional[str] = None
    kind: SepKind
    method: str
    exact: Optional[str] = Field(None, description="Exact value as n/d or n/d*sqrt(pi)^m")
    value: str = Field(..., description="Decimal value")
    abs_error: str = Field(..., description="Absolute error bound of the decimal value")
    flags: List[Flag] = Field(default_factory=list)


class AlphaParam(BaseModel):
    """Dyson-index-like parameter alpha (1/2 real, 1 complex, 2 quaternionic, continuous otherwise)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    value: Fraction

    @field_validator("value", mode="before")
    @classmethod
    def _coerce(cls, value):
        return to_rational(value)

    @property
    def is_integer(self) -> bool:
        return self.value.denominator == 1

    @property
    def is_half_integer(self) -> bool:
        return self.value.denominator == 2

    def __str__(self) -> str:
        return str(self.value)


class ParamOffsets(BaseModel):
    """The six upper offsets u_i - alpha and six lower offsets b_i - alpha for one k."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    k: int
    upper: List[Fraction]
    lower: List[Fraction]

    @model_validator(mode="after")
    def _check_lengths(self):
        if len(self.upper) != 6 or len(self.lower) != 6:
            raise ValueError("ParamOffsets needs six upper and six lower offsets")
        return self


class LimitClass(str, Enum):
    PLUS_INFINITY = "+inf"
    MINUS_INFINITY = "-inf"
    PLUS_ONE = "+1"
    MINUS_ONE = "-1"
    FINITE = "finite"


class LimitResult(BaseModel):
    """Outcome of a limiting-value formula: a classification, with a value when finite."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    case: str
    alpha: Fraction
    classification: LimitClass
    value: Optional[SepValue] = None


class RootWindow(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    alpha: Fraction
    k_start: Fraction
    k_end: Fraction
    count: int
    note: Optional[str] = None


class IdentityCheck(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    alpha: Fraction
    lhs: BoundedFloat
    rhs: BoundedFloat
    residual: BoundedFloat

    @property
    def holds(self) -> bool:
        """True when the two enclosures intersect."""
        return self.lhs.overlaps(self.rhs)


class BoundaryValues(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    alpha: Fraction
    k_end: Fraction
    p_boundary: ExactReal
    q_real: Fraction
    q_im: BoundedFloat
