from fractions import Fraction
from typing import Any, Annotated, Dict, List, Optional, TypedDict
import operator

from src.momentdensity.legendre import SupportInterval


class StudyState(TypedDict):
    """State for the Legendre reconstruction convergence study."""

    # Input parameters
    kind: str
    k: int
    alpha: Fraction
    support: SupportInterval
    target: Optional[float]  # closed-form value of the tail, when known
    precision_bits: int

    # Degree schedule
    degrees: List[int]
    degree_index: int
    tolerance: float

    # Working data
    moments: List[Fraction]
    history: Annotated[List[Dict[str, Any]], operator.add]  # {"degree", "tail", "error"} per reconstruction
    decision_trail: Annotated[List[str], operator.add]
    decision: str

    # Output fields
    tail_probability: Optional[float]
    converged: bool
    success: bool
    error: Optional[str]
    is_finished: bool
