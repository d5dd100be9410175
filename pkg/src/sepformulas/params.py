"""
Parameter tables of the k-indexed recurrences and the building blocks of the finite sums.
"""
import logging
from fractions import Fraction
from typing import Dict

from src.exactnum.gamma_exact import RationalLike, pochhammer, to_rational
from src.sepformulas.types import ParamOffsets
from src.utils.cache_utils import cached
from src.utils.errors import DomainError, PoleError

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

# Number of distinct parameter multisets needed per k, k = -1..9
_M_COUNTS: Dict[int, int] = {-1: 3, 0: 5, 1: 5, 2: 6, 3: 6, 4: 7, 5: 9, 6: 8, 7: 10, 8: 10, 9: 10}

G1_BASE = Fraction(27, 64)


def param_offsets(k: int) -> ParamOffsets:
    """
    Offsets u_i - alpha and b_i - alpha of the six upper and six lower parameters for a given k.

    The upper offsets follow floor patterns of period 3 and 5 in k; the lower
    offsets are 2k/5 + {23/10, 5/2, 27/10, 29/10, 31/10} and k + 3.
    """
    f3a, f3b = k // 3, (k + 1) // 3
    f4, f3, f2, f1 = (k - 4) // 5, (k - 3) // 5, (k - 2) // 5, (k - 1) // 5
    upper = [
        Fraction(4 * f3a + 2 * f3b + 11, 6),
        Fraction(2 * f3a + 4 * f3b + 13, 6),
        Fraction(3 * f4 + 2 * f3 + 2 * f2 + 3 * f1 + 16, 5),
        Fraction(3 * f4 + 2 * f3 + f2 + 4 * f1 + 17, 5),
        Fraction(2 * f4 + 3 * f3 + f2 + 4 * f1 + 18, 5),
        Fraction(2 * f4 + 3 * f3 + f2 + 4 * f1 + 19, 5),
    ]
    two_k_fifths = Fraction(2 * k, 5)
    lower = [two_k_fifths + Fraction(c, 10) for c in (23, 25, 27, 29, 31)] + [Fraction(k + 3)]
    return ParamOffsets(k=k, upper=upper, lower=lower)


def m_count(k: int) -> int:
    """Number of distinct parameter multisets used for k in -1..9."""
    if k not in _M_COUNTS:
        raise DomainError(f"m_count is tabulated for k in -1..9, got {k}")
    return _M_COUNTS[k]


@cached()
def g1_factor(k: int, alpha: int) -> Fraction:
    """
    G1(k, alpha) = (27/64)^(alpha-1) prod (U_i)_(alpha-1) / prod (B_i)_(alpha-1),
    with U_i = u_i - alpha and B_i = b_i + 1 - alpha the alpha-free offsets.

    Args:
        k: Integer k
        alpha: Positive integer alpha

    Returns:
        Exact rational G1
    """
    if alpha < 1 or int(alpha) != alpha:
        raise DomainError(f"g1_factor needs a positive integer alpha, got {alpha}")
    offsets = param_offsets(k)
    n = int(alpha) - 1
    num = G1_BASE ** n
    den = Fraction(1)
    for u in offsets.upper:
        num *= pochhammer(u, n)
    for b in offsets.lower:
        den *= pochhammer(b + 1, n)
    if den == 0:
        raise PoleError(f"G1({k}, {alpha}) has a vanishing denominator")
    return num / den


def g1_step_ratio(k: int, alpha: int) -> Fraction:
    """G1(alpha+1) / G1(alpha) = (27/64) prod(u_i - 1) / prod(b_i) at this alpha."""
    offsets = param_offsets(k)
    num = G1_BASE
    den = Fraction(1)
    for u in offsets.upper:
        num *= alpha + u - 1
    for b in offsets.lower:
        den *= alpha + b
    return num / den


def _h_parameters(alpha: Fraction):
    a = Fraction(3, 2) * alpha
    upper = (a, alpha + Fraction(1, 2), a + Fraction(1, 2), a + Fraction(11, 8), 2 * alpha + Fraction(1, 2))
    lower = (a + Fraction(3, 8), a + Fraction(3, 4), a + Fraction(5, 4), 3 * alpha + 1)
    return upper, lower


def h_term(alpha: RationalLike, j: int) -> Fraction:
    """
    j-th term of the finite sum for Q(k, alpha):

    (3a/2)_j (a+1/2)_j (3a/2+1/2)_j (3a/2+11/8)_j (2a+1/2)_j
    / (j! (3a/2+3/8)_j (3a/2+3/4)_j (3a/2+5/4)_j (3a+1)_j)
    """
    a = to_rational(alpha)
    if j < 0:
        raise DomainError(f"h_term index must be nonnegative, got {j}")
    upper, lower = _h_parameters(a)
    den = pochhammer(1, j)
    for b in lower:
        den *= pochhammer(b, j)
    if den == 0:
        raise PoleError(f"h_term({a}, {j}): a lower Pochhammer symbol vanishes")
    num = Fraction(1)
    for u in upper:
        num *= pochhammer(u, j)
    return num / den


def h_ratio(alpha: Fraction, j: int) -> Fraction:
    """h_term(alpha, j+1) / h_term(alpha, j)."""
    upper, lower = _h_parameters(alpha)
    num = Fraction(1)
    for u in upper:
        num *= u + j
    den = Fraction(j + 1)
    for b in lower:
        den *= b + j
    if den == 0:
        raise PoleError(f"h_term({alpha}, {j + 1}): a lower Pochhammer symbol vanishes")
    return num / den


def h_parameters(alpha: RationalLike):
    """Upper and lower parameters of the 5F4 whose terms are h_term(alpha, j)."""
    return _h_parameters(to_rational(alpha))
