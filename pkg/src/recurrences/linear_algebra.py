"""
Exact linear algebra over Q using fraction-free (Bareiss) elimination.
"""
import logging
import math
from fractions import Fraction
from functools import reduce
from typing import List, Optional, Sequence, Tuple

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

Matrix = List[List[Fraction]]


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def integer_rows(matrix: Sequence[Sequence[Fraction]]) -> List[List[int]]:
    """Scale every row by the lcm of its denominators and divide out its content."""
    rows = []
    for row in matrix:
        lcm = reduce(_lcm, (Fraction(v).denominator for v in row), 1)
        ints = [int(Fraction(v) * lcm) for v in row]
        g = reduce(math.gcd, ints, 0)
        rows.append([v // g for v in ints] if g > 1 else ints)
    return rows


def bareiss_echelon(rows: List[List[int]]) -> Tuple[List[List[int]], List[int]]:
    """
    Fraction-free row echelon form.

    Entries stay integers: after each pivot step every updated entry is a
    minor of the original matrix, so the division by the previous pivot is exact.

    Args:
        rows: Integer matrix, modified in place

    Returns:
        (echelon rows, pivot column per nonzero row)
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    prev = 1
    r = 0
    pivots: List[int] = []
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pivot_row = rows[r]
        piv = pivot_row[c]
        for i in range(r + 1, m):
            row = rows[i]
            lead = row[c]
            for j in range(c + 1, n):
                row[j] = (piv * row[j] - lead * pivot_row[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def nullspace(matrix: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """
    Basis of the right nullspace, one primitive integer vector per free column.

    Args:
        matrix: Rational matrix (list of rows)

    Returns:
        List of basis vectors (possibly empty)
    """
    if not matrix:
        return []
    n = len(matrix[0])
    echelon, pivots = bareiss_echelon(integer_rows(matrix))
    free = [c for c in range(n) if c not in set(pivots)]
    logger.debug(f"Nullspace: {len(matrix)}x{n} matrix, rank {len(pivots)}, {len(free)} free columns")
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            row = echelon[r]
            s = sum((row[j] * x[j] for j in range(c + 1, n) if x[j]), Fraction(0))
            x[c] = -s / row[c]
        basis.append(primitive_vector(x))
    return basis


def primitive_vector(vector: Sequence[Fraction]) -> List[Fraction]:
    """Scale to coprime integers with the last nonzero entry positive."""
    lcm = reduce(_lcm, (v.denominator for v in vector), 1)
    ints = [int(v * lcm) for v in vector]
    g = reduce(math.gcd, ints, 0) or 1
    last = next((v for v in reversed(ints) if v != 0), 1)
    sign = 1 if last > 0 else -1
    return [Fraction(sign * v // g) for v in ints]


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """
    Solve a square system exactly.

    Returns:
        The unique solution, or None when the matrix is singular
    """
    n = len(matrix)
    augmented = [list(row) + [-Fraction(b)] for row, b in zip(matrix, rhs)]
    # Solutions of A x - b = 0 are nullspace vectors of [A | -b] with last entry 1
    basis = nullspace(augmented)
    candidates = [v for v in basis if v[n] != 0]
    if len(basis) != 1 or not candidates:
        return None
    v = candidates[0]
    return [c / v[n] for c in v[:n]]


def determinant(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a square rational matrix by Gaussian elimination with row swaps."""
    rows = [[Fraction(v) for v in row] for row in matrix]
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        pivot_row = rows[c]
        piv = pivot_row[c]
        det *= piv
        for i in range(c + 1, n):
            f = rows[i][c] / piv
            if f:
                row = rows[i]
                for j in range(c, n):
                    row[j] -= f * pivot_row[j]
    return det
