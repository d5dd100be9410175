"""
Scalar fields of the two-qubit state spaces and their random-matrix parameters.
"""
from enum import Enum
from fractions import Fraction
from typing import Optional

from src.exactnum.gamma_exact import RationalLike, to_rational
from src.utils.errors import UnsupportedError


class ScalarField(str, Enum):
    REAL = "real"
    COMPLEX = "complex"
    QUATERNION = "quaternion"

    @property
    def dyson_beta(self) -> int:
        return {"real": 1, "complex": 2, "quaternion": 4}[self.value]

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.dyson_beta, 2)

    @property
    def dimension(self) -> int:
        """Size of the complex matrix representing a 4x4 state (8 for quaternions)."""
        return 8 if self is ScalarField.QUATERNION else 4

    @classmethod
    def from_alpha(cls, alpha: RationalLike) -> "ScalarField":
        a = to_rational(alpha)
        for field in cls:
            if field.alpha == a:
                return field
        raise UnsupportedError(f"no sampled field has alpha={a}; use 1/2, 1 or 2")

    def ginibre_columns(self, k: int) -> Optional[int]:
        """
        K with 4 x K Ginibre draws realizing the induced measure of parameter k.

        K = (k + 1) / alpha + 3; None when that is not an integer.
        """
        columns = Fraction(k + 1) / self.alpha + 3
        return int(columns) if columns.denominator == 1 else None
