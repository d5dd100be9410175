"""
Unit tests for exact gamma arithmetic and bounded floats
"""
import pytest
from fractions import Fraction

import mpmath

from src.exactnum.bounded_float import BoundedFloat, gamma_value, to_bounded_float
from src.exactnum.gamma_exact import (
    ExactReal,
    HalfInteger,
    gamma_half,
    gamma_ratio,
    is_half_integer,
    pochhammer,
    to_rational,
)
from src.utils.errors import PoleError, UnsupportedError


def test_to_rational_reads_strings_exactly():
    """Test that decimal and fraction strings become exact rationals."""
    assert to_rational("3/4") == Fraction(3, 4)
    assert to_rational("-0.25") == Fraction(-1, 4)
    assert to_rational("0.1") == Fraction(1, 10), "decimal strings must not go through binary floats"
    assert to_rational(HalfInteger.of("5/2")) == Fraction(5, 2)


def test_to_rational_refuses_floats():
    """Test that binary floats are rejected."""
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(TypeError):
        to_rational(True)


def test_half_integer():
    """Test HalfInteger construction and classification."""
    assert HalfInteger.of(Fraction(7, 2)).twice == 7
    assert HalfInteger.of(3).is_integer
    assert is_half_integer("-1/2")
    assert not is_half_integer("1/3")
    with pytest.raises(UnsupportedError):
        HalfInteger.of("1/3")


def test_pochhammer():
    """Test rising factorials, including the empty product and zero crossings."""
    assert pochhammer(3, 2) == 12
    assert pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)
    assert pochhammer(Fraction(3, 2), 2) == Fraction(15, 4)
    assert pochhammer(-2, 3) == 0
    assert pochhammer(-2, 2) == 2
    assert pochhammer(Fraction(-7, 3), 0) == 1
    with pytest.raises(ValueError):
        pochhammer(1, -1)


def test_gamma_half():
    """Test gamma at integers and half-integers."""
    assert gamma_half(5) == ExactReal(24, 0)
    assert gamma_half(Fraction(1, 2)) == ExactReal(1, 1)
    assert gamma_half(Fraction(7, 2)) == ExactReal(Fraction(15, 8), 1)
    assert gamma_half(Fraction(-1, 2)) == ExactReal(-2, 1)
    with pytest.raises(PoleError):
        gamma_half(0)


def test_gamma_ratio_rational_and_pi_powers():
    """Test gamma ratios that reduce to rationals and to rational multiples of pi."""
    assert gamma_ratio([Fraction(9, 2)], [Fraction(1, 2), 5]) == ExactReal(Fraction(35, 128), 0)
    value = gamma_ratio([Fraction(7, 2), Fraction(1, 2)], [4])
    assert value.coeff == Fraction(5, 16)
    assert value.sqrtpi_pow == 2
    assert not value.is_rational


def test_gamma_ratio_pairs_non_half_classes():
    """Test that arguments with other residues cancel in pairs."""
    assert gamma_ratio([Fraction(7, 3)], [Fraction(1, 3)]) == ExactReal(Fraction(4, 9), 0)
    with pytest.raises(UnsupportedError):
        gamma_ratio([Fraction(1, 3)], [1])


def test_gamma_ratio_matches_gamma_half_products():
    """Test the ratio against a quotient of independently computed gamma values."""
    num = [Fraction(11, 2), 4, Fraction(3, 2)]
    den = [Fraction(5, 2), 6]
    expected = gamma_half(num[0]) * gamma_half(num[1]) * gamma_half(num[2]) / (gamma_half(den[0]) * gamma_half(den[1]))
    assert gamma_ratio(num, den) == expected


def test_gamma_ratio_pole():
    """Test that nonpositive integer arguments are poles."""
    with pytest.raises(PoleError):
        gamma_ratio([0], [1])


def test_exact_real_addition_needs_matching_powers():
    """Test that only like powers of sqrt(pi) add exactly."""
    assert ExactReal(1, 1) + ExactReal(2, 1) == ExactReal(3, 1)
    assert ExactReal(1, 1) + 0 == ExactReal(1, 1)
    with pytest.raises(UnsupportedError):
        ExactReal(1, 1) + ExactReal(1, 0)
    with pytest.raises(UnsupportedError):
        ExactReal(1, 1).as_fraction()


def test_bounded_float_exact_dyadic():
    """Test that dyadic rationals round without error."""
    value = BoundedFloat.exact(Fraction(29, 128), 64)
    assert value.abs_error == 0
    assert value.value == mpmath.mpf("0.2265625")


def test_bounded_float_exact_non_dyadic():
    """Test that non-dyadic rationals carry a bound that contains them."""
    value = BoundedFloat.exact(Fraction(4, 33), 64)
    assert value.abs_error > 0
    assert value.contains(Fraction(4, 33))
    assert not value.contains(Fraction(4, 33) + Fraction(1, 10 ** 12))


def test_bounded_float_arithmetic_encloses_result():
    """Test that arithmetic propagates the enclosure."""
    a = BoundedFloat.exact(Fraction(1, 3), 80)
    b = BoundedFloat.exact(Fraction(2, 7), 80)
    assert (a + b).contains(Fraction(13, 21))
    assert (a * b).contains(Fraction(2, 21))
    assert (a / b).contains(Fraction(7, 6))
    assert (a - b).contains(Fraction(1, 21))


def test_bounded_float_subtraction_keeps_working_precision():
    """Test that subtraction and negation at 128 bits stay far below double precision."""
    a = BoundedFloat.exact(Fraction(1, 3), 128)
    b = BoundedFloat.exact(Fraction(2, 7), 128)
    diff = a - b
    assert diff.contains(Fraction(1, 21))
    assert diff.abs_error < mpmath.mpf(2) ** -120
    with mpmath.workprec(160):
        assert abs(diff.value - mpmath.mpf(1) / 21) < mpmath.mpf(2) ** -120
    assert (-a).contains(Fraction(-1, 3))
    assert (1 - a).contains(Fraction(2, 3))


def test_to_bounded_float_with_pi():
    """Test conversion of an exact value with a power of sqrt(pi)."""
    value = to_bounded_float(ExactReal(Fraction(1, 2), 2), 100)
    with mpmath.workprec(140):
        assert value.contains(mpmath.pi / 2)


def test_gamma_value():
    """Test the bounded gamma function at a non-half-integer argument."""
    value = gamma_value(Fraction(1, 3), 100)
    with mpmath.workprec(140):
        assert value.contains(mpmath.gamma(mpmath.mpf(1) / 3))
