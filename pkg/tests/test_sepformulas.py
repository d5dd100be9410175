"""
Unit tests for the separability probability formulas
"""
import pytest
from fractions import Fraction

import mpmath

from src.sepformulas.constants import baxter_c2, gauss_g, lemniscate_l, q_neg_one_constant, q_zero_quarter_constant
from src.sepformulas.identities import (
    ExteriorCase,
    LimitCase,
    boundary_values,
    exterior_probabilities,
    half_sum_identity_check,
    hyper2_value,
    leading_coeffs,
    limit_values,
    pq_ratio_firstpart,
    root_window,
)
from src.sepformulas.p_formulas import (
    complement_prob,
    complement_value,
    p_envelope,
    p_polynomial,
    p_polynomial_constant,
    p_total_closed,
    p_value,
)
from src.sepformulas.params import g1_factor, g1_step_ratio, h_term, m_count, param_offsets
from src.sepformulas.q_formulas import (
    q_at_neg_alpha,
    q_closed_form,
    q_concise_sum,
    q_generalized,
    q_integer_alpha,
    q_integer_alpha_numeric,
    q_master,
    q_successive_diff,
    q_value,
)
from src.sepformulas.types import Flag, LimitClass, SepKind, SepValue
from src.utils.errors import DomainError, UnsupportedError

F = Fraction


# Parameters

def test_param_offsets_upper_examples():
    """Test the upper parameter rules at k = 1 and k = 5."""
    upper_1 = set(param_offsets(1).upper)
    assert {F(11, 6), F(13, 6), F(9, 5), F(11, 5), F(12, 5), F(13, 5)} <= upper_1
    upper_5 = set(param_offsets(5).upper)
    assert {F(19, 6), F(23, 6), F(16, 5), F(17, 5), F(18, 5), F(19, 5)} <= upper_5


def test_param_offsets_lower_sum():
    """Test that the lower offsets sum to 3k + 33/2."""
    for k in range(-1, 10):
        assert sum(param_offsets(k).lower) == 3 * k + F(33, 2), f"lower offsets wrong at k={k}"


def test_g1_factor_and_step_ratio():
    """Test that G1 starts at 1 and steps by its ratio."""
    assert g1_factor(0, 1) == 1
    for a in range(1, 6):
        assert g1_factor(2, a + 1) == g1_factor(2, a) * g1_step_ratio(2, a)
    with pytest.raises(DomainError):
        g1_factor(0, 0)


def test_h_term_zero_alpha():
    """Test that every term after the first vanishes at alpha = 0."""
    assert h_term(0, 0) == 1
    assert h_term(0, 3) == 0


# Q(k, alpha)

def test_q_golden_values():
    """Test exact values of Q at the three physical alphas."""
    assert q_value(0, 1).as_fraction() == F(4, 33)
    assert q_value(1, 1).as_fraction() == F(45, 286)
    assert q_value(2, 1).as_fraction() == F(1553, 8398)
    assert q_value(3, 1).as_fraction() == F(3073, 14858)
    assert q_value(0, 2).as_fraction() == F(13, 323)
    assert q_value(3, 2).as_fraction() == F(3439, 41354)
    assert q_value(0, F(1, 2)).as_fraction() == F(29, 128)
    assert q_value(3, F(1, 2)).as_fraction() == F(84883, 262144)


def test_q_at_k_minus_one():
    """Test Q(-1, alpha) at alpha = 1/2, 1, 2."""
    assert q_value(-1, F(1, 2)).as_fraction() == F(1, 8)
    assert q_integer_alpha(-1, 1) == F(1, 14)
    assert q_integer_alpha(-1, 2) == F(11, 442)


def test_q_at_neg_alpha():
    """Test the first term of the finite sums."""
    assert q_at_neg_alpha(0).as_fraction() == F(1, 2)
    assert q_at_neg_alpha(1).as_fraction() == F(1, 14)
    numeric = q_at_neg_alpha(F(1, 3))
    assert not numeric.is_exact


def test_finite_sum_domain():
    """Test that the empty sum gives zero and lower k is refused."""
    assert q_integer_alpha(-2, 1) == 0
    with pytest.raises(DomainError):
        q_integer_alpha(-3, 1)
    with pytest.raises(DomainError):
        q_integer_alpha(0, F(1, 2))


def test_finite_sum_numeric_matches_exact():
    """Test the floating-point finite sum against the exact one."""
    for k, a in [(0, 1), (3, 4), (-1, 6), (9, 10)]:
        assert q_integer_alpha_numeric(k, a, 128).contains(q_integer_alpha(k, a)), f"mismatch at ({k}, {a})"


def test_q_monotone_in_k():
    """Test that Q increases strictly with k on the exact grid."""
    for a in (1, 2, 3):
        values = [q_integer_alpha(k, a) for k in range(-1, 10)]
        assert all(b > c for c, b in zip(values, values[1:])), f"not increasing at alpha={a}"
    values = [q_closed_form(k, F(1, 2)).as_fraction() for k in range(-1, 10)]
    assert all(b > c for c, b in zip(values, values[1:]))


def test_q_bounded_by_one_half():
    """Test 0 < Q < 1/2 over a grid."""
    for a in (F(1, 2), F(1), F(3, 2), F(2), F(3)):
        for k in range(0, 10):
            value = q_value(k, a).as_fraction()
            assert 0 < value < F(1, 2), f"Q({k}, {a}) = {value}"


def test_closed_forms_agree_with_finite_sums():
    """Test the alpha = 1 and 2 closed forms against the finite sums."""
    for k in range(-1, 10):
        assert q_closed_form(k, 1).as_fraction() == q_integer_alpha(k, 1)
        assert q_closed_form(k, 2).as_fraction() == q_integer_alpha(k, 2)


def test_closed_form_minus_half_override():
    """Test the observed value 1/2 at k = -1, 0 for alpha = -1/2."""
    value = q_closed_form(0, F(-1, 2))
    assert value.as_fraction() == F(1, 2)
    assert Flag.OBSERVED_OVERRIDE in value.flags
    assert q_closed_form(3, F(-1, 2)).flags == []


def test_closed_form_outside_verified_range():
    """Test that values beyond the verified k-range carry a flag."""
    value = q_closed_form(12, F(1, 2))
    assert Flag.OUTSIDE_VERIFIED_RANGE in value.flags
    with pytest.raises(UnsupportedError):
        q_closed_form(0, F(1, 3))


def test_quarter_alphas_numeric():
    """Test the quarter-alpha forms: verified range flags and Q(0, 1/4) against its named constant."""
    assert q_closed_form(0, F(-1, 4)).flags == []
    assert Flag.OUTSIDE_VERIFIED_RANGE in q_closed_form(-1, F(-1, 4)).flags
    generalized = q_generalized(0, F(1, 4), 128).bounded()
    assert generalized.overlaps(q_zero_quarter_constant(128))


def test_generalized_flags_other_alphas():
    """Test that the regularized form is flagged away from alpha = +-1/4."""
    value = q_generalized(0, F(1, 2), 128)
    assert Flag.OUTSIDE_VERIFIED_RANGE in value.flags
    assert not value.bounded().contains(F(29, 128))
    assert q_generalized(0, F(-1, 4), 128).flags == []


def test_successive_diff():
    """Test Q(k+1) - Q(k) against the exact finite sums."""
    assert q_successive_diff(0, 1).as_fraction() == F(31, 858)
    assert q_successive_diff(1, 1).as_fraction() == F(1553, 8398) - F(45, 286)
    for a in range(1, 5):
        for k in range(-a, 6):
            assert q_successive_diff(k, a).as_fraction() == q_integer_alpha(k + 1, a) - q_integer_alpha(k, a)


def test_master_formula():
    """Test the 6F5 master formula at an exact point and at a generic alpha."""
    assert q_master(0, 1, 96).bounded().contains(F(4, 33))
    generic = q_master(0, F(1, 3), 96)
    assert not generic.is_exact
    assert 0 < float(generic) < 0.5


def test_master_formula_at_128_bits():
    """Test the master formula enclosure at 128 bits, where the value is 1/2 minus a series."""
    value = q_master(0, 1, 128).bounded()
    assert value.contains(F(4, 33))
    with mpmath.workprec(160):
        assert abs(value.value - mpmath.mpf(4) / 33) < mpmath.mpf(2) ** -100


def test_concise_sums():
    """Test the concise sums over alpha."""
    assert abs(float(q_concise_sum(0, 1)) - 4 / 33) < 1e-15
    assert abs(float(q_concise_sum(-1, F(1, 2))) - 1 / 8) < 1e-15
    assert abs(float(q_concise_sum(3, F(1, 2))) - 84883 / 262144) < 1e-15


def test_dispatch_route():
    """Test which route q_value takes."""
    assert q_value(0, 1).method == "finite-sum"
    assert q_value(0, F(3, 2)).method == "closed-form"
    assert q_value(0, F(1, 3)).method == "master-formula"
    with pytest.raises(UnsupportedError):
        q_value(0, F(-1, 3))


# P(k, alpha)

def test_p_golden_values():
    """Test the closed total probabilities."""
    assert p_total_closed(1, 1).as_fraction() == F(61, 143)
    assert p_total_closed(0, 1).as_fraction() == F(8, 33)
    assert p_total_closed(0, F(1, 2)).as_fraction() == F(29, 64)
    assert p_total_closed(0, 2).as_fraction() == F(26, 323)
    assert p_total_closed(0, 1).kind == SepKind.P_TOTAL
    with pytest.raises(UnsupportedError):
        p_total_closed(0, F(3, 2))


def test_complement():
    """Test P - Q, including the equal split at k = 0."""
    assert complement_prob(1, 1).as_fraction() == F(7, 26)
    assert complement_prob(0, 1).as_fraction() == F(4, 33)
    for a in (F(1, 2), 1, 2):
        assert complement_prob(0, a).as_fraction() == q_value(0, a).as_fraction()


def test_envelope_and_polynomial():
    """Test P = 1 - p_alpha(k) G(k, alpha) for alpha = 1, 2."""
    assert p_envelope(0, 1).as_fraction() == F(1, 8448)
    assert p_polynomial_constant(1) == 6400
    assert p_polynomial(1)(0) == 6400
    for a in (1, 2):
        poly = p_polynomial(a)
        assert poly.degree == 4 * a - 2
        for k in range(0, 5):
            expected = 1 - poly(k) * p_envelope(k, a).as_fraction()
            assert p_total_closed(k, a).as_fraction() == expected, f"P({k}, {a}) mismatch"


def test_p_log_ratio_tends_to_16_27():
    """Test log P(k+1, 1/2) / log P(k, 1/2) near 16/27 at k = 200."""
    with mpmath.workprec(600):
        p200 = p_total_closed(200, F(1, 2)).bounded(600).value
        p201 = p_total_closed(201, F(1, 2)).bounded(600).value
        ratio = mpmath.log(p201) / mpmath.log(p200)
    assert abs(float(ratio) - 16 / 27) < 5e-3


# Identities, limits, constants

def test_half_sum_identity():
    """Test the 5F4 identity, which is exactly 1 at alpha = 0."""
    for a in (0, F(1, 4), F(1, 3), F(7, 10), 2):
        check = half_sum_identity_check(a, 128)
        assert check.holds, f"identity fails at alpha={a}"
    assert half_sum_identity_check(0, 128).lhs.contains(1)
    with pytest.raises(DomainError):
        half_sum_identity_check(F(-1, 8))


def test_half_sum_residual_below_double_precision():
    """Test that the 128-bit residual of the identity is far below double precision."""
    check = half_sum_identity_check(F(1, 3), 128)
    assert check.residual.contains(0)
    assert abs(check.residual.value) < mpmath.mpf(2) ** -100
    assert check.residual.abs_error < mpmath.mpf(2) ** -100


def test_full_sum_is_one_half():
    """Test that Q(-alpha, alpha) times the full 5F4 is 1/2."""
    for a in (F(1, 4), 1, 2):
        assert hyper2_value(a, 128).contains(F(1, 2))


def test_root_window():
    """Test the root windows at integer alpha."""
    window = root_window(1)
    assert window.k_start == -2 and window.k_end == -3 and window.count == 1
    window = root_window(2)
    assert window.k_end == -5 and window.count == 2
    assert q_integer_alpha(-3, 2) == 0
    assert root_window(F(1, 2)).count == 0


def test_boundary_values():
    """Test the values one step past the root window."""
    assert boundary_values(1).p_boundary.as_fraction() == F(5, 2)
    assert boundary_values(2).q_real == F(1, 2)
    assert boundary_values(1).q_real == F(-1, 4)


def test_limit_values():
    """Test finite and classified limits."""
    result = limit_values(1, LimitCase.P_MINUS_1_MINUS_4A)
    assert result.classification == LimitClass.FINITE
    assert result.value.as_fraction() == F(19, 4)
    assert limit_values(3, LimitCase.P_MINUS_2_MINUS_A).value.as_fraction() == 0
    assert limit_values(1, LimitCase.P_MINUS_1_MINUS_5A_2).classification == LimitClass.MINUS_INFINITY
    with pytest.raises(DomainError):
        limit_values(2, LimitCase.P_MINUS_5A_2)


def test_leading_coeffs():
    """Test the first leading-coefficient rule."""
    assert leading_coeffs(1, 1) == F(17, 2)
    assert leading_coeffs(1, 2) == F(289, 8)
    with pytest.raises(DomainError):
        leading_coeffs(8, 1)


def test_exterior_probabilities():
    """Test that the exterior probabilities are probabilities."""
    for case in ExteriorCase:
        value = exterior_probabilities(case, 96)
        assert 0 < float(value) < 1, f"{case.value} = {value}"
    assert exterior_probabilities(ExteriorCase.ABSSEP_QUBIT_NUMERIC).contains(mpmath.mpf("0.239643"))


def test_named_constants():
    """Test the named constants against mpmath."""
    with mpmath.workprec(160):
        c2 = 3 * mpmath.gamma(mpmath.mpf(1) / 3) ** 3 / (4 * mpmath.pi ** 2)
        ell = mpmath.gamma(mpmath.mpf(1) / 4) ** 2 / (2 * mpmath.sqrt(2 * mpmath.pi))
        assert baxter_c2(100).contains(c2)
        assert lemniscate_l(100).contains(ell)
        assert gauss_g(100).contains(ell / mpmath.pi)
    assert q_neg_one_constant(F(1, 4), 100).overlaps(1 - gauss_g(100))
    with pytest.raises(UnsupportedError):
        q_neg_one_constant(F(1, 5), 64)


def test_sep_value_needs_a_value():
    """Test SepValue validation and display."""
    with pytest.raises(ValueError):
        SepValue(method="none")
    value = SepValue.of_exact(F(4, 33), method="finite-sum")
    assert value.display() == "4/33"
    record = value.to_record(0, 1)
    assert record.exact == "4/33"
    assert record.k == "0"


def test_m_count():
    """Test the tabulated number of parameter multisets."""
    assert m_count(-1) == 3
    assert m_count(0) == 5
    assert m_count(9) == 10
    with pytest.raises(DomainError):
        m_count(10)


def test_pq_ratio_firstpart():
    """Test the first part of the P-to-Q difference ratio at alpha = 1."""
    assert pq_ratio_firstpart(1) == F(4576, 93)
    assert pq_ratio_firstpart(2) > 0
    with pytest.raises(DomainError):
        pq_ratio_firstpart(F(1, 2))


def test_p_value_dispatch():
    """Test the P and complement fronts against their closed forms."""
    assert p_value(0, 1).as_fraction() == F(8, 33)
    assert p_value(1, 1).as_fraction() == F(61, 143)
    assert complement_value(0, 1).as_fraction() == F(4, 33)
    with pytest.raises(UnsupportedError):
        p_value(0, 3)
