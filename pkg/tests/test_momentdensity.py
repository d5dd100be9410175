"""
Unit tests for exact moments and the Legendre density reconstruction
"""
import pytest
from fractions import Fraction

import numpy as np

from src.momentdensity.legendre import (
    SupportInterval,
    legendre_coeffs,
    legendre_poly,
    tail_probability,
)
from src.momentdensity.moments import (
    MomentKind,
    MomentSpec,
    det_moment,
    diff_moment,
    export_moments,
    hankel_check,
    moment_sequence,
    pt_moment,
    shifted_moments,
)
from src.recurrences.ratpoly import RatPoly
from src.utils.errors import DomainError
from src.utils.output_handler import ResultWriter

F = Fraction
SUPPORT = SupportInterval()


def uniform_moments(order: int, lo: Fraction = SUPPORT.lo, hi: Fraction = SUPPORT.hi):
    """Raw moments of the uniform law on [lo, hi]."""
    return [(hi ** (n + 1) - lo ** (n + 1)) / ((n + 1) * (hi - lo)) for n in range(order + 1)]


def test_det_moment():
    """Test the determinant moments."""
    assert det_moment(0) == 1
    assert det_moment(1) == F(1, 2288)
    with pytest.raises(DomainError):
        det_moment(-1)


def test_diff_moment():
    """Test the first moment of |rho^PT| - |rho| in the real case."""
    assert diff_moment(0, 0, 1) == 1
    assert diff_moment(1, 0, 1) == F(-2, 969)
    assert diff_moment(1, 0, "1/2") < 0, "the partial transpose lowers the mean determinant"
    with pytest.raises(DomainError):
        diff_moment(-1, 0, 1)


def test_pt_moment():
    """Test the partial-transpose moments are exact rationals starting at 1."""
    assert pt_moment(0, 1) == 1
    assert isinstance(pt_moment(2, F(1, 2)), Fraction)
    with pytest.raises(DomainError):
        pt_moment(-1, 1)


def test_moment_spec():
    """Test sequence building and the k = 0 restriction on ptdet moments."""
    spec = MomentSpec(kind=MomentKind.DET, order=3)
    values = moment_sequence(spec)
    assert len(values) == 4
    assert values[1] == F(1, 2288)
    assert MomentSpec(kind="diff", k=2, alpha="1/2", order=1).alpha == F(1, 2)
    with pytest.raises(ValueError):
        MomentSpec(kind=MomentKind.PTDET, k=1, order=2)


def test_shifted_moments():
    """Test centering and scaling of uniform [0, 1] moments."""
    shifted = shifted_moments([F(1), F(1, 2), F(1, 3)], F(1, 2), F(1))
    assert shifted == [F(1), F(0), F(1, 12)]
    assert shifted_moments([F(1), F(1, 2), F(1, 3)], F(0), F(2))[2] == F(1, 12)


def test_hankel_check():
    """Test the Hankel minors on a genuine moment sequence and on a broken one."""
    report = hankel_check(uniform_moments(6), SUPPORT.lo, SUPPORT.hi)
    assert report.order == 3
    assert report.positive_semidefinite
    broken = [F(1), F(0), F(-1, 10 ** 6)]
    assert not hankel_check(broken, F(-1), F(1)).positive_semidefinite
    with pytest.raises(DomainError):
        hankel_check(uniform_moments(2), SUPPORT.lo, SUPPORT.hi, order=2)
    with pytest.raises(DomainError):
        hankel_check(uniform_moments(2), F(1), F(0))


def test_legendre_poly():
    """Test the three-term recursion."""
    assert legendre_poly(0) == RatPoly([1])
    assert legendre_poly(2) == RatPoly([F(-1, 2), 0, F(3, 2)])
    assert legendre_poly(3)(1) == 1


def test_support_interval():
    """Test the affine map and validation of the support."""
    assert SUPPORT.to_t(SUPPORT.lo) == -1
    assert SUPPORT.to_t(SUPPORT.hi) == 1
    assert SUPPORT.to_t(0) == F(15, 17)
    with pytest.raises(ValueError):
        SupportInterval(lo="1/2", hi="1/4")


def test_legendre_uniform_density():
    """Test that uniform moments give a constant density."""
    density = legendre_coeffs(uniform_moments(5), SUPPORT)
    assert density.degree == 5
    assert density.exact_coeffs[0] == F(1, 2)
    assert all(c == 0 for c in density.exact_coeffs[1:])
    assert density.total_mass() == 1
    inside = density.pdf(np.array([-0.01, 0.001]))
    assert np.allclose(inside, 256 / 17)
    assert density.pdf(0.5) == 0.0


def test_tail_probability_uniform():
    """Test the mass above zero of the uniform density."""
    density = legendre_coeffs(uniform_moments(4), SUPPORT, degree=3)
    tail = tail_probability(density, 0)
    assert tail.contains(F(1, 17))
    with pytest.raises(DomainError):
        tail_probability(density, F(1, 100))


def test_legendre_rejects_bad_input():
    """Test the degree and normalization checks."""
    with pytest.raises(DomainError):
        legendre_coeffs(uniform_moments(2), SUPPORT, degree=3)
    with pytest.raises(DomainError):
        legendre_coeffs([F(2), F(0)], SUPPORT)
    with pytest.raises(DomainError):
        legendre_coeffs([], SUPPORT)


def test_export_moments(tmp_path):
    """Test the CSV export of exact moments."""
    target = tmp_path / "moments.csv"
    path = export_moments([det_moment(n) for n in range(3)], target, ResultWriter(tmp_path))
    assert path == str(target)
    lines = target.read_text().splitlines()
    assert lines[0] == "order,numerator,denominator"
    assert lines[1] == "0,1,1"
    assert lines[2] == "1,1,2288"


# Errors attained at degree 64 on the default support are about 8.6e-3, 7.6e-3,
# 8.3e-3, 4.1e-3 and 3.0e-3 for the cases below.
@pytest.mark.slow
@pytest.mark.parametrize("kind,k,alpha,closed,tolerance", [
    (MomentKind.DIFF, 0, F(1, 2), F(29, 128), 1e-2),
    (MomentKind.DIFF, 0, F(1), F(4, 33), 1e-2),
    (MomentKind.DIFF, 1, F(1), F(45, 286), 1e-2),
    (MomentKind.DIFF, 0, F(2), F(13, 323), 5e-3),
    (MomentKind.PTDET, 0, F(1), F(8, 33), 5e-3),
])
def test_reconstruction_approaches_closed_value(kind, k, alpha, closed, tolerance):
    """Test that degree 64 beats degree 16 and lands within the attainable tolerance."""
    moments = moment_sequence(MomentSpec(kind=kind, k=k, alpha=alpha, order=64))

    errors = {}
    for degree in (16, 64):
        density = legendre_coeffs(moments, SUPPORT, degree, 128)
        errors[degree] = abs(float(tail_probability(density, 0, 128)) - float(closed))

    assert errors[64] < errors[16], errors
    assert errors[64] < tolerance, errors
