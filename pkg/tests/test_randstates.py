"""
Unit tests for random state sampling and the Monte Carlo estimator
"""
import pytest
from fractions import Fraction
from unittest.mock import patch

import numpy as np

from src.momentdensity.moments import det_moment, diff_moment
from src.randstates.fields import ScalarField
from src.randstates.monte_carlo import (
    BlockStats,
    DegenerateBlockError,
    block_sizes,
    combine,
    mc_estimate,
    run_block,
)
from src.randstates.sampler import (
    DensityMatrix,
    block_generator,
    determinant_batch,
    determinants,
    draw_batch,
    is_quaternionic,
    partial_transpose,
    partial_transpose_batch,
    sample_state,
)
from src.utils.errors import ConvergenceError, DomainError, UnsupportedError


def bell_state() -> np.ndarray:
    """Projector on (|00> + |11>) / sqrt(2)."""
    psi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return np.outer(psi, psi)


def test_scalar_fields():
    """Test alpha, Dyson index and representation size of each field."""
    assert ScalarField.from_alpha("1/2") is ScalarField.REAL
    assert ScalarField.from_alpha(1) is ScalarField.COMPLEX
    assert ScalarField.from_alpha(2) is ScalarField.QUATERNION
    assert ScalarField.QUATERNION.dyson_beta == 4
    assert ScalarField.QUATERNION.dimension == 8
    with pytest.raises(UnsupportedError):
        ScalarField.from_alpha(Fraction(3, 2))


def test_ginibre_columns():
    """Test the Ginibre width realizing the induced measure."""
    assert ScalarField.REAL.ginibre_columns(0) == 5
    assert ScalarField.COMPLEX.ginibre_columns(0) == 4
    assert ScalarField.QUATERNION.ginibre_columns(1) == 4
    assert ScalarField.QUATERNION.ginibre_columns(0) is None


def test_bell_state_determinants():
    """Test that the Bell state has |rho^PT| = -1/16."""
    rho = DensityMatrix(matrix=bell_state(), field=ScalarField.COMPLEX)
    det_rho, det_pt = determinants(rho)
    assert det_rho == pytest.approx(0, abs=1e-15)
    assert det_pt == pytest.approx(-1 / 16)


def test_maximally_mixed_state():
    """Test that the maximally mixed state attains 1/256 for both determinants."""
    for field in ScalarField:
        d = field.dimension
        rho = DensityMatrix(matrix=np.eye(d, dtype=complex) / 4, field=field)
        det_rho, det_pt = determinants(rho)
        assert det_rho == pytest.approx(1 / 256), f"{field.value}: |rho|"
        assert det_pt == pytest.approx(1 / 256), f"{field.value}: |rho^PT|"


def test_density_matrix_validation():
    """Test shape, Hermiticity, trace and positivity checks."""
    with pytest.raises(ValueError):
        DensityMatrix(matrix=np.eye(4) / 4, field=ScalarField.QUATERNION)
    with pytest.raises(ValueError):
        DensityMatrix(matrix=np.triu(np.ones((4, 4))) / 4, field=ScalarField.REAL)
    with pytest.raises(ValueError):
        DensityMatrix(matrix=np.eye(4) / 2, field=ScalarField.REAL)
    with pytest.raises(ValueError):
        DensityMatrix(matrix=np.diag([0.5, 0.5, 0.5, -0.5]), field=ScalarField.REAL)
    pt = partial_transpose(DensityMatrix(matrix=bell_state(), field=ScalarField.REAL))
    assert pt.transposed, "a partial transpose may have negative eigenvalues"


def test_block_generator_is_deterministic():
    """Test that streams depend only on (seed, block, generation)."""
    a = block_generator(5, 3).standard_normal(4)
    b = block_generator(5, 3).standard_normal(4)
    c = block_generator(5, 4).standard_normal(4)
    d = block_generator(5, 3, generation=1).standard_normal(4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)


@pytest.mark.parametrize("field,k", [
    (ScalarField.REAL, 0),
    (ScalarField.COMPLEX, 2),
    (ScalarField.QUATERNION, 0),
    (ScalarField.QUATERNION, 1),
])
def test_draw_batch_gives_states(field, k):
    """Test that sampled matrices are unit-trace positive Hermitian states."""
    mats = draw_batch(k, field, 20, block_generator(11, 0))
    d = field.dimension
    assert mats.shape == (20, d, d)
    for m in mats:
        DensityMatrix(matrix=m, field=field)
    if field is ScalarField.QUATERNION:
        assert all(is_quaternionic(m, 1e-10) for m in mats)
        assert all(is_quaternionic(m, 1e-10) for m in partial_transpose_batch(mats, field))


def test_draw_batch_rejects_negative_k():
    """Test that k < 0 cannot be sampled."""
    with pytest.raises(DomainError):
        draw_batch(-1, ScalarField.COMPLEX, 1, block_generator(0, 0))


def test_partial_transpose_is_involution():
    """Test that applying the partial transpose twice gives the state back."""
    for field in ScalarField:
        mats = draw_batch(1, field, 5, block_generator(2, 0))
        twice = partial_transpose_batch(partial_transpose_batch(mats, field), field)
        assert np.allclose(twice, mats)


def test_determinants_in_range():
    """Test that |rho| and |rho^PT| stay inside their bounds."""
    for field in ScalarField:
        mats = draw_batch(0, field, 200, block_generator(9, 0))
        det_rho = determinant_batch(mats, field)
        det_pt = determinant_batch(partial_transpose_batch(mats, field), field)
        assert np.all(det_rho >= -1e-15)
        assert np.all(det_rho <= 1 / 256 + 1e-12)
        if field is not ScalarField.QUATERNION:
            assert np.all(det_pt <= 1 / 256 + 1e-12)
            assert np.all(det_pt >= -1 / 16 - 1e-12)


def test_sample_state():
    """Test drawing a single validated state."""
    rho = sample_state(0, ScalarField.REAL, block_generator(1, 0))
    assert rho.matrix.shape == (4, 4)
    assert not rho.transposed


def test_block_sizes():
    """Test the split of a sample count into blocks."""
    assert block_sizes(10_000, 4096) == [4096, 4096, 1808]
    assert block_sizes(8192, 4096) == [4096, 4096]


def test_combine_block_stats():
    """Test the reduction of block statistics."""
    first = BlockStats(n=2, count_q=1, count_p=2, min_pt=-0.01, max_pt=0.001, min_diff=-0.02, max_diff=0.0,
                       diff_sums=[0.0] * 6, det_sum=0.002, det_sq_sum=0.0)
    second = BlockStats(n=2, count_q=0, count_p=1, min_pt=-0.03, max_pt=0.002, min_diff=-0.01, max_diff=0.001,
                        diff_sums=[0.0] * 6, det_sum=0.002, det_sq_sum=0.0)

    result = combine([first, second], 0, ScalarField.COMPLEX, 1)

    assert result.n_samples == 4
    assert result.q_hat == 0.25
    assert result.p_hat == 0.75
    assert result.extremes == (-0.03, 0.002, -0.02, 0.001)
    assert result.det_mean == pytest.approx(0.001)


@patch('src.randstates.monte_carlo.sample_block')
def test_run_block_redraws_degenerate_block(mock_sample):
    """Test that a degenerate block is redrawn from the next generation."""
    det = np.array([0.001, 0.002])
    mock_sample.side_effect = [DegenerateBlockError("nan"), (det, det - 0.003)]

    stats, pairs = run_block(0, ScalarField.COMPLEX, 1, 0, 2, keep_pairs=True)

    assert mock_sample.call_count == 2
    assert mock_sample.call_args[0][5] == 1, "the retry should use generation 1"
    assert stats.count_q == 0
    assert pairs.shape == (2, 2)


@patch('src.randstates.monte_carlo.sample_block')
def test_mc_estimate_gives_up_on_degenerate_blocks(mock_sample):
    """Test that repeated degeneration becomes a convergence error."""
    mock_sample.side_effect = DegenerateBlockError("nan")

    with pytest.raises(ConvergenceError):
        mc_estimate(0, ScalarField.COMPLEX, 100, 1, min_samples=1)


def test_mc_estimate_argument_checks():
    """Test the sample-count and worker checks."""
    with pytest.raises(DomainError):
        mc_estimate(0, ScalarField.COMPLEX, 100, 1)
    with pytest.raises(DomainError):
        mc_estimate(0, ScalarField.COMPLEX, 100, 1, worker_count=0, min_samples=1)


def test_mc_estimate_independent_of_workers():
    """Test that the estimate depends on the seed and not on the thread count."""
    single, pairs_single = mc_estimate(0, ScalarField.COMPLEX, 10_000, 42, worker_count=1, keep_pairs=True)
    threaded, pairs_threaded = mc_estimate(0, ScalarField.COMPLEX, 10_000, 42, worker_count=3, keep_pairs=True)

    assert single == threaded
    assert np.array_equal(pairs_single, pairs_threaded)
    assert pairs_single.shape == (10_000, 2)


@pytest.mark.slow
@pytest.mark.parametrize("field,q_exact,p_exact", [
    (ScalarField.REAL, 29 / 128, 29 / 64),
    (ScalarField.COMPLEX, 4 / 33, 8 / 33),
    (ScalarField.QUATERNION, 13 / 323, None),
])
def test_mc_matches_closed_forms(field, q_exact, p_exact):
    """Test the Hilbert-Schmidt estimates against the exact probabilities."""
    result, _ = mc_estimate(0, field, 200_000, 20170101, worker_count=4)

    assert abs(result.q_hat - q_exact) < 5 * result.stderr_q, result.summary()
    # The quaternionic partial transpose convention is only pinned down through Q
    if p_exact is not None:
        assert abs(result.p_hat - p_exact) < 5 * result.stderr_p, result.summary()


@pytest.mark.slow
def test_mc_first_moments():
    """Test the sampled means against the exact first moments."""
    result, _ = mc_estimate(0, ScalarField.REAL, 200_000, 7, worker_count=4)

    assert abs(result.det_mean - float(det_moment(1))) < 5 * result.det_stderr
    diff_mean = float(diff_moment(1, 0, "1/2"))
    assert abs(result.diff_moments[0] - diff_mean) < 5 * result.diff_moment_stderr[0]
