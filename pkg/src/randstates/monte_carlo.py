"""
Monte Carlo estimates of the separability probabilities Q and P.

Samples are drawn in fixed-size blocks, each with its own Philox stream
keyed by (seed, block), so the result does not depend on how blocks are
spread over workers.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from src.randstates.fields import ScalarField
from src.randstates.sampler import block_generator, determinant_batch, draw_batch, partial_transpose_batch
from src.utils.errors import ConvergenceError, DomainError

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

BLOCK_SIZE = 4096
MIN_SAMPLES = 10_000
MOMENT_ORDERS = 3
EXTREME_SLACK = 1e-9


class DegenerateBlockError(Exception):
    """A block produced a non-finite determinant or a vanishing trace."""


class BlockStats(BaseModel):
    """Additive statistics of one block of samples."""

    n: int
    count_q: int
    count_p: int
    min_pt: float
    max_pt: float
    min_diff: float
    max_diff: float
    diff_sums: List[float] = Field(..., description="sum diff^n and sum diff^(2n) for n = 1..3, interleaved")
    det_sum: float
    det_sq_sum: float


class MCResult(BaseModel):
    """Monte Carlo estimate of Q(k, alpha) and P(k, alpha)."""

    k: int
    field: ScalarField
    seed: int
    n_samples: int
    q_hat: float = Field(..., description="Fraction of samples with |rho^PT| > |rho|")
    p_hat: float = Field(..., description="Fraction of samples with |rho^PT| > 0")
    stderr_q: float
    stderr_p: float
    extremes: Tuple[float, float, float, float] = Field(..., description="(min ptdet, max ptdet, min diff, max diff)")
    diff_moments: List[float] = Field(..., description="Sample means of (|rho^PT| - |rho|)^n, n = 1..3")
    diff_moment_stderr: List[float]
    det_mean: float
    det_stderr: float

    def summary(self) -> str:
        return (f"Q ~ {self.q_hat:.6f} +- {self.stderr_q:.6f}, P ~ {self.p_hat:.6f} +- {self.stderr_p:.6f} "
                f"({self.n_samples} {self.field.value} samples, k={self.k}, seed={self.seed})")


def _block_stats(det_rho: np.ndarray, det_pt: np.ndarray) -> BlockStats:
    diff = det_pt - det_rho
    sums = []
    for n in range(1, MOMENT_ORDERS + 1):
        sums.append(float(np.sum(diff ** n)))
        sums.append(float(np.sum(diff ** (2 * n))))
    return BlockStats(
        n=len(diff),
        count_q=int(np.count_nonzero(det_pt > det_rho)),
        count_p=int(np.count_nonzero(det_pt > 0)),
        min_pt=float(det_pt.min()),
        max_pt=float(det_pt.max()),
        min_diff=float(diff.min()),
        max_diff=float(diff.max()),
        diff_sums=sums,
        det_sum=float(det_rho.sum()),
        det_sq_sum=float(np.sum(det_rho ** 2)),
    )


def sample_block(k: int, field: ScalarField, seed: int, block: int, size: int,
                 generation: int = 0) -> Tuple[np.ndarray, np.ndarray]:
    """(det_rho, det_pt) for one block."""
    rng = block_generator(seed, block, generation)
    mats = draw_batch(k, field, size, rng)
    det_rho = determinant_batch(mats, field)
    det_pt = determinant_batch(partial_transpose_batch(mats, field), field)
    if not (np.all(np.isfinite(det_rho)) and np.all(np.isfinite(det_pt))):
        raise DegenerateBlockError(f"block {block}: non-finite determinant")
    return det_rho, det_pt


def run_block(k: int, field: ScalarField, seed: int, block: int, size: int,
              keep_pairs: bool = False) -> Tuple[BlockStats, Optional[np.ndarray]]:
    """Sample one block, redrawing it from a fresh generation if it degenerates."""
    for attempt in Retrying(stop=stop_after_attempt(3), retry=retry_if_exception_type(DegenerateBlockError),
                            reraise=True):
        with attempt:
            generation = attempt.retry_state.attempt_number - 1
            if generation:
                logger.warning(f"Redrawing block {block} (generation {generation})")
            det_rho, det_pt = sample_block(k, field, seed, block, size, generation)
    pairs = np.column_stack([det_rho, det_pt]) if keep_pairs else None
    return _block_stats(det_rho, det_pt), pairs


def _stderr(mean: float, sq_mean: float, n: int) -> float:
    return math.sqrt(max(sq_mean - mean * mean, 0.0) / n)


def combine(stats: List[BlockStats], k: int, field: ScalarField, seed: int) -> MCResult:
    """Reduce block statistics in block order."""
    n = sum(s.n for s in stats)
    q_hat = sum(s.count_q for s in stats) / n
    p_hat = sum(s.count_p for s in stats) / n
    moments, errors = [], []
    for i in range(MOMENT_ORDERS):
        mean = sum(s.diff_sums[2 * i] for s in stats) / n
        sq_mean = sum(s.diff_sums[2 * i + 1] for s in stats) / n
        moments.append(mean)
        errors.append(_stderr(mean, sq_mean, n))
    det_mean = sum(s.det_sum for s in stats) / n
    det_sq = sum(s.det_sq_sum for s in stats) / n
    return MCResult(
        k=k, field=field, seed=seed, n_samples=n,
        q_hat=q_hat, p_hat=p_hat,
        stderr_q=math.sqrt(q_hat * (1 - q_hat) / n),
        stderr_p=math.sqrt(p_hat * (1 - p_hat) / n),
        extremes=(min(s.min_pt for s in stats), max(s.max_pt for s in stats),
                  min(s.min_diff for s in stats), max(s.max_diff for s in stats)),
        diff_moments=moments, diff_moment_stderr=errors,
        det_mean=det_mean, det_stderr=_stderr(det_mean, det_sq, n),
    )


def block_sizes(n_samples: int, block_size: int = BLOCK_SIZE) -> List[int]:
    full, rest = divmod(n_samples, block_size)
    return [block_size] * full + ([rest] if rest else [])


def mc_estimate(k: int, field: ScalarField, n_samples: int, seed: int, worker_count: int = 1,
                keep_pairs: bool = False, min_samples: int = MIN_SAMPLES) -> Tuple[MCResult, Optional[np.ndarray]]:
    """
    Estimate Q(k, alpha) and P(k, alpha) by sampling.

    Args:
        k: Induced-measure exponent
        field: Scalar field (alpha = 1/2, 1, 2)
        n_samples: Number of states
        seed: Root seed
        worker_count: Threads used for blocks; the result does not depend on it
        keep_pairs: Also return the (det_rho, det_pt) pairs
        min_samples: Smallest accepted sample count

    Returns:
        (result, pairs or None)
    """
    if n_samples < min_samples:
        raise DomainError(f"n_samples must be at least {min_samples}, got {n_samples}")
    if worker_count < 1:
        raise DomainError(f"worker_count must be positive, got {worker_count}")
    sizes = block_sizes(n_samples)
    logger.info(f"Sampling {n_samples} {field.value} states (k={k}) in {len(sizes)} blocks "
                f"on {worker_count} worker(s)")

    def task(block: int):
        return run_block(k, field, seed, block, sizes[block], keep_pairs)

    try:
        if worker_count == 1:
            outputs = [task(b) for b in range(len(sizes))]
        else:
            with ThreadPoolExecutor(max_workers=worker_count) as executor:
                outputs = list(executor.map(task, range(len(sizes))))
    except DegenerateBlockError as e:
        raise ConvergenceError(f"sampling kept degenerating: {e}") from e

    stats = [o[0] for o in outputs]
    result = combine(stats, k, field, seed)
    lo, hi, _, _ = result.extremes
    if lo < -1 / 16 - EXTREME_SLACK or hi > 1 / 256 + EXTREME_SLACK:
        logger.warning(f"Partial-transpose determinant outside [-1/16, 1/256]: {lo}, {hi}")
    logger.info(result.summary())
    pairs = np.concatenate([o[1] for o in outputs]) if keep_pairs else None
    return result, pairs
