"""
Random 4x4 density matrices from the induced measure over the real, complex
and quaternionic fields, and the two determinants compared by the
separability criteria.

Quaternionic matrices Q = A + B j (A, B complex) are stored in the 8x8
complex representation [[A, B], [-conj(B), conj(A)]].
"""
import logging
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from src.randstates.fields import ScalarField
from src.utils.errors import DomainError

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-12
N = 4


def block_generator(seed: int, block: int, generation: int = 0) -> np.random.Generator:
    """Counter-based Philox stream keyed by (seed, block, generation)."""
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(block, generation))
    return np.random.Generator(np.random.Philox(sequence))


def quaternion_rep(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Complex representation of A + B j for stacks of complex matrices."""
    top = np.concatenate([a, b], axis=-1)
    bottom = np.concatenate([-b.conj(), a.conj()], axis=-1)
    return np.concatenate([top, bottom], axis=-2)


def symplectic_form(n: int = N) -> np.ndarray:
    identity = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, identity], [-identity, zero]])


def is_quaternionic(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    """True when J conj(m) J^T equals m, i.e. m represents a quaternion matrix."""
    j = symplectic_form(m.shape[-1] // 2)
    return bool(np.allclose(j @ m.conj() @ j.T, m, atol=tol, rtol=0))


class DensityMatrix(BaseModel):
    """A two-qubit state (or its partial transpose) as a complex matrix representation."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    matrix: np.ndarray
    field: ScalarField
    transposed: bool = False

    @model_validator(mode="after")
    def _check(self):
        m = self.matrix
        d = self.field.dimension
        if m.shape != (d, d):
            raise ValueError(f"{self.field.value} states need a {d}x{d} representation, got {m.shape}")
        scale = max(float(np.abs(m).max()), 1.0)
        if not np.allclose(m, m.conj().T, atol=HERMITIAN_TOL * scale, rtol=0):
            raise ValueError("matrix is not Hermitian")
        if abs(_trace(m[None], self.field)[0] - 1) > HERMITIAN_TOL * 10:
            raise ValueError("trace is not 1")
        if self.field is ScalarField.QUATERNION and not is_quaternionic(m, HERMITIAN_TOL * scale * 10):
            raise ValueError("matrix does not commute with the symplectic structure")
        if not self.transposed and np.linalg.eigvalsh(m).min() < -HERMITIAN_TOL:
            raise ValueError("state has a negative eigenvalue")
        return self


def _trace(mats: np.ndarray, field: ScalarField) -> np.ndarray:
    # The quaternionic representation doubles every diagonal entry
    tr = np.real(np.trace(mats, axis1=-2, axis2=-1))
    return tr / 2 if field is ScalarField.QUATERNION else tr


def _gaussian(field: ScalarField, shape: Tuple[int, ...], rng: np.random.Generator) -> np.ndarray:
    if field is ScalarField.REAL:
        return rng.standard_normal(shape)
    if field is ScalarField.COMPLEX:
        return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    a = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    b = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return quaternion_rep(a, b)


def _haar_quaternion_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    # The polar factor of a quaternionic Ginibre matrix is Haar on the quaternionic unitary group
    g = _gaussian(ScalarField.QUATERNION, (n, N, N), rng)
    w, _, vh = np.linalg.svd(g)
    return w @ vh


def _laguerre_spectrum(k: int, beta: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """Eigenvalues of the beta-Laguerre ensemble with weight prod lambda^k, via the bidiagonal model."""
    a = k + 1 + beta * (N - 1) / 2
    diag_dof = 2 * a - beta * np.arange(N)
    sub_dof = beta * np.arange(N - 1, 0, -1)
    bidiag = np.zeros((n, N, N))
    idx = np.arange(N)
    bidiag[:, idx, idx] = np.sqrt(rng.chisquare(diag_dof, size=(n, N)))
    bidiag[:, idx[1:], idx[:-1]] = np.sqrt(rng.chisquare(sub_dof, size=(n, N - 1)))
    return np.linalg.eigvalsh(bidiag @ np.swapaxes(bidiag, -1, -2))


def draw_batch(k: int, field: ScalarField, n: int, rng: np.random.Generator) -> np.ndarray:
    """
    n states from the induced measure with parameter k.

    Args:
        k: Induced-measure exponent (k = 0 is Hilbert-Schmidt)
        field: Scalar field
        n: Number of states
        rng: Random stream

    Returns:
        Array (n, d, d) of unit-trace representations
    """
    if k < 0:
        raise DomainError(f"sampling needs k >= 0, got {k}")
    columns = field.ginibre_columns(k)
    if columns is not None:
        g = _gaussian(field, (n, N, columns), rng)
        mats = g @ np.swapaxes(g.conj(), -1, -2)
    else:
        spectrum = _laguerre_spectrum(k, field.dyson_beta, n, rng)
        u = _haar_quaternion_unitary(n, rng)
        doubled = np.concatenate([spectrum, spectrum], axis=-1)
        mats = (u * doubled[:, None, :]) @ np.swapaxes(u.conj(), -1, -2)
    mats = 0.5 * (mats + np.swapaxes(mats.conj(), -1, -2))
    return mats / _trace(mats, field)[:, None, None]


def _swap_axes(mats: np.ndarray, order: Tuple[int, int, int, int]) -> np.ndarray:
    lead = mats.shape[:-2]
    return np.transpose(mats.reshape(lead + (2, 2, 2, 2)), tuple(range(len(lead))) + tuple(len(lead) + o for o in order)).reshape(lead + (N, N))


def partial_transpose_batch(mats: np.ndarray, field: ScalarField) -> np.ndarray:
    """
    Partial transpose of stacked states.

    Real and complex: transpose on the second qubit. Quaternion: the dual
    convention, blockwise conjugate transpose on the second factor, which for
    a Hermitian state exchanges the off-diagonal 2x2 quaternion blocks.
    """
    if field is not ScalarField.QUATERNION:
        return _swap_axes(mats, (0, 3, 2, 1))
    a = mats[..., :N, :N]
    b = mats[..., :N, N:]
    return quaternion_rep(_swap_axes(a, (2, 1, 0, 3)), _swap_axes(b, (2, 1, 0, 3)))


def determinant_batch(mats: np.ndarray, field: ScalarField) -> np.ndarray:
    """Determinants of stacked Hermitian representations; Moore determinants for quaternions."""
    eigenvalues = np.linalg.eigvalsh(mats)
    if field is ScalarField.QUATERNION:
        # Eigenvalues come in equal pairs; keep one of each
        eigenvalues = eigenvalues[..., ::2]
    return np.prod(eigenvalues, axis=-1)


def sample_state(k: int, field: ScalarField, rng: np.random.Generator) -> DensityMatrix:
    """One state from the induced measure with parameter k."""
    return DensityMatrix(matrix=draw_batch(k, field, 1, rng)[0], field=field)


def partial_transpose(rho: DensityMatrix) -> DensityMatrix:
    pt = partial_transpose_batch(rho.matrix[None], rho.field)[0]
    return DensityMatrix(matrix=pt, field=rho.field, transposed=not rho.transposed)


def determinants(rho: DensityMatrix) -> Tuple[float, float]:
    """(|rho|, |rho^PT|)."""
    stack = np.stack([rho.matrix, partial_transpose_batch(rho.matrix[None], rho.field)[0]])
    det_rho, det_pt = determinant_batch(stack, rho.field)
    return float(det_rho), float(det_pt)
