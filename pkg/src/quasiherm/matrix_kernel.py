"""Dense complex matrix engine used by every other module.

All exported operations are pure: arguments are never mutated and results
are freshly allocated complex128 arrays.  Tolerances scale with the
Frobenius norm and the dimension of the input; bare machine-epsilon
comparisons are never part of an exported contract.

Eigenvector conventions are pinned so downstream metric constructions are
deterministic across runs and platforms: columns have unit Euclidean norm
and the largest-magnitude entry of each column is rotated to be real and
positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import (
    DefectiveMatrixError,
    DimensionOverflowError,
    NoConvergenceError,
    NotHermitianError,
    NotSquareError,
)

#: Hard cap on any dimension produced by :func:`kron` (dense O(n^3) budget).
COMPOSITE_DIM_CAP = 4096

#: Largest exponent safely passed to exp() in double precision.
_EXP_MAX = 700.0

_HERMITIAN_RTOL = 1e-12


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a finite complex128 2-D array (copy)."""
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise NotSquareError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains non-finite entries")
    return a


def as_square(m) -> np.ndarray:
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise NotSquareError(f"expected a square matrix, got shape {a.shape}")
    return a


def frobenius(m) -> float:
    return float(np.linalg.norm(m))


def hermitian_defect(m: np.ndarray) -> float:
    """Frobenius norm of the anti-Hermitian part of ``m``."""
    return float(np.linalg.norm(m - m.conj().T))


def require_hermitian(m: np.ndarray, rtol: float = _HERMITIAN_RTOL) -> np.ndarray:
    """Check Hermiticity within ``rtol * ||m||_F`` and return the symmetrized matrix."""
    scale = frobenius(m)
    if hermitian_defect(m) > rtol * max(scale, np.finfo(float).tiny):
        raise NotHermitianError(
            f"Hermiticity defect {hermitian_defect(m):.3e} exceeds {rtol:.1e} * ||M||_F"
        )
    return (m + m.conj().T) / 2.0


def phase_fix(vectors: np.ndarray) -> np.ndarray:
    """Normalize columns to unit norm and rotate the largest-magnitude entry real-positive."""
    norms = np.linalg.norm(vectors, axis=0)
    if np.any(norms == 0.0):
        raise DefectiveMatrixError("zero eigenvector column")
    out = vectors / norms
    lead = np.argmax(np.abs(out), axis=0)
    phases = out[lead, np.arange(out.shape[1])]
    return out / (phases / np.abs(phases))


@dataclass(frozen=True)
class EigenPair:
    """Eigendecomposition with paired left/right vectors.

    ``left_vectors.conj().T @ right_vectors`` is the identity within
    ``1e-10 * condition_estimate``; for Hermitian input the two vector sets
    coincide and ``condition_estimate`` is 1.
    """

    values: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray
    condition_estimate: float


@dataclass(frozen=True)
class PositivityReport:
    is_positive: bool
    min_eigenvalue_estimate: float


def eig_hermitian(m) -> EigenPair:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    The input must be Hermitian within ``1e-12 * ||M||_F``; it is
    symmetrized internally before the solve.
    """
    a = require_hermitian(as_square(m))
    try:
        values, vectors = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergenceError(str(exc)) from exc
    vectors = phase_fix(vectors.astype(np.complex128))
    return EigenPair(
        values=values.astype(np.complex128),
        right_vectors=vectors,
        left_vectors=vectors.copy(),
        condition_estimate=1.0,
    )


def eig_general(m) -> EigenPair:
    """Eigendecomposition of a diagonalizable matrix with left/right pairing.

    Eigenvalues are sorted by (real, imaginary) part.  Left vectors are the
    columns of the inverse-adjoint of the right-vector matrix, so the
    biorthogonality ``L^dagger R = I`` holds by construction up to the
    conditioning of the eigenbasis.
    """
    a = as_square(m)
    try:
        values, right = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(str(exc)) from exc
    order = np.lexsort((values.imag, values.real))
    values = values[order]
    right = phase_fix(right[:, order])

    cond = float(np.linalg.cond(right))
    if not np.isfinite(cond):
        raise DefectiveMatrixError("eigenvector matrix is numerically singular")
    try:
        right_inv = np.linalg.inv(right)
    except np.linalg.LinAlgError as exc:
        raise DefectiveMatrixError(str(exc)) from exc
    left = right_inv.conj().T

    n = a.shape[0]
    biorth = float(np.linalg.norm(left.conj().T @ right - np.eye(n)))
    if biorth > 1e-10 * max(cond, 1.0):
        raise DefectiveMatrixError(
            f"biorthogonality residual {biorth:.3e} exceeds 1e-10 * cond = {1e-10 * cond:.3e}"
        )
    scale = max(frobenius(a), np.finfo(float).tiny)
    recon = float(np.linalg.norm(a @ right - right * values[None, :])) / scale
    if recon > 1e-10 * max(cond, 1.0):
        raise NoConvergenceError(
            f"eigenpair residual {recon:.3e} exceeds 1e-10 * cond = {1e-10 * cond:.3e}"
        )
    return EigenPair(values=values, right_vectors=right, left_vectors=left, condition_estimate=cond)


def expm(m) -> np.ndarray:
    """Matrix exponential.

    Hermitian input takes the eigendecomposition path and returns an exactly
    Hermitian positive-definite result; anything else goes through the
    scaling-and-squaring algorithm.  Raises ``OverflowError`` when the result
    cannot be represented in double precision.
    """
    a = as_square(m)
    scale = frobenius(a)
    if hermitian_defect(a) <= _HERMITIAN_RTOL * max(scale, np.finfo(float).tiny):
        h = (a + a.conj().T) / 2.0
        values, vectors = np.linalg.eigh(h)
        if values[-1] > _EXP_MAX:
            raise OverflowError(f"largest eigenvalue {values[-1]:.3e} overflows exp()")
        out = (vectors * np.exp(values)) @ vectors.conj().T
        return (out + out.conj().T) / 2.0
    out = sla.expm(a)
    if not np.all(np.isfinite(out)):
        raise OverflowError("matrix exponential overflowed")
    return out


def cholesky_positivity(m) -> PositivityReport:
    """Certify positive definiteness by Cholesky, with a smallest-eigenvalue estimate."""
    a = require_hermitian(as_square(m))
    try:
        np.linalg.cholesky(a)
        positive = True
    except np.linalg.LinAlgError:
        positive = False
    min_eig = float(sla.eigh(a, eigvals_only=True, subset_by_index=[0, 0])[0])
    return PositivityReport(is_positive=positive, min_eigenvalue_estimate=min_eig)


def kron(a, b, cap: int = COMPOSITE_DIM_CAP) -> np.ndarray:
    """Kronecker product with a dimension cap on the result."""
    am = as_matrix(a)
    bm = as_matrix(b)
    rows = am.shape[0] * bm.shape[0]
    cols = am.shape[1] * bm.shape[1]
    if max(rows, cols) > cap:
        raise DimensionOverflowError(
            f"kron result {rows}x{cols} exceeds the configured cap {cap}"
        )
    return np.kron(am, bm)
