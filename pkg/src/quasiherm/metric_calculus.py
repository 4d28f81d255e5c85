"""Positive metric machinery for quasi-Hermitian operators.

A quasi-Hermitian operator A satisfies A^dagger eta = eta A for a positive
invertible metric eta; it is Hermitian in the eta-weighted inner product
<phi, psi>_eta = <phi, eta psi>.  This module provides the weighted inner
product, the eta-adjoint, the intertwining residual functional, the
brute-force metric construction eta = (S S^dagger)^{-1} from an
eigendecomposition (the oracle every closed-form metric is tested against),
and the similarity transform to the Hermitian counterpart h = rho A rho^{-1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .errors import (
    ComplexSpectrumError,
    DimensionMismatchError,
    InvalidParamsError,
    MissingRhoError,
    NotPositiveDefiniteError,
)
from .fock_algebra import default_interior_margin
from .matrix_kernel import as_square, eig_general, frobenius, require_hermitian

_TINY = np.finfo(float).tiny

#: Reality tolerance on the spectrum before the oracle refuses to build a metric.
SPECTRUM_REALITY_RTOL = 1e-8


@dataclass(frozen=True)
class MetricOperator:
    """Hermitian positive-definite metric with cached Cholesky factor and inverse."""

    matrix: np.ndarray
    cholesky_factor: np.ndarray
    inverse: np.ndarray

    @classmethod
    def from_matrix(cls, m) -> "MetricOperator":
        """Validate Hermiticity and positivity, then cache the factorization."""
        a = require_hermitian(as_square(m))
        try:
            lower = np.linalg.cholesky(a)
        except np.linalg.LinAlgError as exc:
            raise NotPositiveDefiniteError(
                "metric is not numerically positive definite"
            ) from exc
        inv = sla.cho_solve((lower, True), np.eye(a.shape[0], dtype=np.complex128))
        inv = (inv + inv.conj().T) / 2.0
        return cls(matrix=a, cholesky_factor=lower, inverse=inv)

    @classmethod
    def identity(cls, dim: int) -> "MetricOperator":
        eye = np.eye(dim, dtype=np.complex128)
        return cls(matrix=eye, cholesky_factor=eye.copy(), inverse=eye.copy())

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _eta_matrix(eta) -> np.ndarray:
    """Accept a MetricOperator or a plain Hermitian array."""
    return eta.matrix if isinstance(eta, MetricOperator) else as_square(eta)


@dataclass(frozen=True)
class ResidualReport:
    """Relative intertwining residuals over the full matrix and its interior block."""

    full_residual: float
    interior_residual: float
    margin: int


def intertwining_defect(operator: np.ndarray, eta) -> np.ndarray:
    """The matrix A^dagger eta - eta A (zero iff A is quasi-Hermitian w.r.t. eta)."""
    a = as_square(operator)
    e = _eta_matrix(eta)
    if a.shape != e.shape:
        raise DimensionMismatchError(f"operator {a.shape} vs metric {e.shape}")
    return a.conj().T @ e - e @ a


def check_quasi_hermitian(operator, eta, margin: int | None = None) -> ResidualReport:
    """Relative residual of A^dagger eta = eta A, full and interior.

    Both residuals are normalized by ||A||_F * ||eta||_F; the interior one
    discards ``margin`` rows and columns on each side (default
    :func:`default_interior_margin`).
    """
    a = as_square(operator)
    defect = intertwining_defect(a, eta)
    n = a.shape[0]
    k = default_interior_margin(n) if margin is None else margin
    if not 0 <= 2 * k < n:
        raise InvalidParamsError(f"margin {k} out of range for dimension {n}")
    denom = max(frobenius(a) * frobenius(_eta_matrix(eta)), _TINY)
    full = frobenius(defect) / denom
    interior = frobenius(defect[k : n - k, k : n - k]) / denom
    return ResidualReport(full_residual=full, interior_residual=interior, margin=k)


@dataclass(frozen=True)
class QuasiHermitianSystem:
    """A pair (A, eta), optionally with a positive root rho of eta.

    The intertwining residual is recomputed on construction; when rho is
    supplied it must square to eta within 1e-10 * ||eta||_F.
    """

    operator: np.ndarray
    eta: MetricOperator
    rho: np.ndarray | None = None
    intertwining_residual: float = field(init=False, default=0.0)

    def __post_init__(self):
        a = as_square(self.operator)
        if a.shape != self.eta.matrix.shape:
            raise DimensionMismatchError(
                f"operator {a.shape} vs metric {self.eta.matrix.shape}"
            )
        if self.rho is not None:
            r = as_square(self.rho)
            if r.shape != a.shape:
                raise DimensionMismatchError(f"rho {r.shape} vs operator {a.shape}")
            gap = frobenius(r @ r - self.eta.matrix)
            if gap > 1e-10 * max(frobenius(self.eta.matrix), _TINY):
                raise InvalidParamsError(
                    f"rho^2 deviates from eta by {gap:.3e} (relative tolerance 1e-10)"
                )
        report = check_quasi_hermitian(a, self.eta)
        object.__setattr__(self, "intertwining_residual", report.full_residual)

    @property
    def dim(self) -> int:
        return self.eta.dim


def eta_inner(eta, phi, psi) -> complex:
    """<phi, psi>_eta = <phi, eta psi>, conjugate-linear in the first slot."""
    e = _eta_matrix(eta)
    phi = np.asarray(phi, dtype=np.complex128)
    psi = np.asarray(psi, dtype=np.complex128)
    if phi.shape != (e.shape[0],) or psi.shape != (e.shape[0],):
        raise DimensionMismatchError(
            f"vectors {phi.shape}, {psi.shape} vs metric dimension {e.shape[0]}"
        )
    return complex(phi.conj() @ (e @ psi))


def metric_from_spectrum(operator) -> MetricOperator:
    """Construct the metric eta = (S S^dagger)^{-1} from the eigenbasis of A.

    Requires a real spectrum within ``1e-8 * ||A||_F``.  The result is
    positive definite by construction and satisfies A^dagger eta = eta A up
    to floating point; the phase and normalization convention of
    :func:`eig_general` makes it canonical.
    """
    a = as_square(operator)
    pair = eig_general(a)
    max_imag = float(np.abs(pair.values.imag).max())
    if max_imag > SPECTRUM_REALITY_RTOL * max(frobenius(a), _TINY):
        raise ComplexSpectrumError(
            f"max |Im lambda| = {max_imag:.3e} exceeds the reality tolerance; "
            "no positive metric at this truncation"
        )
    right_inv = np.linalg.inv(pair.right_vectors)
    eta = right_inv.conj().T @ right_inv
    return MetricOperator.from_matrix((eta + eta.conj().T) / 2.0)


def eta_adjoint(operator, eta: MetricOperator) -> np.ndarray:
    """The eta-adjoint A^sharp = eta^{-1} A^dagger eta.

    Satisfies <phi, A psi>_eta = <A^sharp phi, psi>_eta for all phi, psi; a
    quasi-Hermitian A is a fixed point.
    """
    a = as_square(operator)
    if a.shape != eta.matrix.shape:
        raise DimensionMismatchError(f"operator {a.shape} vs metric {eta.matrix.shape}")
    return sla.cho_solve((eta.cholesky_factor, True), a.conj().T @ eta.matrix)


def positive_inverse(rho) -> np.ndarray:
    """Inverse of a Hermitian positive-definite matrix through its eigenbasis."""
    r = require_hermitian(as_square(rho))
    values, vectors = np.linalg.eigh(r)
    if values[0] <= 0.0:
        raise NotPositiveDefiniteError(
            f"smallest eigenvalue {values[0]:.3e} is not positive"
        )
    inv = (vectors / values) @ vectors.conj().T
    return (inv + inv.conj().T) / 2.0


def principal_root(eta) -> np.ndarray:
    """Hermitian positive square root of a positive-definite metric."""
    e = require_hermitian(_eta_matrix(eta))
    values, vectors = np.linalg.eigh(e)
    if values[0] <= 0.0:
        raise NotPositiveDefiniteError(
            f"smallest eigenvalue {values[0]:.3e} is not positive"
        )
    root = (vectors * np.sqrt(values)) @ vectors.conj().T
    return (root + root.conj().T) / 2.0


def counterpart_from_rho(operator, rho, margin: int | None = None) -> tuple[np.ndarray, float]:
    """h = rho A rho^{-1} plus its interior Hermiticity residual.

    The residual is ||h - h^dagger||_F over the interior block divided by
    ||h||_F.  For an exactly quasi-Hermitian pair (A, rho^2) the residual
    vanishes; at finite truncation it measures boundary contamination.
    """
    a = as_square(operator)
    r = as_square(rho)
    if a.shape != r.shape:
        raise DimensionMismatchError(f"operator {a.shape} vs rho {r.shape}")
    h = r @ a @ positive_inverse(r)
    n = h.shape[0]
    k = default_interior_margin(n) if margin is None else margin
    inner = (h - h.conj().T)[k : n - k, k : n - k]
    residual = frobenius(inner) / max(frobenius(h), _TINY)
    return h, float(residual)


def hermitian_counterpart(sys: QuasiHermitianSystem, margin: int | None = None) -> tuple[np.ndarray, float]:
    """Similarity transform rho A rho^{-1} of a system carrying a root rho."""
    if sys.rho is None:
        raise MissingRhoError("system has no similarity root rho")
    return counterpart_from_rho(sys.operator, sys.rho, margin=margin)
