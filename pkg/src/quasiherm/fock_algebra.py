"""Ladder-operator and su(1,1) generator matrices in the truncated Fock basis.

Truncation convention: every operator is the top-left N x N corner of its
infinite matrix, and products are formed *after* truncation.  Rows near the
boundary n = N-1 are therefore approximate, which is why residual checks
carry an interior margin that discards boundary rows and columns.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidTruncationError, NotParityPreservingError
from .matrix_kernel import as_square, frobenius


def default_interior_margin(dim: int) -> int:
    """Margin used by boundary-sensitive residual checks: max(4, N/8), clamped to 2k < N."""
    return min(max(4, dim // 8), max((dim - 1) // 2, 0))


@dataclass(frozen=True)
class FockTruncation:
    """Truncation size plus the margin excluded from boundary-sensitive checks."""

    dim: int
    interior_margin: int

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidTruncationError(f"dim must be >= 1, got {self.dim}")
        if not 0 <= 2 * self.interior_margin < self.dim:
            raise InvalidTruncationError(
                f"need 0 <= 2*interior_margin < dim, got margin {self.interior_margin} at dim {self.dim}"
            )

    @classmethod
    def from_dim(cls, dim: int) -> "FockTruncation":
        return cls(dim=dim, interior_margin=default_interior_margin(dim))


@dataclass(frozen=True)
class GeneratorSet:
    """Truncated a, a^dagger, number operator and the su(1,1) triple K0, K+, K-."""

    a: np.ndarray
    a_dag: np.ndarray
    number_op: np.ndarray
    k0: np.ndarray
    k_plus: np.ndarray
    k_minus: np.ndarray
    trunc: FockTruncation


def build_generators(trunc: FockTruncation) -> GeneratorSet:
    """Build the generator matrices for the given truncation.

    All matrices are real.  On the interior block the su(1,1) commutation
    relations [K0, K+-] = +-K+- and [K+, K-] = -2 K0 hold entrywise;
    boundary rows deviate because products are formed after truncation.
    """
    n = trunc.dim
    a = np.zeros((n, n))
    ns = np.arange(n - 1)
    a[ns, ns + 1] = np.sqrt(ns + 1.0)
    a_dag = a.T.copy()
    number_op = np.diag(np.arange(n, dtype=float))
    k0 = np.diag(0.5 * (np.arange(n) + 0.5))
    k_plus = 0.5 * (a_dag @ a_dag)
    k_minus = 0.5 * (a @ a)
    return GeneratorSet(
        a=a, a_dag=a_dag, number_op=number_op, k0=k0, k_plus=k_plus, k_minus=k_minus, trunc=trunc
    )


def parity_blocks(m) -> tuple[np.ndarray, np.ndarray]:
    """Split an even/odd-sector-preserving matrix into its two half-size blocks.

    Requires M[i, j] = 0 whenever i - j is odd (within 1e-12 * ||M||_F); the
    direct sum of the returned blocks equals M after the parity permutation.
    """
    a = as_square(m)
    n = a.shape[0]
    idx = np.arange(n)
    odd_offset = (idx[:, None] + idx[None, :]) % 2 == 1
    leak = float(np.abs(a[odd_offset]).max()) if n > 1 else 0.0
    if leak > 1e-12 * max(frobenius(a), np.finfo(float).tiny):
        raise NotParityPreservingError(
            f"odd-offset entries up to {leak:.3e} couple the parity sectors"
        )
    return a[::2, ::2].copy(), a[1::2, 1::2].copy()
