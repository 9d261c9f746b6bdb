"""Dense complex-matrix kernels: Hermitian eigendecomposition, SVD, matrix
exponential, and the principal logarithm of a unitary.

Eigenvalues are sorted descending everywhere in this package.
"""

from __future__ import annotations

import warnings
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import (
    DegenerateBranchWarning,
    DimensionMismatch,
    NotHermitian,
    NotUnitary,
    NumericalFailure,
)


class HermitianEigSystem(NamedTuple):
    eigenvalues: np.ndarray   # real, descending
    eigenvectors: np.ndarray  # orthonormal columns, paired index-wise


def _as_square(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DimensionMismatch("matrix contains non-finite entries")
    return a


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def eig_hermitian(a: np.ndarray, herm_tol: float = 1e-8) -> HermitianEigSystem:
    """Full spectrum of a Hermitian matrix, eigenvalues sorted descending.

    The input is symmetrized via (a + a^dag)/2 before diagonalization;
    inputs whose symmetrization defect exceeds ``herm_tol`` are rejected.
    """
    a = _as_square(a)
    defect = np.max(np.abs(a - dagger(a)))
    if defect > herm_tol:
        raise NotHermitian(f"symmetrization defect {defect:.3e} exceeds {herm_tol:.1e}")
    sym = 0.5 * (a + dagger(a))
    try:
        w, v = np.linalg.eigh(sym)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure("eigh did not converge") from exc
    return HermitianEigSystem(w[::-1].copy(), v[:, ::-1].copy())


def svd(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Singular value decomposition a = u @ diag(s) @ dagger(w).

    Returns (u, s, w); note the third factor is w, not its adjoint.
    """
    a = np.asarray(a, dtype=complex)
    if not np.all(np.isfinite(a)):
        raise DimensionMismatch("matrix contains non-finite entries")
    try:
        u, s, vh = np.linalg.svd(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure("SVD did not converge") from exc
    return u, s, dagger(vh)


def matrix_exp(a: np.ndarray) -> np.ndarray:
    """Matrix exponential via scaling-and-squaring (scipy.linalg.expm)."""
    a = _as_square(a)
    return scipy.linalg.expm(a)


def principal_log_unitary(
    u: np.ndarray,
    unitary_tol: float = 1e-8,
    branch_tol: float = 1e-10,
) -> np.ndarray:
    """Anti-Hermitian principal logarithm of a unitary matrix.

    Computed from the (complex) Schur form, which is diagonal for normal
    matrices, with every eigenphase taken in (-pi, pi].  Emits a
    DegenerateBranchWarning when an eigenphase sits within ``branch_tol``
    of -pi, where the branch choice is ambiguous.
    """
    u = _as_square(u)
    defect = np.max(np.abs(dagger(u) @ u - np.eye(u.shape[0])))
    if defect > unitary_tol:
        raise NotUnitary(f"unitarity defect {defect:.3e} exceeds {unitary_tol:.1e}")
    t, z = scipy.linalg.schur(u, output="complex")
    theta = np.angle(np.diag(t))
    if np.any(theta < -np.pi + branch_tol):
        warnings.warn(
            "eigenphase within branch tolerance of -pi; logarithm branch is ambiguous",
            DegenerateBranchWarning,
            stacklevel=2,
        )
    log = (z * (1j * theta)) @ dagger(z)
    return 0.5 * (log - dagger(log))
