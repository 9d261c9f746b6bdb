"""Probe input states: the full-rank mixed basis probe, the pure basis
projectors, and the uniform phase probe."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .channels import DensityMatrix
from .errors import DimensionMismatch


def mixed_probe_eigenvalues(d: int) -> list[Fraction]:
    """Eigenvalues 2i / (d(d+1)) for i = 1..d, as exact rationals.

    This is the arithmetic progression with the largest possible uniform
    gap subject to strict positivity and unit trace: the smallest
    eigenvalue equals the gap 2/(d(d+1)).
    """
    if d < 2:
        raise DimensionMismatch(f"probe dimension must be >= 2, got {d}")
    denom = d * (d + 1)
    return [Fraction(2 * i, denom) for i in range(1, d + 1)]


def make_mixed_basis_probe(d: int) -> DensityMatrix:
    """Diagonal full-rank probe with uniformly gapped, strictly increasing
    eigenvalues."""
    lam = np.array([float(x) for x in mixed_probe_eigenvalues(d)])
    return DensityMatrix(np.diag(lam).astype(complex))


def make_mixed_basis_probe_from(eigenvalues) -> DensityMatrix:
    """Diagonal basis probe with caller-chosen eigenvalues.

    Useful for biasing weight toward a noisier subspace; the values must
    be pairwise distinct, positive, and sum to 1.
    """
    lam = np.asarray([float(x) for x in eigenvalues], dtype=float)
    if lam.size < 2:
        raise DimensionMismatch("need at least 2 eigenvalues")
    if np.any(lam <= 0):
        raise ValueError("probe eigenvalues must be strictly positive")
    if abs(lam.sum() - 1.0) > 1e-12:
        raise ValueError(f"probe eigenvalues must sum to 1, got {lam.sum():.12g}")
    gaps = np.diff(np.sort(lam))
    if gaps.min() <= 0 or gaps.min() < 1e-12:
        raise ValueError("probe eigenvalues must be pairwise distinct")
    return DensityMatrix(np.diag(lam).astype(complex))


def make_pure_basis_probes(d: int) -> list[DensityMatrix]:
    """Rank-1 projectors |i><i| onto the canonical basis."""
    if d < 2:
        raise DimensionMismatch(f"probe dimension must be >= 2, got {d}")
    probes = []
    for i in range(d):
        m = np.zeros((d, d), dtype=complex)
        m[i, i] = 1.0
        probes.append(DensityMatrix(m))
    return probes


def make_phase_probe(d: int) -> DensityMatrix:
    """Rank-1 projector onto the uniform superposition; every entry 1/d."""
    if d < 2:
        raise DimensionMismatch(f"probe dimension must be >= 2, got {d}")
    return DensityMatrix(np.full((d, d), 1.0 / d, dtype=complex))
