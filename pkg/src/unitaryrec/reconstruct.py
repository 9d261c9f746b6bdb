"""Unitary reconstruction from the action of a dynamical map.

Three routes are implemented:

* mixed: one full-rank non-degenerate probe fixes the eigenbasis, the
  phase probe fixes the relative phases;
* pure: d basis projectors provide eigenbasis candidates (Gram-Schmidt
  repaired when noise breaks orthogonality), phases as above;
* Choi: the dominant Kraus operator of the channel, polar-projected onto
  the closest unitary.

The state-based routes consume a map-action callable so that resource
accounting stays honest: they only ever query the map on their probes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .channels import ChoiMatrix, DensityMatrix, unvec
from .errors import (
    DegenerateImage,
    DimensionMismatch,
    LinearDependence,
    PhaseUndefined,
    RankDeficientWarning,
)
from .linalg import dagger, eig_hermitian, svd
from .probes import make_mixed_basis_probe, make_phase_probe, make_pure_basis_probes

MapAction = Callable[[DensityMatrix], DensityMatrix]

METHOD_MIXED = "mixed"
METHOD_PURE = "pure"
METHOD_CHOI = "choi"

WARN_NEAR_DEGENERATE = "near_degenerate"
WARN_LOW_UNITARITY = "low_unitarity"
WARN_BRANCH_AMBIGUITY = "branch_ambiguity"


@dataclass(frozen=True)
class Diagnostics:
    """What the reconstruction saw along the way.

    min_spectral_gap is the smallest spectral margin the method relied on:
    the minimum adjacent gap of the mixed-probe image, the worst top-two
    gap over the pure-probe images, or the gap between the two largest
    Choi eigenvalues.
    """

    min_spectral_gap: float
    image_purities: tuple | None = None
    warnings: tuple = field(default_factory=tuple)


@dataclass(frozen=True)
class ReconstructionResult:
    unitary: np.ndarray
    method: str
    diagnostics: Diagnostics

    def __post_init__(self):
        u = np.asarray(self.unitary, dtype=complex)
        defect = np.max(np.abs(dagger(u) @ u - np.eye(u.shape[0])))
        if defect > 1e-8:
            raise DimensionMismatch(
                f"reconstructed matrix is not unitary (defect {defect:.3e})")
        u.setflags(write=False)
        object.__setattr__(self, "unitary", u)


def _unitarity_warnings(unitarity, threshold) -> list[str]:
    if unitarity is not None and unitarity < threshold:
        return [WARN_LOW_UNITARITY]
    return []


def _recover_phases(
    psi: np.ndarray, phase_image: np.ndarray, gap: float
) -> np.ndarray:
    """Assemble U = sum_k e^{i phi_k} |psi_k><k| from the phase-probe image.

    phi_1 = 0 by global-phase freedom; phi_k = arg[d <psi_k|D(rho_P)|psi_1>]
    for the rest. The arbitrary global phases of the eigenvectors are
    absorbed into the phi_k, so the result matches the true unitary up to
    one overall phase.
    """
    d = psi.shape[0]
    ref = psi[:, 0]
    overlaps = psi.conj().T @ phase_image @ ref
    small = np.abs(overlaps) < 1e-12
    if np.any(small[1:]):
        k = int(np.nonzero(small)[0][0])
        raise PhaseUndefined(
            f"phase-probe matrix element for column {k} vanished", min_spectral_gap=gap)
    phases = np.exp(1j * np.angle(d * overlaps))
    phases[0] = 1.0
    return psi * phases[np.newaxis, :]


def reconstruct_mixed(
    map_action: MapAction,
    d: int,
    deg_tol: float = 1e-6,
    unitarity: float | None = None,
    unitarity_threshold: float = 0.9,
) -> ReconstructionResult:
    """Reconstruct from the images of the mixed basis probe and the phase probe.

    The image of the basis probe is diagonalized and its eigenvectors are
    associated with the canonical basis by eigenvalue order (the map is
    assumed close enough to unitary to preserve the ordering). Raises
    DegenerateImage when adjacent image eigenvalues come within
    ``deg_tol`` of each other, which makes that association meaningless.
    """
    basis_image = map_action(make_mixed_basis_probe(d))
    eigsys = eig_hermitian(basis_image.matrix)
    w = eigsys.eigenvalues
    gap = float(np.min(w[:-1] - w[1:]))
    if gap < deg_tol:
        raise DegenerateImage(
            f"adjacent image eigenvalues within {gap:.3e} (< {deg_tol:.1e})",
            min_spectral_gap=gap)
    # probe eigenvalues increase with basis index; eig_hermitian sorts
    # descending, so column k of the eigensystem belongs to basis d-1-k
    psi = eigsys.eigenvectors[:, ::-1]
    phase_image = map_action(make_phase_probe(d))
    u = _recover_phases(psi, phase_image.matrix, gap)
    diags = Diagnostics(
        min_spectral_gap=gap,
        warnings=tuple(_unitarity_warnings(unitarity, unitarity_threshold)),
    )
    return ReconstructionResult(u, METHOD_MIXED, diags)


def reconstruct_pure(
    map_action: MapAction,
    d: int,
    deg_tol: float = 1e-6,
    unitarity: float | None = None,
    unitarity_threshold: float = 0.9,
) -> ReconstructionResult:
    """Reconstruct from the images of the d basis projectors plus the phase probe.

    Each projector image contributes its top eigenvector as a basis
    candidate; the candidates are orthonormalized in probe order by
    modified Gram-Schmidt before phase recovery. Raises DegenerateImage
    when some image's top two eigenvalues come within ``deg_tol``, and
    LinearDependence when a candidate collapses onto the span of its
    predecessors.
    """
    candidates = []
    purities = []
    gap = np.inf
    for probe in make_pure_basis_probes(d):
        image = map_action(probe)
        eigsys = eig_hermitian(image.matrix)
        top_gap = float(eigsys.eigenvalues[0] - eigsys.eigenvalues[1])
        gap = min(gap, top_gap)
        if top_gap < deg_tol:
            raise DegenerateImage(
                f"top eigenvalues of a projector image within {top_gap:.3e} "
                f"(< {deg_tol:.1e})", min_spectral_gap=float(gap))
        candidates.append(eigsys.eigenvectors[:, 0])
        purities.append(float(np.trace(image.matrix @ image.matrix).real))
    psi = np.empty((d, d), dtype=complex)
    for i, cand in enumerate(candidates):
        v = cand.copy()
        for j in range(i):  # modified Gram-Schmidt, probe order
            v -= (psi[:, j].conj() @ v) * psi[:, j]
        norm = np.linalg.norm(v)
        if norm < 1e-8:
            raise LinearDependence(
                f"candidate {i} lies in the span of its predecessors "
                f"(residual {norm:.3e})", min_spectral_gap=float(gap))
        psi[:, i] = v / norm
    phase_image = map_action(make_phase_probe(d))
    u = _recover_phases(psi, phase_image.matrix, float(gap))
    diags = Diagnostics(
        min_spectral_gap=float(gap),
        image_purities=tuple(purities),
        warnings=tuple(_unitarity_warnings(unitarity, unitarity_threshold)),
    )
    return ReconstructionResult(u, METHOD_PURE, diags)


def closest_unitary(k: np.ndarray) -> np.ndarray:
    """Polar-decomposition unitary factor: the operator-norm-closest
    unitary to k.

    Warns (RankDeficientWarning) when k is numerically rank deficient, in
    which case the factor is still returned but is not unique.
    """
    k = np.asarray(k, dtype=complex)
    if k.ndim != 2 or k.shape[0] != k.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got {k.shape}")
    u, s, w = svd(k)
    if s.min() < 1e-12:
        warnings.warn(
            "polar projection of a rank-deficient matrix; unitary factor not unique",
            RankDeficientWarning,
            stacklevel=2,
        )
    return u @ dagger(w)


def reconstruct_choi(
    choi: ChoiMatrix,
    near_deg_tol: float = 1e-6,
    unitarity: float | None = None,
    unitarity_threshold: float = 0.9,
) -> ReconstructionResult:
    """Reconstruct from the dominant eigenvector of the Choi matrix.

    The top eigenvector unfolds to the dominant Kraus operator, whose
    polar projection is the returned unitary. Image degeneracies cannot
    break this route; a near-degenerate top Choi eigenvalue only attaches
    a near_degenerate warning.
    """
    eigsys = eig_hermitian(choi.matrix)
    gap = float(eigsys.eigenvalues[0] - eigsys.eigenvalues[1])
    k_max = np.sqrt(max(eigsys.eigenvalues[0], 0.0)) * unvec(eigsys.eigenvectors[:, 0])
    u = closest_unitary(k_max)
    warns = [] if gap >= near_deg_tol else [WARN_NEAR_DEGENERATE]
    warns += _unitarity_warnings(unitarity, unitarity_threshold)
    diags = Diagnostics(min_spectral_gap=gap, warnings=tuple(warns))
    return ReconstructionResult(u, METHOD_CHOI, diags)
