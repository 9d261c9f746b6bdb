"""Figures of merit: gate, process, and average fidelity, and the
Clifford-variance unitarity estimator."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .channels import ChoiMatrix, vec
from .errors import DimensionMismatch, NonRealResult
from .linalg import dagger

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2)
_PHASE_S = np.array([[1.0, 0.0], [0.0, 1j]], dtype=complex)


def gate_fidelity(u0: np.ndarray, urc: np.ndarray) -> float:
    """F_G = |Tr(U0^dag URC)| / d, invariant under global phases."""
    u0 = np.asarray(u0, dtype=complex)
    urc = np.asarray(urc, dtype=complex)
    if u0.shape != urc.shape or u0.ndim != 2 or u0.shape[0] != u0.shape[1]:
        raise DimensionMismatch(f"incompatible shapes {u0.shape} and {urc.shape}")
    d = u0.shape[0]
    return float(abs(np.trace(dagger(u0) @ urc)) / d)


def process_fidelity(chi0: ChoiMatrix, chirc: ChoiMatrix) -> float:
    """F_pro = Tr(chi0 chirc) / d^2."""
    if chi0.dim != chirc.dim:
        raise DimensionMismatch(f"Choi dims {chi0.dim} != {chirc.dim}")
    d = chi0.dim
    val = np.trace(chi0.matrix @ chirc.matrix) / d**2
    if abs(val.imag) > 1e-8:
        raise NonRealResult(f"process fidelity has imaginary part {val.imag:.3e}")
    return float(val.real)


def average_fidelity(chi0: ChoiMatrix, chirc: ChoiMatrix) -> float:
    """F_avg = (d F_pro + 1) / (d + 1)."""
    d = chi0.dim
    return (d * process_fidelity(chi0, chirc) + 1.0) / (d + 1.0)


@lru_cache(maxsize=8)
def _clifford_generators(n_qubits: int) -> tuple:
    """All H_q, S_q, and CNOT_{q,q'} as dense matrices on n qubits."""
    from .channels import embed_qubit_operator  # local import avoids cycle at module load

    gens = []
    for q in range(n_qubits):
        gens.append(embed_qubit_operator(_HADAMARD, q, n_qubits))
        gens.append(embed_qubit_operator(_PHASE_S, q, n_qubits))
    d = 2 ** n_qubits
    for ctrl in range(n_qubits):
        for tgt in range(n_qubits):
            if ctrl == tgt:
                continue
            cx = np.zeros((d, d), dtype=complex)
            for x in range(d):
                if (x >> (n_qubits - 1 - ctrl)) & 1:
                    y = x ^ (1 << (n_qubits - 1 - tgt))
                else:
                    y = x
                cx[y, x] = 1.0
            gens.append(cx)
    for g in gens:
        g.setflags(write=False)
    return tuple(gens)


def sample_clifford(n_qubits: int, seed: int, word_length: int = 100) -> np.ndarray:
    """A random Clifford-group element as a uniform word over {H, S, CNOT}.

    Words of the default length mix well enough for variance estimation;
    the defining property (Paulis map to Paulis under conjugation) holds
    for any word. Deterministic in ``seed``.
    """
    if n_qubits < 1 or n_qubits > 5:
        raise DimensionMismatch(f"n_qubits must be in [1, 5], got {n_qubits}")
    gens = _clifford_generators(n_qubits)
    rng = np.random.default_rng(seed)
    u = np.eye(2 ** n_qubits, dtype=complex)
    for idx in rng.integers(0, len(gens), size=word_length):
        u = gens[idx] @ u
    return u


@dataclass(frozen=True)
class UnitarityEstimate:
    value: float
    n_samples: int
    std_error: float

    def __post_init__(self):
        if self.n_samples < 2:
            raise ValueError("unitarity estimation needs at least 2 samples")
        if self.std_error < 0:
            raise ValueError("standard error cannot be negative")


@lru_cache(maxsize=8)
def _clifford_vec_stack(
    n_qubits: int, n_samples: int, seed: int, word_length: int
) -> np.ndarray:
    """Row k is vec(U_k) for the k-th sampled Clifford; draws use
    per-sample derived seeds so the set is order-independent."""
    root = np.random.SeedSequence(entropy=(int(seed), 0x756E6974))
    stacked = np.empty((n_samples, 4 ** n_qubits), dtype=complex)
    for k, child in enumerate(root.spawn(n_samples)):
        sub_seed = int(child.generate_state(1, np.uint64)[0])
        stacked[k] = vec(sample_clifford(n_qubits, sub_seed, word_length))
    stacked.setflags(write=False)
    return stacked


def estimate_unitarity(
    chi: ChoiMatrix,
    n_samples: int = 1000,
    seed: int = 0,
    word_length: int = 100,
) -> UnitarityEstimate:
    """u(chi) = d^2 (d+1)^2 Var[F_avg(chi_CL^k, chi)] over random Cliffords.

    The Choi matrix of a Clifford channel is rank one, so each average
    fidelity reduces to a quadratic form vec(U)^dag chi vec(U). The
    variance is the unbiased sample variance; the standard error comes
    from splitting the draws into 10 batches and treating the per-batch
    estimates as independent.
    """
    if n_samples < 2:
        raise ValueError("unitarity estimation needs at least 2 samples")
    d = chi.dim
    n_qubits = d.bit_length() - 1
    if 2 ** n_qubits != d:
        raise DimensionMismatch(f"Choi dim {d} is not a power of 2")
    stacked = _clifford_vec_stack(n_qubits, n_samples, int(seed), word_length)
    overlaps = np.sum((stacked.conj() @ chi.matrix) * stacked, axis=1)
    f_pro = overlaps.real / d**2
    f_avg = (d * f_pro + 1.0) / (d + 1.0)
    scale = d**2 * (d + 1.0) ** 2
    value = float(scale * np.var(f_avg, ddof=1))
    n_batches = min(10, n_samples // 2)
    if n_batches >= 2:
        batch_values = [
            scale * np.var(chunk, ddof=1)
            for chunk in np.array_split(f_avg, n_batches)
        ]
        std_error = float(np.std(batch_values, ddof=1) / np.sqrt(n_batches))
    else:
        std_error = 0.0
    return UnitarityEstimate(value=value, n_samples=n_samples, std_error=std_error)
