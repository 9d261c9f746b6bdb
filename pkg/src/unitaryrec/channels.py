"""Quantum states, dynamical maps, and their representations.

Conventions used throughout:

* Vectorization is column-stacking, ``vec(|i><j|) = |j> (x) |i>``, so that
  ``vec(A B C) = (C^T (x) A) vec(B)`` and a conjugation map ``rho -> K rho K^dag``
  has superoperator ``conj(K) (x) K``.
* The Choi matrix of a map D is ``chi = sum_ij |i><j| (x) D(|i><j|)``
  (unnormalized: trace d for a trace-preserving map).
* Qubit 0 is the leftmost (most significant) tensor factor; ``|0>`` is the
  ground state of the amplitude-damping jump operator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotPSD, TraceViolation
from .linalg import dagger, eig_hermitian, matrix_exp, principal_log_unitary

SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

NOISE_T1 = "T1"
NOISE_T2 = "T2"


# ---------------------------------------------------------------------------
# vectorization
# ---------------------------------------------------------------------------

def vec(matrix: np.ndarray) -> np.ndarray:
    """Column-stack a matrix into a vector."""
    return np.asarray(matrix, dtype=complex).reshape(-1, order="F")


def unvec(vector: np.ndarray) -> np.ndarray:
    """Inverse of :func:`vec` for square matrices."""
    vector = np.asarray(vector, dtype=complex).reshape(-1)
    d = int(round(np.sqrt(vector.size)))
    if d * d != vector.size:
        raise DimensionMismatch(f"vector of length {vector.size} is not a square matrix")
    return vector.reshape((d, d), order="F")


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

def _frozen_array(obj, name: str, value: np.ndarray) -> None:
    value = np.ascontiguousarray(value)
    value.setflags(write=False)
    object.__setattr__(obj, name, value)


@dataclass(frozen=True)
class DensityMatrix:
    """d x d Hermitian, positive-semidefinite, unit-trace operator."""

    matrix: np.ndarray
    herm_tol: float = field(default=1e-9, repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"density matrix must be square, got {m.shape}")
        if np.max(np.abs(m - dagger(m))) > self.herm_tol:
            raise NotHermitian("density matrix is not Hermitian within tolerance")
        if abs(np.trace(m).real - 1.0) > 1e-9 or abs(np.trace(m).imag) > 1e-9:
            raise TraceViolation(f"density matrix trace {np.trace(m):.12g} != 1")
        if np.linalg.eigvalsh(0.5 * (m + dagger(m))).min() < -1e-9:
            raise NotPSD("density matrix has a negative eigenvalue beyond -1e-9")
        _frozen_array(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class JumpTerm:
    """A dissipative generator: jump operator with its coupling rate."""

    operator: np.ndarray
    rate: float

    def __post_init__(self):
        op = np.asarray(self.operator, dtype=complex)
        if op.ndim != 2 or op.shape[0] != op.shape[1]:
            raise DimensionMismatch(f"jump operator must be square, got {op.shape}")
        if not np.isfinite(self.rate) or self.rate < 0:
            raise ValueError(f"jump rate must be finite and >= 0, got {self.rate}")
        _frozen_array(self, "operator", op)

    @property
    def dim(self) -> int:
        return self.operator.shape[0]


@dataclass(frozen=True)
class Superoperator:
    """d^2 x d^2 matrix acting on column-stacked vectorizations.

    Used both for channels and for their generators; trace preservation and
    complete positivity are properties of channels, checked by the helpers
    below rather than at construction.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"superoperator must be square, got {m.shape}")
        d = int(round(np.sqrt(m.shape[0])))
        if d * d != m.shape[0]:
            raise DimensionMismatch(f"superoperator size {m.shape[0]} is not a perfect square")
        if not np.all(np.isfinite(m)):
            raise DimensionMismatch("superoperator contains non-finite entries")
        _frozen_array(self, "matrix", m)

    @property
    def dim(self) -> int:
        return int(round(np.sqrt(self.matrix.shape[0])))


@dataclass(frozen=True)
class ChoiMatrix:
    """Choi matrix chi = sum_ij |i><j| (x) D(|i><j|); trace d, PSD for channels."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"Choi matrix must be square, got {m.shape}")
        d = int(round(np.sqrt(m.shape[0])))
        if d * d != m.shape[0]:
            raise DimensionMismatch(f"Choi size {m.shape[0]} is not a perfect square")
        if np.max(np.abs(m - dagger(m))) > 1e-9:
            raise NotHermitian("Choi matrix is not Hermitian within 1e-9")
        if abs(np.trace(m).real - d) > 1e-8:
            raise TraceViolation(f"Choi trace {np.trace(m).real:.12g} != dim {d}")
        if np.linalg.eigvalsh(0.5 * (m + dagger(m))).min() < -1e-8:
            raise NotPSD("Choi matrix has an eigenvalue below -1e-8")
        _frozen_array(self, "matrix", m)

    @property
    def dim(self) -> int:
        return int(round(np.sqrt(self.matrix.shape[0])))


@dataclass(frozen=True)
class KrausSet:
    """Kraus operators {K_i} with sum_i K_i^dag K_i = 1."""

    operators: tuple

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.operators)
        if not ops:
            raise DimensionMismatch("Kraus set must contain at least one operator")
        d = ops[0].shape[0]
        for k in ops:
            if k.shape != (d, d):
                raise DimensionMismatch("all Kraus operators must share one square shape")
        completeness = sum(dagger(k) @ k for k in ops)
        if np.max(np.abs(completeness - np.eye(d))) > 1e-8:
            raise TraceViolation("Kraus completeness sum K^dag K != 1 within 1e-8")
        for k in ops:
            k.setflags(write=False)
        object.__setattr__(self, "operators", ops)

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]


@dataclass(frozen=True)
class NoiseSpec:
    """Which relaxation process acts, how strongly, and on which qubits.

    kind is "T1" (amplitude damping, sigma^-) or "T2" (pure dephasing,
    sigma^z); time_constant is in units of the gate time and may be
    infinite (no noise); targets are 0-based qubit indices.
    """

    kind: str
    time_constant: float
    targets: tuple

    def __post_init__(self):
        if self.kind not in (NOISE_T1, NOISE_T2):
            raise ValueError(f"noise kind must be 'T1' or 'T2', got {self.kind!r}")
        if not self.time_constant > 0:
            raise ValueError(f"time constant must be > 0, got {self.time_constant}")
        targets = tuple(sorted(set(int(q) for q in self.targets)))
        if not targets:
            raise ValueError("noise targets must be nonempty")
        if any(q < 0 for q in targets):
            raise ValueError("noise targets must be non-negative qubit indices")
        object.__setattr__(self, "targets", targets)

    @property
    def rate(self) -> float:
        return 0.0 if np.isinf(self.time_constant) else 1.0 / self.time_constant


# ---------------------------------------------------------------------------
# GKLS generator and propagation
# ---------------------------------------------------------------------------

def build_liouvillian(h0: np.ndarray, jumps: list[JumpTerm] | tuple = ()) -> Superoperator:
    """Generator of the GKLS master equation in column-stacking convention.

    L = -i (1 (x) H - H^T (x) 1)
        + sum_i gamma_i [ conj(L_i) (x) L_i
                          - 1/2 1 (x) (L_i^dag L_i)
                          - 1/2 (L_i^dag L_i)^T (x) 1 ]
    """
    h0 = np.asarray(h0, dtype=complex)
    if h0.ndim != 2 or h0.shape[0] != h0.shape[1]:
        raise DimensionMismatch(f"Hamiltonian must be square, got {h0.shape}")
    if np.max(np.abs(h0 - dagger(h0))) > 1e-8:
        raise NotHermitian("Hamiltonian is not Hermitian within 1e-8")
    d = h0.shape[0]
    eye = np.eye(d, dtype=complex)
    gen = -1j * (np.kron(eye, h0) - np.kron(h0.T, eye))
    for term in jumps:
        if term.dim != d:
            raise DimensionMismatch(
                f"jump operator dim {term.dim} does not match Hamiltonian dim {d}")
        op = term.operator
        opdop = dagger(op) @ op
        gen = gen + term.rate * (
            np.kron(op.conj(), op)
            - 0.5 * np.kron(eye, opdop)
            - 0.5 * np.kron(opdop.T, eye)
        )
    return Superoperator(gen)


def propagate(generator: Superoperator, t: float) -> Superoperator:
    """The channel exp(L t) generated by a Liouvillian."""
    if not np.isfinite(t) or t < 0:
        raise ValueError(f"propagation time must be finite and >= 0, got {t}")
    return Superoperator(matrix_exp(generator.matrix * t))


def apply_map(sop: Superoperator, rho: DensityMatrix) -> DensityMatrix:
    """Evaluate D(rho), re-symmetrizing and renormalizing roundoff drift.

    Raises TraceViolation when the output trace is off by more than 1e-8,
    which signals a broken map rather than an unlucky state.
    """
    if sop.dim != rho.dim:
        raise DimensionMismatch(f"map dim {sop.dim} != state dim {rho.dim}")
    out = unvec(sop.matrix @ vec(rho.matrix))
    out = 0.5 * (out + dagger(out))
    tr = np.trace(out).real
    if abs(tr - 1.0) > 1e-8:
        raise TraceViolation(f"map output trace {tr:.12g} deviates from 1 beyond 1e-8")
    return DensityMatrix(out / tr)


def identity_superoperator(d: int) -> Superoperator:
    return Superoperator(np.eye(d * d, dtype=complex))


def unitary_superop(u: np.ndarray) -> Superoperator:
    """Superoperator of the conjugation rho -> U rho U^dag."""
    u = np.asarray(u, dtype=complex)
    return Superoperator(np.kron(u.conj(), u))


def is_trace_preserving(sop: Superoperator, tol: float = 1e-8) -> bool:
    """Check sum_a <a| D(|i><j|) |a> = delta_ij within ``tol``."""
    d = sop.dim
    # trace functional on vec'ed matrices is vec(1)^T
    tr_vec = vec(np.eye(d)).conj() @ sop.matrix
    return bool(np.max(np.abs(tr_vec - vec(np.eye(d)).conj())) <= tol)


# ---------------------------------------------------------------------------
# representation conversions
# ---------------------------------------------------------------------------

def to_choi(sop: Superoperator) -> ChoiMatrix:
    """Choi matrix of a channel; entrywise equal to stacking the images of
    all matrix units |i><j| per the defining sum."""
    d = sop.dim
    t = sop.matrix.reshape(d, d, d, d)
    chi = np.transpose(t, (3, 1, 2, 0)).reshape(d * d, d * d)
    return ChoiMatrix(chi)


def choi_to_kraus(choi: ChoiMatrix, tol: float | None = None) -> KrausSet:
    """Kraus operators from diagonalizing the Choi matrix.

    Eigenvalues below ``tol`` (default 1e-10 * d) are treated as numerical
    noise and dropped.
    """
    d = choi.dim
    if tol is None:
        tol = 1e-10 * d
    eigsys = eig_hermitian(choi.matrix, herm_tol=1e-8)
    if eigsys.eigenvalues.min() < -1e-8:
        raise NotPSD("Choi matrix has an eigenvalue below -1e-8")
    ops = []
    for mu, v in zip(eigsys.eigenvalues, eigsys.eigenvectors.T):
        if mu < tol:
            continue
        ops.append(np.sqrt(mu) * unvec(v))
    return KrausSet(tuple(ops))


def kraus_to_superop(kraus: KrausSet) -> Superoperator:
    """Rebuild the channel sum_i conj(K_i) (x) K_i from a Kraus set."""
    d = kraus.dim
    sop = np.zeros((d * d, d * d), dtype=complex)
    for k in kraus.operators:
        sop += np.kron(k.conj(), k)
    return Superoperator(sop)


def choi_of_unitary(u: np.ndarray) -> ChoiMatrix:
    """Rank-1 Choi matrix |vec(U)><vec(U)| of a unitary channel."""
    v = vec(u)
    return ChoiMatrix(np.outer(v, v.conj()))


# ---------------------------------------------------------------------------
# scenarios and noise placement
# ---------------------------------------------------------------------------

def random_haar_unitary(n_qubits: int, seed: int) -> np.ndarray:
    """Haar-distributed unitary on n qubits via QR of a Ginibre matrix.

    The R-diagonal phase fix makes the QR factor Haar-distributed; the
    draw is deterministic in ``seed``.
    """
    if n_qubits < 1 or n_qubits > 5:
        raise DimensionMismatch(f"n_qubits must be in [1, 5], got {n_qubits}")
    d = 2 ** n_qubits
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


def embed_qubit_operator(op: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    """Tensor a single-qubit operator into an n-qubit register."""
    op = np.asarray(op, dtype=complex)
    if op.shape != (2, 2):
        raise DimensionMismatch(f"expected a 2x2 operator, got {op.shape}")
    if not 0 <= qubit < n_qubits:
        raise DimensionMismatch(f"qubit index {qubit} outside register of {n_qubits}")
    factors = [op if q == qubit else np.eye(2, dtype=complex) for q in range(n_qubits)]
    return reduce(np.kron, factors)


def jump_terms_for_noise(spec: NoiseSpec, n_qubits: int) -> list[JumpTerm]:
    """One jump term per target qubit; the rate enters linearly."""
    if any(q >= n_qubits for q in spec.targets):
        raise DimensionMismatch(
            f"noise targets {spec.targets} exceed register of {n_qubits} qubits")
    op = SIGMA_MINUS if spec.kind == NOISE_T1 else SIGMA_Z
    return [
        JumpTerm(embed_qubit_operator(op, q, n_qubits), spec.rate)
        for q in spec.targets
    ]


SCENARIO_RANDOM_HAAR = "random_haar"
SCENARIO_MULTI_CONTROL_NOT = "multi_control_not"

# 0-based index of the NOT target; the remaining qubits are controls.
MCN_TARGET_QUBIT = 1


def multi_control_not_unitary(n_qubits: int) -> np.ndarray:
    """Permutation flipping qubit 1 iff every other qubit is |1>.

    For two qubits this is the CNOT with qubit 0 as control.
    """
    if n_qubits < 2:
        raise DimensionMismatch("multi-control NOT needs at least 2 qubits")
    d = 2 ** n_qubits
    u = np.zeros((d, d), dtype=complex)
    target_bit = n_qubits - 1 - MCN_TARGET_QUBIT  # bit position, qubit 0 = MSB
    for x in range(d):
        controls = all(
            (x >> (n_qubits - 1 - q)) & 1
            for q in range(n_qubits)
            if q != MCN_TARGET_QUBIT
        )
        y = x ^ (1 << target_bit) if controls else x
        u[y, x] = 1.0
    return u


def scenario_hamiltonian(
    kind: str, n_qubits: int, seed: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Coherent generator and target unitary for the two study scenarios.

    Returns (h0, u0) with h0 = i log(u0) on the principal branch, so that
    exp(-i h0) reproduces u0 at unit gate time.
    """
    if kind == SCENARIO_RANDOM_HAAR:
        if seed is None:
            raise ValueError("the random-Haar scenario requires a seed")
        u0 = random_haar_unitary(n_qubits, seed)
    elif kind == SCENARIO_MULTI_CONTROL_NOT:
        u0 = multi_control_not_unitary(n_qubits)
    else:
        raise ValueError(f"unknown scenario kind {kind!r}")
    h0 = 1j * principal_log_unitary(u0)
    return h0, u0
