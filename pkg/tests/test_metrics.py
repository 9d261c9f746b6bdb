"""Tests for the fidelity metrics and the unitarity estimator."""

import numpy as np
import pytest

from unitaryrec.channels import (
    ChoiMatrix,
    NoiseSpec,
    Superoperator,
    build_liouvillian,
    choi_of_unitary,
    jump_terms_for_noise,
    propagate,
    random_haar_unitary,
    scenario_hamiltonian,
    to_choi,
    vec,
)
from unitaryrec.errors import DimensionMismatch
from unitaryrec.linalg import dagger
from unitaryrec.metrics import (
    UnitarityEstimate,
    average_fidelity,
    estimate_unitarity,
    gate_fidelity,
    process_fidelity,
    sample_clifford,
)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def depolarizing_choi(d):
    sop = Superoperator(np.outer(vec(np.eye(d)) / d, vec(np.eye(d)).conj()))
    return to_choi(sop)


def noisy_chi(seed, time_constant):
    h0, _ = scenario_hamiltonian("random_haar", 2, seed)
    spec = NoiseSpec("T1", time_constant, (0, 1))
    gen = build_liouvillian(h0, jump_terms_for_noise(spec, 2))
    return to_choi(propagate(gen, 1.0))


class TestGateFidelity:
    def test_identity(self):
        assert gate_fidelity(np.eye(2), np.eye(2)) == 1.0

    def test_global_phase_killed(self):
        for alpha in (0.1, 1.0, np.pi / 2):
            assert gate_fidelity(np.eye(2), np.exp(1j * alpha) * np.eye(2)) == \
                pytest.approx(1.0, abs=1e-15)

    def test_traceless_pair(self):
        assert gate_fidelity(np.eye(2), np.diag([1.0, -1.0])) == pytest.approx(0.0)

    def test_symmetry(self):
        u = random_haar_unitary(2, 1)
        v = random_haar_unitary(2, 2)
        assert gate_fidelity(u, v) == pytest.approx(gate_fidelity(v, u), abs=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            gate_fidelity(np.eye(2), np.eye(4))


class TestProcessFidelity:
    def test_identical_unitary_channels(self):
        u = random_haar_unitary(1, 3)
        chi = choi_of_unitary(u)
        assert process_fidelity(chi, chi) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_unitaries(self):
        # Tr(I^dag X) = 0, so the channels are orthogonal in process fidelity
        chi_i = choi_of_unitary(np.eye(2))
        chi_x = choi_of_unitary(PAULI_X)
        assert process_fidelity(chi_i, chi_x) == pytest.approx(0.0, abs=1e-12)

    def test_depolarizing_self_overlap(self):
        chi = depolarizing_choi(2)
        assert process_fidelity(chi, chi) == pytest.approx(0.25, abs=1e-12)

    @pytest.mark.parametrize("n_qubits", [1, 2])
    def test_equals_gate_fidelity_squared(self, n_qubits):
        for seed in range(50):
            u = random_haar_unitary(n_qubits, 2 * seed)
            v = random_haar_unitary(n_qubits, 2 * seed + 1)
            fpro = process_fidelity(choi_of_unitary(u), choi_of_unitary(v))
            assert fpro == pytest.approx(gate_fidelity(u, v) ** 2, abs=1e-9)


class TestAverageFidelity:
    def test_anchor_values(self):
        chi = choi_of_unitary(np.eye(2))
        assert average_fidelity(chi, chi) == pytest.approx(1.0, abs=1e-12)
        chi_x = choi_of_unitary(PAULI_X)
        assert average_fidelity(chi, chi_x) == pytest.approx(1 / 3, abs=1e-12)

    def test_affine_in_process_fidelity(self):
        chi_dep = depolarizing_choi(2)
        f_pro = process_fidelity(chi_dep, chi_dep)
        assert f_pro == pytest.approx(0.25, abs=1e-12)
        assert average_fidelity(chi_dep, chi_dep) == pytest.approx(
            (2 * 0.25 + 1) / 3, abs=1e-12)

    def test_monotone_in_process_fidelity(self):
        us = [random_haar_unitary(2, s) for s in range(6)]
        ref = choi_of_unitary(us[0])
        pairs = [
            (process_fidelity(ref, choi_of_unitary(u)),
             average_fidelity(ref, choi_of_unitary(u)))
            for u in us[1:]
        ]
        pairs.sort()
        f_avgs = [p[1] for p in pairs]
        assert all(a <= b + 1e-12 for a, b in zip(f_avgs, f_avgs[1:]))


class TestCliffordSampler:
    def test_empty_word_is_identity(self):
        np.testing.assert_array_equal(
            sample_clifford(2, seed=0, word_length=0), np.eye(4))

    def test_unitary(self):
        for seed in range(5):
            u = sample_clifford(2, seed=seed)
            assert np.max(np.abs(dagger(u) @ u - np.eye(4))) <= 1e-10

    def test_determinism(self):
        np.testing.assert_array_equal(
            sample_clifford(2, seed=11), sample_clifford(2, seed=11))

    @pytest.mark.parametrize("n_qubits", [1, 2])
    def test_pauli_conjugation_property(self, n_qubits):
        singles = [np.eye(2, dtype=complex), PAULI_X, PAULI_Y, PAULI_Z]
        paulis = singles
        for _ in range(n_qubits - 1):
            paulis = [np.kron(a, b) for a in paulis for b in singles]
        allowed = np.array([0, 1, -1, 1j, -1j])
        for seed in range(3):
            u = sample_clifford(n_qubits, seed=seed)
            for p in paulis[1:]:
                conj = u @ p @ dagger(u)
                dist = np.abs(conj[..., None] - allowed).min(axis=-1)
                assert np.max(dist) <= 1e-9


class TestUnitarityEstimator:
    def test_depolarizing_is_constant_sequence(self):
        # every Clifford sees the same fidelity; the variance vanishes to
        # floating-point roundoff
        est = estimate_unitarity(depolarizing_choi(4), n_samples=500, seed=1)
        assert 0.0 <= est.value < 1e-20

    def test_unitary_channel_near_one(self):
        u = random_haar_unitary(2, 21)
        est = estimate_unitarity(choi_of_unitary(u), n_samples=2000, seed=2)
        assert abs(est.value - 1.0) <= 5 * est.std_error

    def test_determinism(self):
        chi = noisy_chi(5, 10.0)
        a = estimate_unitarity(chi, n_samples=300, seed=7)
        b = estimate_unitarity(chi, n_samples=300, seed=7)
        assert a == b

    def test_noisy_channel_between_zero_and_one(self):
        est = estimate_unitarity(noisy_chi(9, 1.0), n_samples=500, seed=3)
        assert 0.0 < est.value < 1.0

    def test_monotone_in_decay_time(self):
        values = [
            estimate_unitarity(noisy_chi(13, tc), n_samples=800, seed=4).value
            for tc in (1.0, 3.0, 10.0)
        ]
        assert values[0] < values[1] < values[2]

    def test_matches_average_fidelity_definition(self):
        # the fast quadratic-form path must agree with the public metric
        chi = noisy_chi(17, 3.0)
        d = chi.dim
        u = sample_clifford(2, seed=99)
        f_direct = average_fidelity(choi_of_unitary(u), chi)
        quad = (vec(u).conj() @ chi.matrix @ vec(u)).real / d**2
        f_quad = (d * quad + 1) / (d + 1)
        assert f_direct == pytest.approx(f_quad, abs=1e-12)

    def test_estimate_fields(self):
        est = estimate_unitarity(depolarizing_choi(2), n_samples=40, seed=0)
        assert est.n_samples == 40
        assert est.std_error >= 0.0
        with pytest.raises(ValueError):
            UnitarityEstimate(value=1.0, n_samples=1, std_error=0.0)
