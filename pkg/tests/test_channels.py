"""Tests for states, maps, representations, and the study scenarios."""

import numpy as np
import pytest

from unitaryrec.channels import (
    SIGMA_MINUS,
    SIGMA_Z,
    ChoiMatrix,
    DensityMatrix,
    JumpTerm,
    KrausSet,
    NoiseSpec,
    apply_map,
    build_liouvillian,
    choi_of_unitary,
    choi_to_kraus,
    embed_qubit_operator,
    identity_superoperator,
    is_trace_preserving,
    jump_terms_for_noise,
    kraus_to_superop,
    multi_control_not_unitary,
    propagate,
    random_haar_unitary,
    scenario_hamiltonian,
    to_choi,
    unitary_superop,
    unvec,
    vec,
    Superoperator,
)
from unitaryrec.errors import (
    DimensionMismatch,
    NotHermitian,
    NotPSD,
    TraceViolation,
)
from unitaryrec.linalg import dagger, matrix_exp

from oracles import apply_by_definition, choi_by_definition, rk4_propagate

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


def random_noisy_channel(n_qubits, seed):
    rng = np.random.default_rng(seed)
    h0, u0 = scenario_hamiltonian("random_haar", n_qubits, seed)
    kind = rng.choice(["T1", "T2"])
    tc = float(10 ** rng.uniform(-0.5, 2))
    n_targets = int(rng.integers(1, n_qubits + 1))
    targets = tuple(rng.choice(n_qubits, size=n_targets, replace=False))
    spec = NoiseSpec(kind=kind, time_constant=tc, targets=targets)
    gen = build_liouvillian(h0, jump_terms_for_noise(spec, n_qubits))
    return propagate(gen, 1.0), u0


class TestVectorization:
    def test_column_stacking_convention(self):
        # vec(|i><j|) = |j> (x) |i>
        d = 3
        for i in range(d):
            for j in range(d):
                unit = np.zeros((d, d), dtype=complex)
                unit[i, j] = 1.0
                expected = np.kron(np.eye(d)[j], np.eye(d)[i])
                np.testing.assert_array_equal(vec(unit), expected)

    def test_roundtrip(self):
        rng = np.random.default_rng(0)
        a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        np.testing.assert_array_equal(unvec(vec(a)), a)

    def test_vec_abc_identity(self):
        rng = np.random.default_rng(1)
        a, b, c = (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
                   for _ in range(3))
        np.testing.assert_allclose(
            vec(a @ b @ c), np.kron(c.T, a) @ vec(b), atol=1e-12)


class TestDomainTypes:
    def test_density_matrix_validation(self):
        DensityMatrix(np.eye(2) / 2)
        with pytest.raises(TraceViolation):
            DensityMatrix(np.eye(2))
        with pytest.raises(NotHermitian):
            DensityMatrix(np.array([[0.5, 0.5], [0.0, 0.5]]))
        with pytest.raises(NotPSD):
            DensityMatrix(np.diag([1.5, -0.5]))

    def test_jump_term_validation(self):
        JumpTerm(SIGMA_MINUS, 0.0)
        with pytest.raises(ValueError):
            JumpTerm(SIGMA_MINUS, -1.0)
        with pytest.raises(DimensionMismatch):
            JumpTerm(np.ones((2, 3)), 1.0)

    def test_kraus_completeness_enforced(self):
        with pytest.raises(TraceViolation):
            KrausSet((np.eye(2) * 0.5,))

    def test_choi_validation(self):
        ChoiMatrix(choi_by_definition(np.eye(4)))
        with pytest.raises(TraceViolation):
            ChoiMatrix(np.eye(4))  # trace 4, but a d=2 Choi must have trace 2
        with pytest.raises(NotPSD):
            ChoiMatrix(np.diag([2.5, 0.5, -0.5, -0.5]))

    def test_noise_spec(self):
        spec = NoiseSpec("T1", 10.0, (1, 0, 1))
        assert spec.targets == (0, 1)
        assert spec.rate == pytest.approx(0.1)
        assert NoiseSpec("T2", np.inf, (0,)).rate == 0.0
        with pytest.raises(ValueError):
            NoiseSpec("T3", 1.0, (0,))
        with pytest.raises(ValueError):
            NoiseSpec("T1", 0.0, (0,))
        with pytest.raises(ValueError):
            NoiseSpec("T1", 1.0, ())


class TestLiouvillian:
    def test_free_evolution_absent(self):
        gen = build_liouvillian(np.zeros((2, 2)))
        np.testing.assert_array_equal(gen.matrix, np.zeros((4, 4)))
        prop = propagate(gen, 1.7)
        np.testing.assert_allclose(prop.matrix, np.eye(4), atol=1e-12)

    @pytest.mark.parametrize("gamma,t", [(0.5, 0.3), (1.0, 1.0), (2.0, 0.25)])
    def test_amplitude_damping_closed_form(self, gamma, t):
        gen = build_liouvillian(np.zeros((2, 2)), [JumpTerm(SIGMA_MINUS, gamma)])
        excited = DensityMatrix(np.diag([0.0, 1.0]))
        out = apply_map(propagate(gen, t), excited)
        expected = np.diag([1 - np.exp(-gamma * t), np.exp(-gamma * t)])
        np.testing.assert_allclose(out.matrix, expected, atol=1e-10)
        # independent stepwise integration agrees
        rk4 = rk4_propagate(np.zeros((2, 2)), [(gamma, SIGMA_MINUS)],
                            excited.matrix, t)
        np.testing.assert_allclose(out.matrix, rk4, atol=1e-9)

    @pytest.mark.parametrize("gamma,t", [(0.5, 0.3), (1.0, 1.0), (2.0, 0.25)])
    def test_dephasing_closed_form(self, gamma, t):
        gen = build_liouvillian(np.zeros((2, 2)), [JumpTerm(SIGMA_Z, gamma)])
        plus = DensityMatrix(np.full((2, 2), 0.5))
        out = apply_map(propagate(gen, t), plus)
        # coherences decay twice as fast as the rate; populations are fixed
        rk4 = rk4_propagate(np.zeros((2, 2)), [(gamma, SIGMA_Z)], plus.matrix, t)
        np.testing.assert_allclose(out.matrix, rk4, atol=1e-9)
        assert out.matrix[0, 1].real == pytest.approx(
            0.5 * np.exp(-2 * gamma * t), abs=1e-10)
        assert out.matrix[0, 0].real == pytest.approx(0.5, abs=1e-10)

    def test_random_channel_matches_rk4(self):
        rng = np.random.default_rng(11)
        h0, _ = scenario_hamiltonian("random_haar", 2, 23)
        jumps = [
            JumpTerm(embed_qubit_operator(SIGMA_MINUS, 0, 2), 0.4),
            JumpTerm(embed_qubit_operator(SIGMA_Z, 1, 2), 0.2),
        ]
        gen = build_liouvillian(h0, jumps)
        channel = propagate(gen, 1.0)
        raw = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        raw = raw @ raw.conj().T
        rho = DensityMatrix(raw / np.trace(raw).real)
        out = apply_map(channel, rho)
        rk4 = rk4_propagate(h0, [(j.rate, j.operator) for j in jumps],
                            rho.matrix, 1.0)
        np.testing.assert_allclose(out.matrix, rk4, atol=1e-8)

    def test_unitary_channel_is_conjugation(self):
        h0, u0 = scenario_hamiltonian("random_haar", 2, 5)
        channel = propagate(build_liouvillian(h0), 1.0)
        rng = np.random.default_rng(6)
        for _ in range(20):
            raw = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            raw = raw @ raw.conj().T
            rho = DensityMatrix(raw / np.trace(raw).real)
            out = apply_map(channel, rho)
            np.testing.assert_allclose(
                out.matrix, u0 @ rho.matrix @ dagger(u0), atol=1e-8)

    def test_t1_population_value(self):
        # T1 = 100 gate times: excited population decays to e^{-0.01}
        gen = build_liouvillian(np.zeros((2, 2)), [JumpTerm(SIGMA_MINUS, 1 / 100)])
        out = apply_map(propagate(gen, 1.0), DensityMatrix(np.diag([0.0, 1.0])))
        assert out.matrix[1, 1].real == pytest.approx(np.exp(-0.01), abs=1e-12)

    def test_rejects_non_hermitian_hamiltonian(self):
        with pytest.raises(NotHermitian):
            build_liouvillian(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_trace_preservation_random_triples(self):
        rng = np.random.default_rng(42)
        for trial in range(50):
            n = int(rng.integers(1, 3))
            channel, _ = random_noisy_channel(n, 1000 + trial)
            assert is_trace_preserving(channel, tol=1e-8)
            raw = rng.standard_normal((2**n, 2**n)) + 1j * rng.standard_normal((2**n, 2**n))
            raw = raw @ raw.conj().T
            rho = DensityMatrix(raw / np.trace(raw).real)
            out = apply_map(channel, rho)
            assert abs(np.trace(out.matrix).real - 1.0) <= 1e-8


class TestApply:
    def test_identity_map(self):
        rho = DensityMatrix(np.full((2, 2), 0.5))
        out = apply_map(identity_superoperator(2), rho)
        np.testing.assert_allclose(out.matrix, rho.matrix, atol=1e-14)

    def test_pauli_x_flip(self):
        out = apply_map(unitary_superop(PAULI_X), DensityMatrix(np.diag([1.0, 0.0])))
        np.testing.assert_allclose(out.matrix, np.diag([0.0, 1.0]), atol=1e-14)

    def test_amplitude_damping_half(self):
        gamma_t = np.log(2.0)
        gen = build_liouvillian(np.zeros((2, 2)), [JumpTerm(SIGMA_MINUS, gamma_t)])
        out = apply_map(propagate(gen, 1.0), DensityMatrix(np.diag([0.0, 1.0])))
        np.testing.assert_allclose(out.matrix, np.diag([0.5, 0.5]), atol=1e-12)

    def test_matches_literal_definition(self):
        channel, _ = random_noisy_channel(2, 77)
        rho = DensityMatrix(np.eye(4) / 4)
        out = apply_map(channel, rho)
        literal = apply_by_definition(channel.matrix, rho.matrix)
        np.testing.assert_allclose(out.matrix, literal, atol=1e-10)

    def test_trace_violation_signals_broken_map(self):
        broken = Superoperator(1.5 * np.eye(4))
        with pytest.raises(TraceViolation):
            apply_map(broken, DensityMatrix(np.eye(2) / 2))


class TestChoiAndKraus:
    def test_identity_channel_choi(self):
        chi = to_choi(identity_superoperator(2))
        expected = choi_by_definition(np.eye(4))
        np.testing.assert_allclose(chi.matrix, expected, atol=1e-14)
        w = np.linalg.eigvalsh(chi.matrix)
        np.testing.assert_allclose(np.sort(w)[-1], 2.0, atol=1e-12)
        assert np.sum(w > 1e-10) == 1  # rank one

    def test_unitary_channel_choi_rank_one(self):
        u = random_haar_unitary(2, 9)
        chi = to_choi(unitary_superop(u))
        w, v = np.linalg.eigh(chi.matrix)
        assert w[-1] == pytest.approx(4.0, abs=1e-10)
        assert np.sum(w > 1e-10) == 1
        # top eigenvector unfolds to the unitary up to a phase
        k = unvec(v[:, -1]) * 2.0
        overlap = abs(np.trace(dagger(k) @ u)) / 4.0
        assert overlap == pytest.approx(1.0, abs=1e-10)

    def test_depolarizing_choi(self):
        d = 2
        depol = Superoperator(np.outer(vec(np.eye(d)) / d, vec(np.eye(d)).conj()))
        chi = to_choi(depol)
        np.testing.assert_allclose(chi.matrix, choi_by_definition(depol.matrix),
                                   atol=1e-14)
        np.testing.assert_allclose(np.linalg.eigvalsh(chi.matrix), 0.5, atol=1e-12)

    def test_matches_definition_on_noisy_channels(self):
        for seed in range(5):
            channel, _ = random_noisy_channel(2, 300 + seed)
            np.testing.assert_allclose(
                to_choi(channel).matrix, choi_by_definition(channel.matrix),
                atol=1e-12)

    def test_kraus_identity_channel(self):
        kraus = choi_to_kraus(to_choi(identity_superoperator(2)))
        assert len(kraus.operators) == 1
        k = kraus.operators[0]
        assert abs(abs(np.trace(k)) - 2.0) <= 1e-10  # identity up to phase

    def test_kraus_unitary_channel(self):
        u = random_haar_unitary(1, 13)
        kraus = choi_to_kraus(to_choi(unitary_superop(u)))
        assert len(kraus.operators) == 1
        overlap = abs(np.trace(dagger(kraus.operators[0]) @ u)) / 2.0
        assert overlap == pytest.approx(1.0, abs=1e-10)

    def test_kraus_amplitude_damping(self):
        gen = build_liouvillian(np.zeros((2, 2)), [JumpTerm(SIGMA_MINUS, np.log(2))])
        channel = propagate(gen, 1.0)
        kraus = choi_to_kraus(to_choi(channel))
        assert len(kraus.operators) == 2
        total = sum(dagger(k) @ k for k in kraus.operators)
        np.testing.assert_allclose(total, np.eye(2), atol=1e-10)
        rebuilt = kraus_to_superop(kraus)
        np.testing.assert_allclose(rebuilt.matrix, channel.matrix, atol=1e-7)

    @pytest.mark.parametrize("n_qubits", [1, 2])
    def test_representation_roundtrip(self, n_qubits):
        for seed in range(10):
            channel, _ = random_noisy_channel(n_qubits, 500 + seed)
            chi = to_choi(channel)
            assert np.linalg.eigvalsh(chi.matrix).min() >= -1e-8
            rebuilt = kraus_to_superop(choi_to_kraus(chi))
            assert np.max(np.abs(rebuilt.matrix - channel.matrix)) <= 1e-7


class TestHaarSampling:
    def test_unitarity(self):
        u = random_haar_unitary(3, 2024)
        assert np.max(np.abs(dagger(u) @ u - np.eye(8))) <= 1e-10

    def test_determinism(self):
        np.testing.assert_array_equal(
            random_haar_unitary(2, 7), random_haar_unitary(2, 7))

    def test_trace_moment(self):
        # E |Tr U|^2 = 1 over the Haar measure
        rng_seeds = range(10_000)
        total = 0.0
        for s in rng_seeds:
            total += abs(np.trace(random_haar_unitary(1, s))) ** 2
        assert total / 10_000 == pytest.approx(1.0, abs=0.05)


class TestScenarios:
    def test_cnot_scenario(self):
        h0, u0 = scenario_hamiltonian("multi_control_not", 2)
        np.testing.assert_array_equal(u0, CNOT)
        phases = np.sort(np.abs(np.linalg.eigvalsh(h0)))
        np.testing.assert_allclose(phases, [0, 0, 0, np.pi], atol=1e-10)
        np.testing.assert_allclose(matrix_exp(-1j * h0), u0, atol=1e-8)

    def test_random_haar_scenario_roundtrip(self):
        h0, u0 = scenario_hamiltonian("random_haar", 2, 99)
        np.testing.assert_allclose(matrix_exp(-1j * h0), u0, atol=1e-8)
        assert np.max(np.abs(h0 - dagger(h0))) <= 1e-12

    @pytest.mark.parametrize("n_qubits", [2, 3, 4])
    def test_multi_control_not_structure(self, n_qubits):
        u = multi_control_not_unitary(n_qubits)
        d = 2 ** n_qubits
        np.testing.assert_array_equal(u @ u, np.eye(d))  # involution
        moved = [x for x in range(d) if not np.isclose(u[x, x].real, 1.0)]
        assert len(moved) == 2  # exactly one control pattern flips the target
        # the flipped states have all control bits set
        for x in moved:
            bits = [(x >> (n_qubits - 1 - q)) & 1 for q in range(n_qubits)]
            assert all(bits[q] for q in range(n_qubits) if q != 1)

    def test_zero_noise_limit_matches_unitary_map(self):
        h0, u0 = scenario_hamiltonian("random_haar", 2, 31)
        spec = NoiseSpec("T1", np.inf, (0, 1))
        gen = build_liouvillian(h0, jump_terms_for_noise(spec, 2))
        channel = propagate(gen, 1.0)
        rng = np.random.default_rng(8)
        for _ in range(5):
            raw = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            raw = raw @ raw.conj().T
            rho = DensityMatrix(raw / np.trace(raw).real)
            out = apply_map(channel, rho)
            np.testing.assert_allclose(
                out.matrix, u0 @ rho.matrix @ dagger(u0), atol=1e-8)

    def test_noise_targets_embedding(self):
        spec = NoiseSpec("T1", 2.0, (1,))
        jumps = jump_terms_for_noise(spec, 2)
        assert len(jumps) == 1
        np.testing.assert_array_equal(
            jumps[0].operator, np.kron(np.eye(2), SIGMA_MINUS))
        assert jumps[0].rate == pytest.approx(0.5)
