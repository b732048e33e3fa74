"""Simulator core: states, gates, circuits, dense lifting, measurement."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gqt import (
    Circuit,
    Controlled,
    DenseUnitary,
    InputError,
    NotUnitaryError,
    QState,
    SingleQubit,
    Swap,
    apply_circuit,
    apply_dense,
    apply_gate,
    bit_reverse,
    circuit_to_dense,
    measure_all,
)

from _oracles import (
    circuit_dense_kron,
    gate_dense_kron,
    random_circuit,
    random_gate,
    random_state,
    random_unitary2,
)

H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)


def test_bit_reverse_small_values():
    assert bit_reverse(0, 3) == 0
    assert bit_reverse(1, 3) == 4
    assert bit_reverse(6, 3) == 3
    assert bit_reverse(5, 3) == 5


def test_bit_reverse_is_an_involution():
    for n in range(1, 7):
        for k in range(1 << n):
            assert bit_reverse(bit_reverse(k, n), n) == k


def test_basis_state_has_single_amplitude():
    s = QState.basis(3, 5)
    expected = np.zeros(8)
    expected[5] = 1.0
    np.testing.assert_allclose(s.amps, expected)
    np.testing.assert_allclose(s.probabilities(), expected)


def test_state_rejects_wrong_norm_and_shape():
    with pytest.raises(InputError):
        QState(2, np.ones(4, dtype=np.complex128))
    with pytest.raises(InputError):
        QState(2, np.zeros(3, dtype=np.complex128))
    with pytest.raises(InputError):
        QState.basis(2, 4)


def test_state_amps_are_read_only():
    s = QState.basis(2, 0)
    with pytest.raises(ValueError):
        s.amps[0] = 0.0


def test_single_qubit_gate_matches_kron_oracle():
    rng = np.random.default_rng(7)
    for n in (1, 2, 4):
        for _ in range(10):
            g = SingleQubit(int(rng.integers(0, n)), random_unitary2(rng))
            v = random_state(n, rng)
            got = apply_gate(QState(n, v), g).amps
            np.testing.assert_allclose(got, gate_dense_kron(g, n) @ v, atol=1e-12)


def test_controlled_gate_matches_kron_oracle():
    rng = np.random.default_rng(8)
    for n in (2, 3, 5):
        for _ in range(15):
            g = random_gate(n, rng)
            v = random_state(n, rng)
            got = apply_gate(QState(n, v), g).amps
            np.testing.assert_allclose(got, gate_dense_kron(g, n) @ v, atol=1e-12)


def test_control_on_zero_branch_fires_only_when_bit_clear():
    g = Controlled(((0, 0),), 1, X)
    np.testing.assert_allclose(apply_gate(QState.basis(2, 0), g).amps, QState.basis(2, 2).amps, atol=1e-15)
    np.testing.assert_allclose(apply_gate(QState.basis(2, 1), g).amps, QState.basis(2, 1).amps, atol=1e-15)


def test_swap_exchanges_qubit_weights():
    # |q1 q0> = |01> --swap(0,1)--> |10>
    out = apply_gate(QState.basis(2, 1), Swap(0, 1))
    np.testing.assert_allclose(out.amps, QState.basis(2, 2).amps)
    rng = np.random.default_rng(9)
    v = random_state(4, rng)
    twice = apply_gate(apply_gate(QState(4, v), Swap(1, 3)), Swap(3, 1))
    np.testing.assert_allclose(twice.amps, v, atol=1e-12)


def test_gate_validation_rejects_malformed_inputs():
    with pytest.raises(NotUnitaryError):
        SingleQubit(0, np.array([[1, 1], [0, 1]], dtype=np.complex128))
    with pytest.raises(InputError):
        Controlled(((1, 2),), 0, X)  # control bit must be 0/1
    with pytest.raises(InputError):
        Controlled(((0, 1),), 0, X)  # target collides with control
    with pytest.raises(InputError):
        Controlled(((0, 1), (0, 0)), 1, X)  # duplicate control qubit
    with pytest.raises(InputError):
        Swap(2, 2)
    with pytest.raises(InputError):
        Circuit(2, (SingleQubit(2, X),))  # target out of range


def test_circuit_application_matches_matrix_product_oracle():
    rng = np.random.default_rng(10)
    for n in (2, 3, 4):
        c = random_circuit(n, rng, length=12)
        v = random_state(n, rng)
        got = apply_circuit(QState(n, v), c).amps
        np.testing.assert_allclose(got, circuit_dense_kron(c) @ v, atol=1e-11)


def test_circuit_to_dense_matches_kron_oracle_and_applies():
    rng = np.random.default_rng(11)
    for n in (1, 2, 3):
        c = random_circuit(n, rng, length=8)
        dense = circuit_to_dense(c)
        np.testing.assert_allclose(dense.entries, circuit_dense_kron(c), atol=1e-11)
        v = random_state(n, rng)
        via_dense = apply_dense(QState(n, v), dense).amps
        via_gates = apply_circuit(QState(n, v), c).amps
        np.testing.assert_allclose(via_dense, via_gates, atol=1e-11)


def test_dense_unitary_rejects_non_unitary():
    with pytest.raises(NotUnitaryError):
        DenseUnitary(1, np.array([[1.0, 0.0], [0.0, 0.5]], dtype=np.complex128))


def test_empty_circuit_is_identity():
    c = Circuit(3, ())
    assert c.gate_count == 0
    np.testing.assert_allclose(circuit_to_dense(c).entries, np.eye(8), atol=0)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=2**31 - 1))
def test_random_circuits_preserve_norm(n, seed):
    rng = np.random.default_rng(seed)
    c = random_circuit(n, rng, length=6)
    out = apply_circuit(QState(n, random_state(n, rng)), c)
    assert abs(np.linalg.norm(out.amps) - 1.0) < 1e-9


def test_measure_all_counts_sum_and_range():
    rng = np.random.default_rng(12)
    state = QState(3, random_state(3, rng))
    hist = measure_all(state, rng_seed=99, shots=4096)
    assert sum(hist.values()) == 4096
    assert all(0 <= k < 8 for k in hist)


def test_measure_all_is_deterministic_per_seed():
    rng = np.random.default_rng(13)
    state = QState(2, random_state(2, rng))
    a = measure_all(state, rng_seed=5, shots=1000)
    b = measure_all(state, rng_seed=5, shots=1000)
    c = measure_all(state, rng_seed=6, shots=1000)
    assert a == b
    assert a != c  # different stream almost surely differs


def test_measure_all_on_basis_state_is_a_point_mass():
    hist = measure_all(QState.basis(4, 11), rng_seed=3, shots=500)
    assert hist == {11: 500}


def test_measure_all_frequencies_track_probabilities():
    amps = np.sqrt(np.array([0.5, 0.25, 0.125, 0.125], dtype=np.complex128))
    state = QState(2, amps)
    shots = 100_000
    hist = measure_all(state, rng_seed=2024, shots=shots)
    for k, p in enumerate([0.5, 0.25, 0.125, 0.125]):
        sigma = np.sqrt(p * (1 - p) / shots)
        assert abs(hist.get(k, 0) / shots - p) < 4 * sigma
