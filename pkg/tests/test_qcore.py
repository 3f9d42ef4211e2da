"""Core linear-algebra operations against hand-computed and enumerated values."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qclab import caps, qcore
from qclab.errors import CapExceeded, DimensionMismatch, IndexOutOfRange, NotHermitian
from qclab.qcore import DensityMatrix, HermitianMatrix, Projector, PureState
from qclab.rng import Rng


def bell_pair() -> PureState:
    return PureState(2, np.array([1, 0, 0, 1]) / np.sqrt(2))


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------


def test_pure_state_requires_normalization():
    with pytest.raises(ValueError):
        PureState(1, np.array([1.0, 1.0]))


def test_pure_state_requires_power_of_two_length():
    with pytest.raises(ValueError):
        PureState(2, np.array([1.0, 0.0]))


def test_density_matrix_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        DensityMatrix(1, np.array([[0.5, 0.4], [0.1, 0.5]]))


def test_density_matrix_rejects_negative_eigenvalue():
    with pytest.raises(ValueError):
        DensityMatrix(1, np.array([[1.5, 0.0], [0.0, -0.5]]))


def test_projector_rejects_non_idempotent():
    with pytest.raises(ValueError):
        Projector(2, np.array([[0.5, 0.0], [0.0, 0.5]]))


def test_hermitian_matrix_allows_negative_trace():
    HermitianMatrix(2, np.array([[-3.0, 0.0], [0.0, 1.0]]))


# ---------------------------------------------------------------------------
# tensor / partial trace
# ---------------------------------------------------------------------------


def test_tensor_basis_states():
    product = qcore.tensor(qcore.basis_state(1, 0), qcore.basis_state(1, 1))
    expected = np.zeros(4)
    expected[1] = 1.0
    np.testing.assert_allclose(product.amplitudes, expected)


def test_tensor_with_maximally_mixed_keeps_trace():
    rho = qcore.induced_mixed_sample(1, Rng(0))
    product = qcore.tensor(rho, qcore.maximally_mixed(1))
    assert abs(np.trace(product.matrix) - 1.0) < 1e-12


def test_tensor_plus_projectors_is_uniform_matrix():
    # hand Kronecker expansion: every entry of |+><+| ox |+><+| is 1/4
    plus = qcore.plus_state().to_density()
    product = qcore.tensor(plus, plus)
    np.testing.assert_allclose(product.matrix, np.full((4, 4), 0.25), atol=1e-12)


def test_tensor_cap():
    small = qcore.basis_state(1, 0)
    state = qcore.basis_state(caps.qubit_cap(), 0)
    with pytest.raises(CapExceeded):
        qcore.tensor(state, small)


def test_partial_trace_product_state():
    joint = qcore.tensor(qcore.basis_state(1, 0), qcore.basis_state(1, 1)).to_density()
    reduced = qcore.partial_trace(joint, [0])
    np.testing.assert_allclose(reduced.matrix, [[1, 0], [0, 0]], atol=1e-12)


def test_partial_trace_bell_marginal_is_maximally_mixed():
    reduced = qcore.partial_trace(bell_pair().to_density(), [0])
    np.testing.assert_allclose(reduced.matrix, np.eye(2) / 2, atol=1e-12)


def test_partial_trace_keep_all_is_identity():
    rho = qcore.induced_mixed_sample(2, Rng(5))
    np.testing.assert_allclose(qcore.partial_trace(rho, [0, 1]).matrix, rho.matrix, atol=1e-12)


def test_partial_trace_bad_index():
    with pytest.raises(IndexOutOfRange):
        qcore.partial_trace(qcore.maximally_mixed(2), [3])


def test_partial_trace_recovers_tensor_factors():
    rng = Rng(9)
    a = qcore.induced_mixed_sample(1, rng.child("a"))
    b = qcore.induced_mixed_sample(2, rng.child("b"))
    joint = qcore.tensor(a, b)
    np.testing.assert_allclose(qcore.partial_trace(joint, [0]).matrix, a.matrix, atol=1e-10)
    np.testing.assert_allclose(qcore.partial_trace(joint, [1, 2]).matrix, b.matrix, atol=1e-10)


def test_partial_trace_of_pure_state_matches_density_route():
    psi = qcore.haar_sample(3, Rng(31))
    direct = qcore.partial_trace(psi, [0, 2])
    via_density = qcore.partial_trace(psi.to_density(), [0, 2])
    np.testing.assert_allclose(direct.matrix, via_density.matrix, atol=1e-12)


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------


def test_trace_distance_identical_and_orthogonal():
    zero = qcore.basis_state(1, 0).to_density()
    one = qcore.basis_state(1, 1).to_density()
    assert qcore.trace_distance(zero, zero) == pytest.approx(0.0, abs=1e-12)
    assert qcore.trace_distance(zero, one) == pytest.approx(1.0, abs=1e-12)


def test_trace_distance_zero_vs_plus():
    # pure-state law with overlap 1/2: sqrt(1 - 1/2)
    zero = qcore.basis_state(1, 0).to_density()
    plus = qcore.plus_state().to_density()
    assert qcore.trace_distance(zero, plus) == pytest.approx(math.sqrt(0.5), abs=1e-12)


def test_trace_distance_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        qcore.trace_distance(qcore.maximally_mixed(1), qcore.maximally_mixed(2))


def test_fidelity_with_self_and_mixed():
    rho = qcore.induced_mixed_sample(2, Rng(1))
    assert qcore.fidelity(rho, rho) == pytest.approx(1.0, abs=1e-9)
    zero = qcore.basis_state(3, 0).to_density()
    assert qcore.fidelity(zero, qcore.maximally_mixed(3)) == pytest.approx(2 ** -3, abs=1e-12)


def test_trace_product_below_fidelity_on_random_pair():
    rng = Rng(2)
    rho = qcore.induced_mixed_sample(2, rng.child("a"))
    sigma = qcore.induced_mixed_sample(2, rng.child("b"))
    tr_prod = float(np.real(np.trace(rho.matrix @ sigma.matrix)))
    assert tr_prod <= qcore.fidelity(rho, sigma) + 1e-12


def test_distance_and_fidelity_symmetry_and_range():
    rng = Rng(77)
    for i in range(1000):
        stream = rng.child(f"pair-{i}")
        a = qcore.induced_mixed_sample(1, stream.child("a"))
        b = qcore.induced_mixed_sample(1, stream.child("b"))
        td_ab = qcore.trace_distance(a, b)
        fid_ab = qcore.fidelity(a, b)
        assert -1e-12 <= td_ab <= 1.0 + 1e-12
        assert -1e-9 <= fid_ab <= 1.0 + 1e-9
        assert abs(td_ab - qcore.trace_distance(b, a)) < 1e-9
        assert abs(fid_ab - qcore.fidelity(b, a)) < 1e-9


def test_pure_state_distance_overlap_law():
    rng = Rng(13)
    for i in range(200):
        stream = rng.child(f"pair-{i}")
        psi = qcore.haar_sample(2, stream.child("psi"))
        phi = qcore.haar_sample(2, stream.child("phi"))
        td = qcore.trace_distance(psi.to_density(), phi.to_density())
        assert td ** 2 + qcore.pure_overlap_sq(psi, phi) == pytest.approx(1.0, abs=1e-8)


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------


def test_spectral_decompose_diagonal():
    pairs = qcore.spectral_decompose(np.diag([3.0, -1.0]).astype(complex))
    assert pairs[0][0] == pytest.approx(3.0)
    assert pairs[1][0] == pytest.approx(-1.0)
    np.testing.assert_allclose(np.abs(pairs[0][1]), [1, 0], atol=1e-12)


def test_spectral_decompose_pauli_x():
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    pairs = qcore.spectral_decompose(x)
    assert [round(v) for v, _ in pairs] == [1, -1]
    # phase fixing makes the dominant component real-positive
    np.testing.assert_allclose(pairs[0][1], np.array([1, 1]) / np.sqrt(2), atol=1e-9)
    np.testing.assert_allclose(np.abs(pairs[1][1]), np.array([1, 1]) / np.sqrt(2), atol=1e-9)


def test_spectral_decompose_reconstruction():
    h = qcore.random_hermitian(8, Rng(4))
    pairs = qcore.spectral_decompose(h)
    rebuilt = sum(val * np.outer(vec, vec.conj()) for val, vec in pairs)
    assert np.max(np.abs(rebuilt - h)) < 1e-7
    vectors = np.stack([vec for _, vec in pairs])
    np.testing.assert_allclose(vectors @ vectors.conj().T, np.eye(8), atol=1e-7)


def test_spectral_decompose_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        qcore.spectral_decompose(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_positive_part_projector_diagonal():
    proj = qcore.positive_part_projector(np.diag([1.0, -1.0]).astype(complex))
    np.testing.assert_allclose(proj.matrix, np.diag([1.0, 0.0]), atol=1e-12)


def test_positive_part_projector_zero_matrix_is_identity():
    proj = qcore.positive_part_projector(np.zeros((4, 4), dtype=complex))
    np.testing.assert_allclose(proj.matrix, np.eye(4), atol=1e-12)


def test_positive_part_attains_distance_plus_half_trace():
    # oracle: sum of nonnegative eigenvalues, computed directly
    rng = Rng(6)
    a = qcore.induced_mixed_sample(2, rng.child("a")).matrix
    b = qcore.induced_mixed_sample(2, rng.child("b")).matrix
    diff = a - b
    proj = qcore.positive_part_projector(diff)
    attained = float(np.real(np.trace(proj.matrix @ diff)))
    eigs = np.linalg.eigvalsh(diff)
    assert attained == pytest.approx(float(np.sum(eigs[eigs >= 0])), abs=1e-10)
    assert attained == pytest.approx(
        qcore.trace_norm(diff) + float(np.real(np.trace(diff))) / 2.0, abs=1e-10
    )


# ---------------------------------------------------------------------------
# measurement, swap test, sampling
# ---------------------------------------------------------------------------


def test_measure_certain_outcomes():
    rng = Rng(8)
    mixed = qcore.maximally_mixed(1)
    identity = qcore.identity_projector(1)
    zero = Projector(2, np.zeros((2, 2), dtype=complex))
    assert all(qcore.measure(mixed, identity, rng.child(f"i{i}")) == 1 for i in range(20))
    assert all(qcore.measure(mixed, zero, rng.child(f"z{i}")) == 0 for i in range(20))


def test_measure_born_rate():
    rng = Rng(12)
    plus = qcore.plus_state().to_density()
    proj = qcore.basis_state(1, 0).to_density()
    projector = Projector(2, proj.matrix)
    hits = sum(qcore.measure(plus, projector, rng.child(f"t{i}")) for i in range(10_000))
    assert abs(hits / 10_000 - 0.5) < 3 * 0.005


def test_swap_test_accept_probabilities():
    psi = qcore.haar_sample(1, Rng(3))
    assert qcore.swap_test_accept_prob(psi, psi) == pytest.approx(1.0, abs=1e-12)
    zero, one = qcore.basis_state(1, 0), qcore.basis_state(1, 1)
    assert qcore.swap_test_accept_prob(zero, one) == pytest.approx(0.5, abs=1e-12)
    mixed = qcore.maximally_mixed(1)
    assert qcore.swap_test_accept_prob(mixed, mixed) == pytest.approx(0.75, abs=1e-12)


def test_haar_sample_zero_qubits():
    state = qcore.haar_sample(0, Rng(1))
    assert state.dim == 1
    assert abs(abs(state.amplitudes[0]) - 1.0) < 1e-12


def test_haar_sample_cap():
    with pytest.raises(CapExceeded):
        qcore.haar_sample(caps.qubit_cap() + 1, Rng(1))


def test_haar_mean_overlap_with_basis_state():
    # Monte Carlo against the analytic first moment 2^-m
    rng = Rng(21)
    samples = 30_000
    total = sum(
        abs(qcore.haar_sample(2, rng.child(f"s{i}")).amplitudes[0]) ** 2
        for i in range(samples)
    )
    mean = total / samples
    sigma = math.sqrt(0.0375 / samples)
    assert abs(mean - 0.25) < 3 * sigma + 1e-4


def test_haar_tail_single_qubit():
    # Pr[|<psi|0>|^2 >= 0.5] = (1 - 0.5)^(2^1 - 1) = 0.5
    rng = Rng(22)
    samples = 20_000
    hits = sum(
        abs(qcore.haar_sample(1, rng.child(f"s{i}")).amplitudes[0]) ** 2 >= 0.5
        for i in range(samples)
    )
    assert abs(hits / samples - 0.5) < 3 * math.sqrt(0.25 / samples)


def test_measurement_transcript_reproducible():
    plus = qcore.plus_state().to_density()
    projector = Projector(2, qcore.basis_state(1, 0).to_density().matrix)

    def transcript(seed):
        rng = Rng(seed)
        return [qcore.measure(plus, projector, rng.child(f"t{i}")) for i in range(64)]

    assert transcript(99) == transcript(99)
    assert transcript(99) != transcript(100)


# ---------------------------------------------------------------------------
# property-based checks
# ---------------------------------------------------------------------------


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), left=st.integers(1, 2), right=st.integers(1, 2))
def test_tensor_then_partial_trace_roundtrip(seed, left, right):
    rng = Rng(seed)
    a = qcore.haar_sample(left, rng.child("a")).to_density()
    b = qcore.haar_sample(right, rng.child("b")).to_density()
    joint = qcore.tensor(a, b)
    recovered = qcore.partial_trace(joint, range(left))
    assert np.max(np.abs(recovered.matrix - a.matrix)) < 1e-10


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), qubits=st.integers(1, 3))
def test_trace_distance_triangle_inequality(seed, qubits):
    rng = Rng(seed)
    a = qcore.induced_mixed_sample(qubits, rng.child("a"))
    b = qcore.induced_mixed_sample(qubits, rng.child("b"))
    c = qcore.induced_mixed_sample(qubits, rng.child("c"))
    assert qcore.trace_distance(a, c) <= (
        qcore.trace_distance(a, b) + qcore.trace_distance(b, c) + 1e-10
    )


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_born_probability_in_unit_interval(seed):
    rng = Rng(seed)
    state = qcore.induced_mixed_sample(2, rng.child("state"))
    projector = qcore.positive_part_projector(qcore.random_hermitian(4, rng.child("h")))
    p = qcore.born_probability(state, projector)
    assert 0.0 <= p <= 1.0
