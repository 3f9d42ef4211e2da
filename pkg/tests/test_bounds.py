"""Inequality oracles: hand values, equality cases, seeded sweeps."""

import math

import numpy as np
import pytest

from qclab import bounds, qcore
from qclab.bounds import (
    BoundCheck,
    aggregate_checks,
    haar_concentration_check,
    make_check,
    mixed_fidelity_check,
    projector_distance_check,
    trace_product_check,
    welch_check,
    welch_sweep,
)
from qclab.errors import BadDistribution
from qclab.rng import Rng


def test_make_check_margins():
    assert make_check("x", 1.0, 2.0, "<=", 0.0, {}).margin == pytest.approx(1.0)
    assert make_check("x", 1.0, 2.0, ">=", 0.0, {}).margin == pytest.approx(-1.0)
    assert make_check("x", 1.0, 1.0, "==", 0.0, {}).holds
    assert not make_check("x", 1.0, 2.0, ">=", 0.5, {}).holds


def test_aggregate_reports_worst_instance():
    checks = [
        make_check("a", 1.0, 0.0, ">=", 0.0, {"i": 0}),
        make_check("b", 0.1, 0.0, ">=", 0.0, {"i": 1}),
    ]
    agg = aggregate_checks("agg", checks)
    assert agg.holds
    assert agg.witness["worst"] == {"i": 1}


# ---------------------------------------------------------------------------
# overlap floor
# ---------------------------------------------------------------------------


def test_welch_single_state():
    check = welch_check([qcore.basis_state(1, 0)], np.array([1.0]))
    assert check.lhs == pytest.approx(1.0)
    assert check.holds


def test_welch_orthonormal_uniform_is_tight():
    states = [qcore.basis_state(2, i) for i in range(4)]
    check = welch_check(states, np.full(4, 0.25))
    assert check.lhs == pytest.approx(0.25, abs=1e-12)
    assert abs(check.lhs - check.rhs) <= 1e-9


def test_welch_sweep_holds_on_random_ensembles():
    checks = welch_sweep(100, Rng(1))
    assert all(c.holds for c in checks)
    assert min(c.margin for c in checks) >= -1e-9


def test_welch_higher_moment():
    rng = Rng(2)
    states = [qcore.haar_sample(1, rng.child(f"s{i}")) for i in range(6)]
    check = welch_check(states, np.full(6, 1 / 6), k=2)
    assert check.rhs == pytest.approx(1.0 / math.comb(2 + 1, 2))
    assert check.holds


def test_welch_bad_distribution():
    states = [qcore.basis_state(1, 0), qcore.basis_state(1, 1)]
    with pytest.raises(BadDistribution):
        welch_check(states, np.array([0.7, 0.7]))
    with pytest.raises(BadDistribution):
        welch_check(states, np.array([1.5, -0.5]))


# ---------------------------------------------------------------------------
# Haar tail
# ---------------------------------------------------------------------------


def test_haar_tail_threshold_zero_is_certain():
    check = haar_concentration_check(1, 0.0, 500, Rng(3))
    assert check.lhs == pytest.approx(1.0)
    assert check.rhs == pytest.approx(1.0)
    assert check.holds


def test_haar_tail_threshold_one_is_null():
    check = haar_concentration_check(1, 1.0, 500, Rng(4))
    assert check.lhs == pytest.approx(0.0)
    assert check.rhs == pytest.approx(0.0)
    assert check.holds


def test_haar_tail_two_qubits_half():
    # (1 - 0.5)^(2^2 - 1) = 0.5^3 = 0.125; Monte Carlo confirms the exponent
    check = haar_concentration_check(2, 0.5, 20_000, Rng(5))
    assert check.rhs == pytest.approx(0.125)
    assert check.holds


# ---------------------------------------------------------------------------
# trace product / mixed fidelity / projector
# ---------------------------------------------------------------------------


def test_trace_product_self_pair():
    rho = qcore.induced_mixed_sample(2, Rng(6))
    lhs = float(np.real(np.trace(rho.matrix @ rho.matrix)))
    assert lhs <= qcore.fidelity(rho, rho) + 1e-9


def test_trace_product_sweep():
    checks = trace_product_check(200, 2, Rng(7))
    assert all(c.holds for c in checks)


def test_mixed_fidelity_single_pure_state_equality():
    checks = mixed_fidelity_check(0, 3, 5, Rng(8))
    for c in checks:
        assert c.holds
        assert c.lhs == pytest.approx(2.0 ** -3, abs=1e-9)


def test_mixed_fidelity_sweep():
    checks = mixed_fidelity_check(2, 3, 50, Rng(9))
    assert all(c.holds for c in checks)
    with pytest.raises(ValueError):
        mixed_fidelity_check(8, 3, 1, Rng(9))


def test_projector_equal_matrices_all_zero():
    # A = B: the attained value and the distance are both zero
    diff = np.zeros((4, 4), dtype=complex)
    proj = qcore.positive_part_projector(diff)
    assert np.real(np.trace(proj.matrix @ diff)) == pytest.approx(0.0)
    assert qcore.trace_norm(diff) == pytest.approx(0.0)


def test_projector_hand_instance():
    # A - B = diag(1, -1): max Tr(P(A-B)) = 1 = trace_norm + trace/2
    diff = np.diag([1.0, -1.0]).astype(complex)
    proj = qcore.positive_part_projector(diff)
    assert np.real(np.trace(proj.matrix @ diff)) == pytest.approx(1.0)
    assert qcore.trace_norm(diff) + np.real(np.trace(diff)) / 2 == pytest.approx(1.0)


def test_projector_sweep():
    checks = projector_distance_check(200, 2, Rng(10))
    assert all(c.holds for c in checks)
    assert min(c.margin for c in checks) >= -1e-9


def test_bound_check_serialization_round_trip():
    check = make_check("name", 0.5, 1.0, "<=", 1e-9, {"seed": 3})
    data = check.to_dict()
    clone = BoundCheck(**data)
    assert clone == check
