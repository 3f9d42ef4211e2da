"""Codes, fingerprints, phase encoding, PRG ensembles, commitments."""

import math

import numpy as np
import pytest

from qclab import constructions, qcore
from qclab.constructions import (
    Fingerprint,
    LinearCode,
    RandomOracle,
    build_linear_code,
    certify_code,
    commitment_from_states,
    digit_split,
    fingerprint_overlap,
    fingerprint_owsg,
    fingerprint_state,
    flavor_convert,
    make_fingerprint,
    phase_digit_overlap,
    phase_overlap_ceiling,
    phase_owsg,
    phase_state,
    prg_commitment,
    prg_efi,
    prsg_to_owsg,
    prsg_verifier_slack,
    qrom_fingerprint,
    qrom_overlap,
)
from qclab.errors import SearchExhausted
from qclab.primitives import (
    ToyPrg,
    make_haar_prsg,
    make_toy_owf,
    make_toy_prg,
    reveal_verify,
    scheme_correctness,
)
from qclab.rng import Rng


# ---------------------------------------------------------------------------
# linear codes
# ---------------------------------------------------------------------------


def test_repetition_code_distance():
    code = certify_code(1, 3, [0b111])
    assert code.d_min == 3
    assert code.delta == pytest.approx(0.0)


def test_encode_is_linear():
    code = build_linear_code(4, 16, Rng(1))
    for x in range(16):
        for y in range(16):
            assert code.encode(x ^ y) == code.encode(x) ^ code.encode(y)


def test_minimum_distance_matches_direct_enumeration():
    # oracle: weight of every XOR subset of the rows, computed independently
    rng = Rng(2)
    rows = [rng.bits(10) for _ in range(4)]
    code = certify_code(4, 10, rows)
    weights = []
    for msg in range(1, 16):
        word = 0
        for j in range(4):
            if (msg >> j) & 1:
                word ^= rows[j]
        weights.append(bin(word).count("1"))
    assert code.d_min == min(weights)


def test_distinct_codewords_agree_on_at_most_delta_m():
    code = build_linear_code(3, 12, Rng(3))
    for x in range(8):
        for y in range(8):
            if x != y:
                assert code.agreement(x, y) <= code.delta * code.block_bits + 1e-9


def test_search_exhausted_carries_best_code():
    with pytest.raises(SearchExhausted) as err:
        build_linear_code(2, 8, Rng(4), target_delta=0.0, max_tries=5)
    assert isinstance(err.value.best, LinearCode)


def test_code_descriptor_round_trip():
    code = build_linear_code(5, 20, Rng(5))
    clone = LinearCode.from_descriptor(code.to_descriptor())
    assert clone == code


# ---------------------------------------------------------------------------
# fingerprints
# ---------------------------------------------------------------------------


def test_fingerprint_identical_inputs_overlap_one():
    code = certify_code(1, 3, [0b111])
    fp = make_fingerprint(code, 0.5)
    s = fingerprint_state(fp, 1)
    assert abs(s.overlap(s)) == pytest.approx(1.0, abs=1e-12)


def test_repetition_fingerprint_orthogonal_messages():
    # the two codewords 000/111 disagree everywhere, so the states are
    # exactly orthogonal already at one repetition
    code = certify_code(1, 3, [0b111])
    fp = make_fingerprint(code, 0.5)
    assert fp.repetitions == 1
    s0, s1 = fingerprint_state(fp, 0), fingerprint_state(fp, 1)
    assert abs(s0.overlap(s1)) == pytest.approx(0.0, abs=1e-12)


def test_fingerprint_overlap_equals_agreement_fraction_power():
    rng = Rng(6)
    code = build_linear_code(3, 8, rng)
    fp = make_fingerprint(code, 0.5)
    for x in range(8):
        for y in range(8):
            direct = abs(fingerprint_state(fp, x).overlap(fingerprint_state(fp, y)))
            assert direct == pytest.approx(fingerprint_overlap(fp, x, y), abs=1e-10)


def test_repetition_count_reaches_eta():
    code = certify_code(2, 8, [0b00001111, 0b11110000])
    fp = make_fingerprint(code, 0.3)
    assert fp.overlap_bound() <= 0.3
    assert fp.total_qubits == fp.repetitions * fp.qubits_per_block


def test_fingerprint_owsg_verifier_behaviour():
    rng = Rng(7)
    owf = make_toy_owf(4, 2, rng.child("owf"))
    scheme = fingerprint_owsg(owf, 0.5, rng.child("code"), block_bits=8, target_delta=0.5)
    eta = 0.5
    assert scheme_correctness(scheme) == pytest.approx(1.0, abs=1e-12)
    for k in range(16):
        for kp in range(16):
            accept = scheme.verifier(kp, scheme.challenge(k))
            if owf(k) == owf(kp):
                assert accept == pytest.approx(1.0, abs=1e-9)
            else:
                assert accept <= eta ** 2 + 1e-9


# ---------------------------------------------------------------------------
# phase encoding
# ---------------------------------------------------------------------------


def test_digit_split_big_endian():
    assert digit_split(0b10110001, 8, 16) == (0b1011, 0b0001)
    assert digit_split(0b1, 8, 16) == (0, 1)
    # 5 bits with 2-bit digits: left-padded to three digits
    assert digit_split(0b10111, 5, 4) == (0b01, 0b01, 0b11)


def test_phase_digit_overlap_adjacent_quarter_turn():
    # alphabet 4, difference 1: |(1 + i)/2| = 1/sqrt(2)
    assert phase_digit_overlap(0, 1, 4) == pytest.approx(1 / math.sqrt(2), abs=1e-12)


def test_phase_overlap_ceiling_formula():
    lam = 16
    assert phase_overlap_ceiling(lam) == pytest.approx(
        math.sqrt((1 + math.cos(2 * math.pi / lam)) / 2), abs=1e-15
    )
    for y in range(1, lam):
        assert phase_digit_overlap(0, y, lam) <= phase_overlap_ceiling(lam) + 1e-12


def test_phase_state_matches_digit_overlap_product():
    lam = 8
    a, b = (1, 5), (3, 5)
    direct = abs(phase_state(a, lam).overlap(phase_state(b, lam)))
    product = phase_digit_overlap(a[0], b[0], lam) * phase_digit_overlap(a[1], b[1], lam)
    assert direct == pytest.approx(product, abs=1e-12)


def test_phase_owsg_correctness():
    owf = make_toy_owf(4, 8, Rng(8))
    scheme = phase_owsg(owf, 16)
    assert scheme.output_qubits == 2
    assert scheme_correctness(scheme) == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------------------------
# projection wrapper
# ---------------------------------------------------------------------------


def test_prsg_to_owsg_projection_verifier():
    prsg = make_haar_prsg(3, 2, Rng(9))
    scheme = prsg_to_owsg(prsg)
    assert scheme_correctness(scheme) == pytest.approx(1.0, abs=1e-12)
    accept = scheme.verifier(1, scheme.challenge(0))
    assert accept == pytest.approx(
        abs(prsg.state(1).overlap(prsg.state(0))) ** 2, abs=1e-12
    )


def test_prsg_verifier_slack_values():
    assert prsg_verifier_slack(4, 2, 1.0) == pytest.approx(1.0)
    # 16 * 0.75^3 + 0.25 = 7.0 (vacuous at this scale)
    assert prsg_verifier_slack(4, 2, 0.25) == pytest.approx(7.0)


# ---------------------------------------------------------------------------
# PRG ensemble
# ---------------------------------------------------------------------------


def test_prg_efi_injective_fidelity_and_distance():
    prg = make_toy_prg(2, Rng(10))
    pair = prg_efi(prg)
    assert pair.fidelity() == pytest.approx(2.0 ** -2, abs=1e-10)
    assert pair.trace_distance() >= 1.0 - 2.0 ** -1 - 1e-10


def test_prg_efi_identity_prg_half_distance():
    # G(x) = xx on one bit: support {00, 11} with weight 1/2 each, so the
    # classical L1 distance to uniform is 1 and the trace distance is 1/2
    prg = ToyPrg(1, 2, np.array([0b00, 0b11]), "custom", 0, True)
    pair = prg_efi(prg)
    assert pair.trace_distance() == pytest.approx(0.5, abs=1e-12)


def test_prg_efi_states_are_diagonal():
    pair = prg_efi(make_toy_prg(3, Rng(11)))
    for b in (0, 1):
        mat = pair.state_gen(b).matrix
        off = mat - np.diag(np.diag(mat))
        assert np.max(np.abs(off)) <= 1e-12


# ---------------------------------------------------------------------------
# PRG commitment and flavor conversion
# ---------------------------------------------------------------------------


def test_prg_commitment_states_match_definition():
    prg = make_toy_prg(2, Rng(12))
    c = prg_commitment(prg)
    n = 2
    dim_c = 1 << (2 * n)
    psi0 = c.commit_state(0).amplitudes.reshape(dim_c, dim_c)
    # rows x0^n, columns G(x)
    for x in range(1 << n):
        r = x << n
        assert psi0[r, prg(x)] == pytest.approx(1 / math.sqrt(1 << n), abs=1e-12)
    psi1 = c.commit_state(1).amplitudes.reshape(dim_c, dim_c)
    np.testing.assert_allclose(psi1, np.eye(dim_c) / math.sqrt(dim_c), atol=1e-12)


def test_prg_commitment_reveal_and_binding():
    prg = make_toy_prg(2, Rng(13))
    c = prg_commitment(prg)
    for b in (0, 1):
        assert reveal_verify(c, b, c.commit_state(b)) == pytest.approx(1.0, abs=1e-9)
    from qclab.primitives import honest_binding_optimum

    assert honest_binding_optimum(c).optimum <= 2.0 ** -2 + 1e-9


def test_prg_commitment_uniform_marginal_for_flavor_one():
    c = prg_commitment(make_toy_prg(2, Rng(14)))
    marginal = c.commit_marginal(1)
    np.testing.assert_allclose(
        marginal.matrix, np.eye(16) / 16, atol=1e-12
    )


def test_flavor_convert_registers_and_orthogonality():
    c = prg_commitment(make_toy_prg(2, Rng(15)))
    converted = flavor_convert(c)
    assert converted.reveal_qubits == c.commit_qubits
    assert converted.commit_qubits == c.reveal_qubits + 1
    for b in (0, 1):
        assert reveal_verify(converted, b, converted.commit_state(b)) == pytest.approx(
            1.0, abs=1e-9
        )
    overlap = converted.commit_state(0).overlap(converted.commit_state(1))
    assert abs(overlap) == pytest.approx(0.0, abs=1e-10)


def test_flavor_convert_twice_keeps_reveal_correctness():
    base = commitment_from_states(
        qcore.haar_sample(2, Rng(16)), qcore.haar_sample(2, Rng(17)), 1
    )
    twice = flavor_convert(flavor_convert(base))
    for b in (0, 1):
        assert reveal_verify(twice, b, twice.commit_state(b)) == pytest.approx(1.0, abs=1e-8)


# ---------------------------------------------------------------------------
# random-oracle fingerprint
# ---------------------------------------------------------------------------


def test_qrom_fingerprint_self_overlap():
    oracle = RandomOracle(3, input_bits=2 + 3)
    s = qrom_fingerprint(oracle, 3, 1, 2)
    assert abs(s.overlap(s)) == pytest.approx(1.0, abs=1e-12)


def test_qrom_fingerprint_exhaustive_pair_scan():
    m, ell = 3, 2
    oracle = RandomOracle(99, input_bits=ell + m)
    states = [qrom_fingerprint(oracle, m, x, ell) for x in range(1 << ell)]
    for x in range(4):
        for y in range(x + 1, 4):
            direct = states[x].overlap(states[y]).real
            assert direct == pytest.approx(qrom_overlap(oracle, m, x, y), abs=1e-12)


def test_constructions_are_deterministic_in_seed():
    def build():
        rng = Rng(123)
        owf = make_toy_owf(4, 4, rng.child("owf"))
        scheme = fingerprint_owsg(
            owf, 0.5, rng.child("code"), block_bits=16, target_delta=0.5625,
            max_tries=500,
        )
        return scheme.metadata

    assert build() == build()


def test_qrom_constant_oracle_gives_overlap_one():
    class ConstantOracle(RandomOracle):
        def bit(self, value):
            return 0

    oracle = ConstantOracle(0, input_bits=2 + 2)
    s0 = qrom_fingerprint(oracle, 2, 0, 2)
    s1 = qrom_fingerprint(oracle, 2, 3, 2)
    assert abs(s0.overlap(s1)) == pytest.approx(1.0, abs=1e-12)
