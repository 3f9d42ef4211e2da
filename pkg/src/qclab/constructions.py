"""Upper-bound constructions.

Code-based fingerprint states and the keyed scheme built on them, the
phase-encoding scheme for weak one-wayness, the projection-verifier
wrapper around a keyed state generator, the PRG-based two-state ensemble
and canonical commitment, flavor conversion, and the random-oracle
fingerprint variant.
"""

from __future__ import annotations

import math
import hashlib
from dataclasses import dataclass

import numpy as np

from . import qcore
from .caps import check_qubits
from .errors import SearchExhausted
from .prep import PrepCircuit
from .primitives import (
    CanonicalCommitment,
    EfiPair,
    HaarPrsg,
    OwsgScheme,
    ToyOwf,
    ToyPrg,
    projection_scheme,
)
from .qcore import DensityMatrix, PureState
from .rng import Rng


# ---------------------------------------------------------------------------
# binary linear codes with certified distance
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearCode:
    """GF(2) code given by generator rows, with exhaustively certified
    minimum distance.

    ``rows[j]`` is the codeword (an ``block_bits``-bit integer) of the unit
    message with bit j set; encoding XORs the rows selected by the message
    bits.  ``delta`` = 1 - d_min/m is the largest fraction of positions on
    which two distinct codewords can agree.
    """

    message_bits: int
    block_bits: int
    rows: tuple[int, ...]
    d_min: int
    delta: float
    seed: int | None = None

    def __post_init__(self):
        if len(self.rows) != self.message_bits:
            raise ValueError("need one generator row per message bit")

    def encode(self, x: int) -> int:
        word = 0
        for j in range(self.message_bits):
            if (x >> j) & 1:
                word ^= self.rows[j]
        return word

    def codeword_bits(self, x: int) -> np.ndarray:
        word = self.encode(x)
        return np.array([(word >> i) & 1 for i in range(self.block_bits)], dtype=np.int64)

    def agreement(self, x: int, y: int) -> int:
        """Number of positions where the codewords of x and y agree."""
        return self.block_bits - (self.encode(x) ^ self.encode(y)).bit_count()

    def to_descriptor(self) -> dict:
        return {
            "l": self.message_bits,
            "m": self.block_bits,
            "generator": [format(row, "x") for row in self.rows],
            "d_min": self.d_min,
            "delta": self.delta,
            "seed": self.seed,
        }

    @classmethod
    def from_descriptor(cls, descriptor: dict) -> "LinearCode":
        rows = tuple(int(h, 16) for h in descriptor["generator"])
        code = certify_code(
            descriptor["l"], descriptor["m"], rows, seed=descriptor.get("seed")
        )
        if code.d_min != descriptor["d_min"]:
            raise ValueError("descriptor d_min does not match the generator")
        return code


def minimum_distance(rows: tuple[int, ...], message_bits: int) -> int:
    """Exhaustive minimum weight over nonzero codewords (Gray-code walk)."""
    best = None
    word = 0
    for i in range(1, 1 << message_bits):
        word ^= rows[(i & -i).bit_length() - 1]
        weight = word.bit_count()
        if best is None or weight < best:
            best = weight
            if best == 0:
                break
    return best or 0


def certify_code(message_bits: int, block_bits: int, rows, seed: int | None = None) -> LinearCode:
    rows = tuple(int(r) for r in rows)
    d_min = minimum_distance(rows, message_bits)
    return LinearCode(
        message_bits=message_bits,
        block_bits=block_bits,
        rows=rows,
        d_min=d_min,
        delta=1.0 - d_min / block_bits,
        seed=seed,
    )


def build_linear_code(
    message_bits: int,
    block_bits: int,
    rng: Rng,
    *,
    target_delta: float = 11.0 / 12.0,
    max_tries: int = 200,
) -> LinearCode:
    """Draw random generator matrices until delta <= target_delta.

    Every candidate's distance is certified exhaustively (message_bits is
    capped at 16 for that reason).  Raises SearchExhausted carrying the
    best code found if no draw meets the target.
    """
    if message_bits > 16:
        raise ValueError("exhaustive distance certification is capped at 16 message bits")
    best: LinearCode | None = None
    for attempt in range(max_tries):
        stream = rng.child(f"code-try-{attempt}")
        rows = tuple(stream.bits(block_bits) for _ in range(message_bits))
        code = certify_code(message_bits, block_bits, rows, seed=rng.seed)
        if best is None or code.d_min > best.d_min:
            best = code
        if code.delta <= target_delta:
            return code
    raise SearchExhausted(
        f"no code with delta <= {target_delta} in {max_tries} tries "
        f"(best delta {best.delta if best else 'n/a'})",
        best=best,
    )


# ---------------------------------------------------------------------------
# fingerprint states
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    """Repetition-boosted code fingerprint with target overlap eta.

    One block superposes |position>|code bit> over the m positions of the
    codeword (index register zero-padded to a power of two); the full state
    is the block's r-fold tensor power, so distinct inputs overlap at most
    delta^r <= eta.
    """

    code: LinearCode
    repetitions: int
    qubits_per_block: int
    total_qubits: int
    eta: float

    def __post_init__(self):
        expected_block = _index_qubits(self.code.block_bits) + 1
        if self.qubits_per_block != expected_block:
            raise ValueError("qubits_per_block does not match the code length")
        if self.total_qubits != self.repetitions * self.qubits_per_block:
            raise ValueError("total_qubits mismatch")
        if self.code.delta > 0 and self.code.delta ** self.repetitions > self.eta + 1e-12:
            raise ValueError("repetition count does not reach the target overlap")

    def overlap_bound(self) -> float:
        return self.code.delta ** self.repetitions

    def to_descriptor(self) -> dict:
        out = self.code.to_descriptor()
        out.update({"r": self.repetitions, "eta": self.eta})
        return out


def _index_qubits(block_bits: int) -> int:
    return math.ceil(math.log2(block_bits)) if block_bits > 1 else 0


def make_fingerprint(code: LinearCode, eta: float) -> Fingerprint:
    """Pick the repetition count from the code's actual delta:
    r = floor(log eta / log delta) + 1 (r = 1 when delta is 0)."""
    if not 0.0 < eta < 1.0:
        raise ValueError("eta must be in (0, 1)")
    if code.delta <= 0.0:
        reps = 1
    else:
        reps = int(math.floor(math.log(eta) / math.log(code.delta))) + 1
    block = _index_qubits(code.block_bits) + 1
    return Fingerprint(
        code=code,
        repetitions=reps,
        qubits_per_block=block,
        total_qubits=reps * block,
        eta=eta,
    )


def fingerprint_state(fingerprint: Fingerprint, x: int) -> PureState:
    """The fingerprint state of message x (exact amplitudes)."""
    check_qubits(fingerprint.total_qubits, "fingerprint state")
    code = fingerprint.code
    m = code.block_bits
    block_dim = 1 << fingerprint.qubits_per_block
    amps = np.zeros(block_dim, dtype=np.complex128)
    word = code.encode(x)
    scale = 1.0 / math.sqrt(m)
    for i in range(m):
        bit = (word >> i) & 1
        amps[(i << 1) | bit] = scale
    block = PureState(fingerprint.qubits_per_block, amps)
    return qcore.tensor_power(block, fingerprint.repetitions)


def fingerprint_overlap(fingerprint: Fingerprint, x: int, y: int) -> float:
    """Combinatorial overlap (agreements/m)^r; equals the state inner
    product and is real and nonnegative."""
    a = fingerprint.code.agreement(x, y)
    return (a / fingerprint.code.block_bits) ** fingerprint.repetitions


def fingerprint_owsg(
    owf: ToyOwf,
    eta: float,
    rng: Rng,
    *,
    code: LinearCode | None = None,
    block_bits: int | None = None,
    target_delta: float | None = None,
    max_tries: int = 500,
) -> OwsgScheme:
    """Keyed scheme whose output is the fingerprint of the OWF image.

    The code is searched here unless supplied; ``target_delta`` trades
    search time against the repetition count (lower delta means fewer
    repetitions, hence fewer qubits).
    """
    msg_bits = owf.output_bits
    if code is None:
        if block_bits is None:
            block_bits = 4 * msg_bits
        if target_delta is None:
            target_delta = 11.0 / 12.0
        code = build_linear_code(
            msg_bits, block_bits, rng, target_delta=target_delta, max_tries=max_tries
        )
    fingerprint = make_fingerprint(code, eta)
    check_qubits(fingerprint.total_qubits, "fingerprint scheme output")

    def state_fn(key: int) -> PureState:
        return fingerprint_state(fingerprint, owf(key))

    scheme = projection_scheme(
        key_bits=owf.input_bits,
        output_qubits=fingerprint.total_qubits,
        pure_state_fn=state_fn,
        metadata={
            "kind": "fingerprint",
            "eta": eta,
            "r": fingerprint.repetitions,
            "delta": code.delta,
            "d_min": code.d_min,
            "owf": owf.to_descriptor(),
            "code": code.to_descriptor(),
        },
    )
    return scheme


# ---------------------------------------------------------------------------
# phase-encoding scheme
# ---------------------------------------------------------------------------


def digit_split(value: int, total_bits: int, alphabet: int) -> tuple[int, ...]:
    """Embed a bit string into digits over [alphabet], big-endian.

    Each digit takes floor(log2 alphabet) bits, so for power-of-two
    alphabets the embedding is exact; otherwise the top code points of the
    alphabet are simply never used.  The string is left-padded with zeros
    to a whole number of digits.
    """
    bits_per_digit = int(math.floor(math.log2(alphabet)))
    if bits_per_digit < 1:
        raise ValueError("alphabet must be at least 2")
    count = max(1, math.ceil(total_bits / bits_per_digit))
    digits = []
    for j in range(count):
        shift = (count - 1 - j) * bits_per_digit
        digits.append((value >> shift) & ((1 << bits_per_digit) - 1))
    return tuple(digits)


def phase_state(digits: tuple[int, ...], alphabet: int) -> PureState:
    """One qubit per digit at angle 2*pi*digit/alphabet on the equator."""
    check_qubits(len(digits), "phase state")
    state = qcore.phase_plus_state(2.0 * math.pi * digits[0] / alphabet)
    for digit in digits[1:]:
        state = qcore.tensor(state, qcore.phase_plus_state(2.0 * math.pi * digit / alphabet))
    return state


def phase_digit_overlap(y: int, y_prime: int, alphabet: int) -> float:
    """|<+_{2 pi y/alphabet} | +_{2 pi y'/alphabet}>| for one digit."""
    return abs((1.0 + np.exp(2j * math.pi * (y_prime - y) / alphabet)) / 2.0)


def phase_overlap_ceiling(alphabet: int) -> float:
    """Largest possible single-digit overlap for distinct digits."""
    return math.sqrt((1.0 + math.cos(2.0 * math.pi / alphabet)) / 2.0)


def phase_owsg(owf: ToyOwf, alphabet: int) -> OwsgScheme:
    """Phase-encoded scheme: digits of the OWF image become qubit phases.

    Distinct images give product states whose per-digit overlap is at most
    phase_overlap_ceiling(alphabet) < 1, a weak but nonzero separation.
    """
    digits0 = digit_split(0, owf.output_bits, alphabet)
    num_digits = len(digits0)
    check_qubits(num_digits, "phase scheme output")

    def state_fn(key: int) -> PureState:
        return phase_state(digit_split(owf(key), owf.output_bits, alphabet), alphabet)

    return projection_scheme(
        key_bits=owf.input_bits,
        output_qubits=num_digits,
        pure_state_fn=state_fn,
        metadata={
            "kind": "phase",
            "alphabet": alphabet,
            "digits": num_digits,
            "per_digit_ceiling": phase_overlap_ceiling(alphabet),
            "owf": owf.to_descriptor(),
        },
    )


# ---------------------------------------------------------------------------
# projection-verifier wrapper for keyed state generators
# ---------------------------------------------------------------------------


def prsg_to_owsg(prsg: HaarPrsg) -> OwsgScheme:
    """Wrap a keyed pure-state generator with the projection verifier."""
    return projection_scheme(
        key_bits=prsg.key_bits,
        output_qubits=prsg.output_qubits,
        pure_state_fn=prsg.state,
        metadata={"kind": "haar-toy", "backend": prsg.to_descriptor()},
    )


def prsg_verifier_slack(key_bits: int, output_qubits: int, h: float) -> float:
    """2^n (1-h)^(2^m - 1) + h: the verifier-collision slack of the
    projection wrapper at threshold h (vacuous when it reaches 1)."""
    return (2.0 ** key_bits) * (1.0 - h) ** (2 ** output_qubits - 1) + h


# ---------------------------------------------------------------------------
# PRG-based ensemble and commitment
# ---------------------------------------------------------------------------


def prg_efi(prg: ToyPrg) -> EfiPair:
    """Diagonal pair: image distribution of the PRG vs the uniform string.

    Both states are classical (diagonal) on 2n qubits; fidelity and trace
    distance are exactly computable.
    """
    num_qubits = prg.output_bits
    check_qubits(num_qubits, "PRG ensemble")
    dim = 1 << num_qubits

    def state_gen(b: int) -> DensityMatrix:
        diag = np.zeros(dim, dtype=np.float64)
        if b:
            diag[:] = 1.0 / dim
        else:
            weight = 1.0 / (1 << prg.seed_bits)
            for x in range(1 << prg.seed_bits):
                diag[prg(x)] += weight
        return DensityMatrix(num_qubits, np.diag(diag).astype(np.complex128), validate=False)

    return EfiPair(
        num_qubits=num_qubits,
        state_gen=state_gen,
        metadata={"kind": "prg-image-vs-uniform", "prg": prg.to_descriptor()},
    )


def prg_commitment(prg: ToyPrg) -> CanonicalCommitment:
    """Canonical commitment with |R| = |C| = 2n.

    Committing 0 prepares sum_x |x 0^n>_R |G(x)>_C / 2^(n/2); committing 1
    prepares the maximally correlated pair sum_y |y>_R |y>_C / 2^n.  Both
    preparations are a Hadamard layer followed by a basis permutation, so
    unitarity is checked structurally rather than assumed.
    """
    n = prg.seed_bits
    reg = 2 * n
    total = 2 * reg
    check_qubits(total, "PRG commitment")
    dim = 1 << total
    dim_c = 1 << reg

    r_values = np.arange(dim, dtype=np.int64) >> reg
    c_values = np.arange(dim, dtype=np.int64) & (dim_c - 1)

    # committing 0: XOR G(top n bits of R) into C
    table = np.asarray(prg.table, dtype=np.int64)
    g_of_r = table[r_values >> n]
    perm0 = (r_values << reg) | (c_values ^ g_of_r)
    q0 = PrepCircuit(total)
    for qubit in range(n):
        q0.h(qubit)
    q0.permute_basis(perm0)

    # committing 1: copy R into C
    perm1 = (r_values << reg) | (c_values ^ r_values)
    q1 = PrepCircuit(total)
    for qubit in range(reg):
        q1.h(qubit)
    q1.permute_basis(perm1)

    return CanonicalCommitment(
        reveal_qubits=reg,
        commit_qubits=reg,
        q0=q0,
        q1=q1,
        metadata={"kind": "prg-commitment", "n": n, "prg": prg.to_descriptor()},
    )


def flavor_convert(commitment: CanonicalCommitment) -> CanonicalCommitment:
    """Swap the roles of hiding and binding with one extra qubit.

    The new committed states are (|0>(Q_0|0...0>) +- |1>(Q_1|0...0>)) / sqrt(2);
    the old commit register becomes the new reveal register and the old
    reveal register plus the control qubit become the new commit register.
    """
    total = commitment.num_qubits + 1
    check_qubits(total, "flavor-converted commitment")
    r_old, c_old = commitment.reveal_qubits, commitment.commit_qubits
    # build on (control, R, C), then reorder to (C | R, control)
    order = (
        list(range(1 + r_old, 1 + r_old + c_old))
        + list(range(1, 1 + r_old))
        + [0]
    )

    def converted(b: int) -> PrepCircuit:
        circ = PrepCircuit(total)
        circ.h(0)
        if b:
            circ.z(0)
        circ.branch_on_leading(commitment.q0, commitment.q1)
        circ.reorder_qubits(order)
        return circ

    return CanonicalCommitment(
        reveal_qubits=c_old,
        commit_qubits=r_old + 1,
        q0=converted(0),
        q1=converted(1),
        metadata={"kind": "flavor-converted", "base": commitment.metadata},
    )


def commitment_from_states(
    psi0: PureState, psi1: PureState, reveal_qubits: int, metadata: dict | None = None
) -> CanonicalCommitment:
    """Commitment scheme from two explicit joint states (dense unitaries)."""
    from .prep import prep_from_state

    if psi0.num_qubits != psi1.num_qubits:
        raise ValueError("committed states must have the same register size")
    return CanonicalCommitment(
        reveal_qubits=reveal_qubits,
        commit_qubits=psi0.num_qubits - reveal_qubits,
        q0=prep_from_state(psi0),
        q1=prep_from_state(psi1),
        metadata=metadata or {"kind": "from-states"},
    )


# ---------------------------------------------------------------------------
# random-oracle fingerprint
# ---------------------------------------------------------------------------


class RandomOracle:
    """Seeded random boolean function on fixed-width inputs."""

    def __init__(self, seed: int, input_bits: int):
        self.seed = int(seed)
        self.input_bits = input_bits

    def bit(self, value: int) -> int:
        if not 0 <= value < (1 << self.input_bits):
            raise ValueError("oracle input out of range")
        h = hashlib.blake2b(digest_size=8)
        h.update(self.seed.to_bytes(8, "little"))
        h.update(value.to_bytes((self.input_bits + 7) // 8 or 1, "little"))
        return h.digest()[0] & 1


def qrom_fingerprint(oracle: RandomOracle, m: int, x: int, input_bits: int) -> PureState:
    """Sign-pattern fingerprint: amplitudes (-1)^{oracle(x||z)} / 2^(m/2)."""
    check_qubits(m, "oracle fingerprint")
    if oracle.input_bits != input_bits + m:
        raise ValueError("oracle width must be input_bits + m")
    dim = 1 << m
    amps = np.empty(dim, dtype=np.complex128)
    base = x << m
    scale = 1.0 / math.sqrt(dim)
    for z in range(dim):
        amps[z] = scale * (1.0 - 2.0 * oracle.bit(base | z))
    return PureState(m, amps)


def qrom_overlap(oracle: RandomOracle, m: int, x: int, y: int) -> float:
    """Signed overlap 2^-m sum_z (-1)^{H(x||z) xor H(y||z)}."""
    dim = 1 << m
    total = 0
    for z in range(dim):
        total += 1 if oracle.bit((x << m) | z) == oracle.bit((y << m) | z) else -1
    return total / dim
