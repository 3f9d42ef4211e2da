"""Game-level abstractions.

Keyed state generators with verifiers, two-state ensembles, canonical bit
commitments, and the seeded toy back-ends (one-way functions, PRGs, a
Haar-state generator) that stand in for cryptographic primitives.  The toy
back-ends make no hardness claim; everything verified downstream is an
information-theoretic quantity (correctness, overlaps, fidelity and
trace-distance bounds, attack success rates).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import qcore
from .errors import ParamTooLarge
from .prep import PrepCircuit
from .qcore import DensityMatrix, PureState
from .rng import Rng

_ENUMERATION_LIMIT = 16  # exhaustive scans allowed up to 2^16 keys


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GameReport:
    """Outcome of a repeated security game.

    ``estimate`` is ``wins/trials`` for win-counting games; advantage-style
    games (two-arm distinguishing) put per-arm counts in ``detail`` and set
    ``estimate`` to the advantage.  ``passed`` compares the estimate to
    ``bound`` with three standard errors of slack and is None when no bound
    was supplied.
    """

    trials: int
    wins: float
    estimate: float
    ci95_halfwidth: float
    bound: float | None
    bound_source: str
    passed: bool | None
    bound_kind: str = "lower"
    mode: str = "exact"
    detail: dict = field(default_factory=dict)

    @classmethod
    def from_counts(
        cls,
        trials: int,
        wins: float,
        *,
        bound: float | None = None,
        bound_kind: str = "lower",
        bound_source: str = "",
        mode: str = "exact",
        detail: dict | None = None,
    ) -> "GameReport":
        estimate = wins / trials
        ci95 = 1.96 * np.sqrt(max(estimate * (1.0 - estimate), 0.0) / trials)
        passed = _versus_bound(estimate, ci95 / 1.96, bound, bound_kind)
        return cls(
            trials=trials,
            wins=wins,
            estimate=float(estimate),
            ci95_halfwidth=float(ci95),
            bound=bound,
            bound_source=bound_source,
            passed=passed,
            bound_kind=bound_kind,
            mode=mode,
            detail=detail or {},
        )

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "wins": self.wins,
            "estimate": self.estimate,
            "ci95_halfwidth": self.ci95_halfwidth,
            "bound": self.bound,
            "bound_kind": self.bound_kind,
            "bound_source": self.bound_source,
            "passed": self.passed,
            "mode": self.mode,
            "detail": self.detail,
        }


def _versus_bound(estimate: float, sigma: float, bound: float | None, kind: str) -> bool | None:
    if bound is None:
        return None
    if kind == "lower":
        return bool(estimate >= bound - 3.0 * sigma)
    if kind == "upper":
        return bool(estimate <= bound + 3.0 * sigma)
    raise ValueError(f"unknown bound kind {kind!r}")


# ---------------------------------------------------------------------------
# schemes and ensembles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OwsgScheme:
    """Keyed state generator with a verifier.

    Keys are integers in [0, 2^key_bits).  ``verifier(k', state)`` returns
    the exact acceptance probability; for the pure-output schemes shipped
    here it is the projection probability |<phi_k'|phi_k>|^2.
    """

    key_bits: int
    output_qubits: int
    key_gen: Callable[[Rng], int]
    state_gen: Callable[[int], DensityMatrix]
    verifier: Callable[[int, object], float]
    pure_state: Callable[[int], PureState] | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def num_keys(self) -> int:
        return 1 << self.key_bits

    def challenge(self, key: int):
        """Single copy of the keyed state, pure when available."""
        if self.pure_state is not None:
            return self.pure_state(key)
        return self.state_gen(key)

    def keys(self) -> range:
        if self.key_bits > _ENUMERATION_LIMIT:
            raise ParamTooLarge(f"cannot enumerate 2^{self.key_bits} keys")
        return range(self.num_keys)


def projection_scheme(
    key_bits: int,
    output_qubits: int,
    pure_state_fn: Callable[[int], PureState],
    metadata: dict | None = None,
) -> OwsgScheme:
    """Scheme with deterministic pure outputs and the projection verifier."""
    cached = functools.lru_cache(maxsize=None)(pure_state_fn)

    def verifier(candidate: int, state) -> float:
        target = cached(candidate)
        if isinstance(state, PureState):
            return qcore.pure_overlap_sq(target, state)
        return float(
            np.real(np.vdot(target.amplitudes, state.matrix @ target.amplitudes))
        )

    return OwsgScheme(
        key_bits=key_bits,
        output_qubits=output_qubits,
        key_gen=lambda rng: rng.bits(key_bits),
        state_gen=lambda k: cached(k).to_density(validate=False),
        verifier=verifier,
        pure_state=cached,
        metadata=metadata or {},
    )


def scheme_correctness(scheme: OwsgScheme) -> float:
    """E_k[verifier(k, phi_k)] by exhaustive enumeration."""
    total = 0.0
    for k in scheme.keys():
        total += scheme.verifier(k, scheme.challenge(k))
    return total / scheme.num_keys


@dataclass(frozen=True)
class EfiPair:
    """Two-state ensemble: bit -> density matrix on num_qubits qubits."""

    num_qubits: int
    state_gen: Callable[[int], DensityMatrix]
    metadata: dict = field(default_factory=dict)

    def states(self) -> tuple[DensityMatrix, DensityMatrix]:
        return self.state_gen(0), self.state_gen(1)

    def trace_distance(self) -> float:
        rho0, rho1 = self.states()
        return qcore.trace_distance(rho0, rho1)

    def fidelity(self) -> float:
        rho0, rho1 = self.states()
        return qcore.fidelity(rho0, rho1)


# ---------------------------------------------------------------------------
# security games
# ---------------------------------------------------------------------------


def run_onewayness_game(
    scheme: OwsgScheme,
    adversary: Callable[[object, Rng], int | None],
    copies: int,
    trials: int,
    rng: Rng,
    *,
    access: str = "sampled",
    scoring: str = "exact",
    bound: float | None = None,
    bound_kind: str = "lower",
    bound_source: str = "",
) -> GameReport:
    """Key-recovery game.

    ``access`` controls what the adversary sees: "sampled" hands it the
    literal ``copies``-fold tensor state (cap applies); "oracle" hands it
    the exact single-copy density matrix, standing in for unbounded copies.
    ``scoring`` is "exact" (credit the acceptance probability itself) or
    "sampled" (draw the verifier's accept bit).
    """
    if access not in ("sampled", "oracle"):
        raise ValueError(f"unknown access mode {access!r}")
    if scoring not in ("exact", "sampled"):
        raise ValueError(f"unknown scoring mode {scoring!r}")
    if bound is not None and trials < 100:
        raise ValueError("bound checks need at least 100 trials")

    wins = 0.0
    failures = 0
    refusals = 0
    for t in range(trials):
        stream = rng.child(f"trial-{t}")
        key = scheme.key_gen(stream.child("keygen"))
        challenge = scheme.challenge(key)
        if access == "sampled":
            payload = qcore.tensor_power(challenge, copies) if copies > 1 else challenge
        else:
            payload = scheme.state_gen(key)
        try:
            candidate = adversary(payload, stream.child("adversary"))
        except Exception:
            failures += 1
            continue
        if candidate is None:
            refusals += 1
            continue
        p_accept = scheme.verifier(int(candidate), challenge)
        if scoring == "exact":
            wins += p_accept
        else:
            wins += stream.child("score").bernoulli(p_accept)
    detail = {"adversary_failures": failures, "refusals": refusals, "copies": copies}
    return GameReport.from_counts(
        trials,
        wins,
        bound=bound,
        bound_kind=bound_kind,
        bound_source=bound_source,
        mode=f"{access}/{scoring}",
        detail=detail,
    )


def run_efi_game(
    pair: EfiPair,
    distinguisher: Callable[[DensityMatrix, Rng], int],
    trials: int,
    rng: Rng,
    *,
    bound: float | None = None,
    bound_kind: str = "lower",
    bound_source: str = "",
    mode: str = "sampled",
) -> GameReport:
    """Two-arm distinguishing game; ``trials`` is the per-arm count.

    The report's estimate is the advantage |Pr[1 | rho_0] - Pr[1 | rho_1]|;
    per-arm counts sit in ``detail`` so the arithmetic stays recomputable.
    """
    if bound is not None and trials < 100:
        raise ValueError("bound checks need at least 100 trials")
    ones = [0, 0]
    for arm in (0, 1):
        state = pair.state_gen(arm)
        for t in range(trials):
            stream = rng.child(f"arm{arm}-trial-{t}")
            ones[arm] += int(distinguisher(state, stream))
    p0 = ones[0] / trials
    p1 = ones[1] / trials
    advantage = abs(p0 - p1)
    sigma = np.sqrt((p0 * (1 - p0) + p1 * (1 - p1)) / trials)
    passed = _versus_bound(advantage, float(sigma), bound, bound_kind)
    return GameReport(
        trials=2 * trials,
        wins=float(ones[0] + ones[1]),
        estimate=float(advantage),
        ci95_halfwidth=float(1.96 * sigma),
        bound=bound,
        bound_source=bound_source,
        passed=passed,
        bound_kind=bound_kind,
        mode=mode,
        detail={
            "trials_per_arm": trials,
            "ones_arm0": ones[0],
            "ones_arm1": ones[1],
            "p_arm0": p0,
            "p_arm1": p1,
        },
    )


# ---------------------------------------------------------------------------
# canonical commitments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalCommitment:
    """Pair of preparation unitaries over a reveal and a commit register.

    The joint register is ordered reveal-first: qubits [0, reveal_qubits)
    form R and the rest form C.  The committed state for bit b is
    ``q_b`` applied to |0...0>; the receiver gets C.
    """

    reveal_qubits: int
    commit_qubits: int
    q0: PrepCircuit
    q1: PrepCircuit
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        total = self.reveal_qubits + self.commit_qubits
        for name, circ in (("q0", self.q0), ("q1", self.q1)):
            if circ.num_qubits != total:
                raise ValueError(f"{name} acts on {circ.num_qubits} qubits, expected {total}")
            circ.validate()
        object.__setattr__(self, "_cache", {})

    @property
    def num_qubits(self) -> int:
        return self.reveal_qubits + self.commit_qubits

    def unitary(self, b: int) -> PrepCircuit:
        return self.q1 if b else self.q0

    def commit_state(self, b: int) -> PureState:
        key = ("state", int(bool(b)))
        if key not in self._cache:
            self._cache[key] = self.unitary(b).prepare()
        return self._cache[key]

    def commit_marginal(self, b: int) -> DensityMatrix:
        """Receiver's view: the C register of the committed state."""
        key = ("marginal", int(bool(b)))
        if key not in self._cache:
            keep = range(self.reveal_qubits, self.num_qubits)
            self._cache[key] = qcore.partial_trace(self.commit_state(b), keep)
        return self._cache[key]

    def hiding_pair(self) -> EfiPair:
        return EfiPair(
            num_qubits=self.commit_qubits,
            state_gen=lambda b: self.commit_marginal(b),
            metadata={"source": "commitment C-marginals", **self.metadata},
        )


def reveal_verify(commitment: CanonicalCommitment, b: int, joint_state) -> float:
    """Acceptance probability of the reveal phase for bit ``b``.

    The receiver applies the inverse preparation and accepts on the
    all-zero outcome, so the probability is the squared overlap with the
    honest committed state.
    """
    circ = commitment.unitary(b)
    if isinstance(joint_state, PureState):
        if joint_state.dim != circ.dim:
            raise qcore.DimensionMismatch("joint state has the wrong dimension")
        back = circ.apply_dagger(joint_state.amplitudes)
        return float(abs(back[0]) ** 2)
    if isinstance(joint_state, DensityMatrix):
        if joint_state.dim != circ.dim:
            raise qcore.DimensionMismatch("joint state has the wrong dimension")
        psi = commitment.commit_state(b)
        return float(np.real(np.vdot(psi.amplitudes, joint_state.matrix @ psi.amplitudes)))
    raise TypeError("joint_state must be a PureState or DensityMatrix")


@dataclass(frozen=True)
class BindingOptimum:
    """Best possible reveal-flip success, with the unitary achieving it."""

    optimum: float
    attack_unitary: np.ndarray | None
    cross_singular_values: np.ndarray


def honest_binding_optimum(
    commitment: CanonicalCommitment, *, want_unitary_limit: int = 6
) -> BindingOptimum:
    """Optimal probability of committing 0 honestly and opening 1.

    Equals the fidelity of the two C-marginals (Uhlmann); the attacker's
    register rotation is recovered from the polar decomposition of the
    cross operator Tr_C |Psi_0><Psi_1| whenever the reveal register is
    small enough to densify.
    """
    rho0 = commitment.commit_marginal(0)
    rho1 = commitment.commit_marginal(1)
    optimum = qcore.fidelity(rho0, rho1)

    unitary = None
    dim_r = 1 << commitment.reveal_qubits
    dim_c = 1 << commitment.commit_qubits
    a0 = commitment.commit_state(0).amplitudes.reshape(dim_r, dim_c)
    a1 = commitment.commit_state(1).amplitudes.reshape(dim_r, dim_c)
    cross = a0 @ a1.conj().T
    singular = np.linalg.svd(cross, compute_uv=False)
    if commitment.reveal_qubits <= want_unitary_limit:
        u, _, wh = np.linalg.svd(cross)
        unitary = wh.conj().T @ u.conj().T
    return BindingOptimum(
        optimum=float(optimum),
        attack_unitary=unitary,
        cross_singular_values=singular,
    )


def apply_reveal_attack(commitment: CanonicalCommitment, unitary: np.ndarray) -> PureState:
    """Honestly commit 0, then rotate the reveal register by ``unitary``."""
    dim_r = 1 << commitment.reveal_qubits
    dim_c = 1 << commitment.commit_qubits
    a0 = commitment.commit_state(0).amplitudes.reshape(dim_r, dim_c)
    rotated = (unitary @ a0).reshape(-1)
    return PureState(commitment.num_qubits, rotated)


def hiding_advantage(
    commitment: CanonicalCommitment,
    distinguisher: Callable[[DensityMatrix, Rng], int],
    trials: int,
    rng: Rng,
    *,
    bound: float | None = None,
    bound_kind: str = "lower",
    bound_source: str = "",
) -> GameReport:
    """Distinguishing game on the commitment's C-register marginals."""
    return run_efi_game(
        commitment.hiding_pair(),
        distinguisher,
        trials,
        rng,
        bound=bound,
        bound_kind=bound_kind,
        bound_source=bound_source,
    )


# ---------------------------------------------------------------------------
# toy back-ends
# ---------------------------------------------------------------------------


def _mask(bits: int) -> int:
    return (1 << bits) - 1


def _rotl64(x: int, r: int) -> int:
    x &= 0xFFFFFFFFFFFFFFFF
    return ((x << r) | (x >> (64 - r))) & 0xFFFFFFFFFFFFFFFF


def _arx_mix(seed: int, x: int, out_bits: int) -> int:
    """Three add-rotate-xor rounds over 64-bit words, truncated."""
    w = (x ^ _rotl64(seed, 31)) & 0xFFFFFFFFFFFFFFFF
    for r in (13, 29, 41):
        w = (w + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
        w ^= _rotl64(w, r)
        w = (w + seed) & 0xFFFFFFFFFFFFFFFF
        w ^= w >> 17
    return w & _mask(out_bits)


@dataclass(frozen=True)
class ToyOwf:
    """Total deterministic function {0,1}^n -> {0,1}^l, seeded."""

    input_bits: int
    output_bits: int
    table: np.ndarray
    kind: str
    seed: int
    injective: bool

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def to_descriptor(self) -> dict:
        return {
            "backend": "owf",
            "kind": self.kind,
            "n": self.input_bits,
            "out_bits": self.output_bits,
            "seed": self.seed,
            "flags": {"injective": self.injective},
        }


@dataclass(frozen=True)
class ToyPrg:
    """Length-doubling seeded map {0,1}^n -> {0,1}^{2n}."""

    seed_bits: int
    output_bits: int
    table: np.ndarray
    kind: str
    seed: int
    injective: bool

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def image(self) -> np.ndarray:
        return np.unique(self.table)

    def to_descriptor(self) -> dict:
        return {
            "backend": "prg",
            "kind": self.kind,
            "n": self.seed_bits,
            "out_bits": self.output_bits,
            "seed": self.seed,
            "flags": {"injective": self.injective},
        }


@dataclass(frozen=True)
class HaarPrsg:
    """Idealized keyed state generator: one fresh Haar state per key."""

    key_bits: int
    output_qubits: int
    seed: int
    amplitudes: np.ndarray  # (2^n, 2^m)

    def state(self, key: int) -> PureState:
        return PureState(self.output_qubits, self.amplitudes[key])

    def to_descriptor(self) -> dict:
        return {
            "backend": "haar-prsg",
            "kind": "haar",
            "n": self.key_bits,
            "m": self.output_qubits,
            "seed": self.seed,
            "flags": {},
        }


def make_toy_owf(
    input_bits: int, output_bits: int, rng: Rng, *, kind: str = "table"
) -> ToyOwf:
    """Seeded toy one-way-function stand-in.

    Kinds: "table" (uniform random table), "injection" (distinct outputs,
    needs output_bits >= input_bits), "arx" (built-in add-rotate-xor mixer).
    """
    if input_bits > 20:
        raise ParamTooLarge("toy OWF input limited to 20 bits (exhaustive scans)")
    seed = rng.bits(62)
    private = Rng(seed, ("toy-owf", kind))
    size = 1 << input_bits
    if kind == "table":
        table = np.array([private.bits(output_bits) for _ in range(size)], dtype=np.int64)
    elif kind == "injection":
        if output_bits < input_bits:
            raise ValueError("injection needs output_bits >= input_bits")
        table = _distinct_values(size, output_bits, private)
    elif kind == "arx":
        table = np.array([_arx_mix(seed, x, output_bits) for x in range(size)], dtype=np.int64)
    else:
        raise ValueError(f"unknown toy OWF kind {kind!r}")
    injective = len(np.unique(table)) == size
    return ToyOwf(input_bits, output_bits, table, kind, seed, injective)


def make_toy_prg(seed_bits: int, rng: Rng, *, kind: str = "injection") -> ToyPrg:
    """Seeded length-doubling PRG stand-in; "injection" by default."""
    if seed_bits > 16:
        raise ParamTooLarge("toy PRG seed limited to 16 bits (exhaustive scans)")
    out_bits = 2 * seed_bits
    seed = rng.bits(62)
    private = Rng(seed, ("toy-prg", kind))
    size = 1 << seed_bits
    if kind == "injection":
        table = _distinct_values(size, out_bits, private)
    elif kind == "table":
        table = np.array([private.bits(out_bits) for _ in range(size)], dtype=np.int64)
    else:
        raise ValueError(f"unknown toy PRG kind {kind!r}")
    injective = len(np.unique(table)) == size
    return ToyPrg(seed_bits, out_bits, table, kind, seed, injective)


def _distinct_values(count: int, bits: int, rng: Rng) -> np.ndarray:
    seen: set[int] = set()
    values = []
    while len(values) < count:
        v = rng.bits(bits)
        if v not in seen:
            seen.add(v)
            values.append(v)
    return np.array(values, dtype=np.int64)


def make_haar_prsg(key_bits: int, output_qubits: int, rng: Rng) -> HaarPrsg:
    """Assign every key an independently Haar-sampled pure state."""
    if key_bits > _ENUMERATION_LIMIT:
        raise ParamTooLarge("haar PRSG key space limited to 2^16")
    seed = rng.bits(62)
    private = Rng(seed, ("haar-prsg",))
    dim = 1 << output_qubits
    amps = np.empty((1 << key_bits, dim), dtype=np.complex128)
    for k in range(1 << key_bits):
        amps[k] = qcore.haar_sample(output_qubits, private.child(f"state-{k}")).amplitudes
    return HaarPrsg(key_bits, output_qubits, seed, amps)


def backend_from_descriptor(descriptor: dict):
    """Rebuild a toy back-end, bit-exactly, from its JSON descriptor."""
    backend = descriptor["backend"]
    seed = descriptor["seed"]
    if backend == "owf":
        kind, n, out_bits = descriptor["kind"], descriptor["n"], descriptor["out_bits"]
        private = Rng(seed, ("toy-owf", kind))
        size = 1 << n
        if kind == "table":
            table = np.array([private.bits(out_bits) for _ in range(size)], dtype=np.int64)
        elif kind == "injection":
            table = _distinct_values(size, out_bits, private)
        elif kind == "arx":
            table = np.array([_arx_mix(seed, x, out_bits) for x in range(size)], dtype=np.int64)
        else:
            raise ValueError(f"unknown kind {kind!r}")
        injective = len(np.unique(table)) == size
        return ToyOwf(n, out_bits, table, kind, seed, injective)
    if backend == "prg":
        kind, n = descriptor["kind"], descriptor["n"]
        out_bits = descriptor["out_bits"]
        private = Rng(seed, ("toy-prg", kind))
        size = 1 << n
        if kind == "injection":
            table = _distinct_values(size, out_bits, private)
        else:
            table = np.array([private.bits(out_bits) for _ in range(size)], dtype=np.int64)
        injective = len(np.unique(table)) == size
        return ToyPrg(n, out_bits, table, kind, seed, injective)
    if backend == "haar-prsg":
        n, m = descriptor["n"], descriptor["m"]
        private = Rng(seed, ("haar-prsg",))
        dim = 1 << m
        amps = np.empty((1 << n, dim), dtype=np.complex128)
        for k in range(1 << n):
            amps[k] = qcore.haar_sample(m, private.child(f"state-{k}")).amplitudes
        return HaarPrsg(n, m, seed, amps)
    raise ValueError(f"unknown backend {backend!r}")
