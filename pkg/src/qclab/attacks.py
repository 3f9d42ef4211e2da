"""Adversary algorithms.

The random-key adversary and its exact success law, shot-budgeted state
tomography, explicit covering nets of density matrices, the
tomography-plus-net key-recovery attack, the spectral-projector
distinguisher for two-state ensembles, and the swap-test attack on
commitment hiding.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import qcore
from .errors import BudgetOverflow, NetTooLarge, ParamTooLarge
from .primitives import CanonicalCommitment, EfiPair, GameReport, OwsgScheme
from .qcore import DensityMatrix, HermitianMatrix
from .rng import Rng


# ---------------------------------------------------------------------------
# random-key adversary and pairwise statistics
# ---------------------------------------------------------------------------


def trivial_adversary(scheme: OwsgScheme):
    """Adversary that ignores its copies and guesses a fresh random key."""

    def adversary(_payload, rng: Rng) -> int:
        return scheme.key_gen(rng)

    return adversary


def trivial_adversary_exact_win(scheme: OwsgScheme) -> float:
    """Exact success probability of the random-key adversary.

    Averages the verifier's acceptance over all (true key, guessed key)
    pairs, so this goes through the scheme's verifier rather than through
    raw state overlaps.
    """
    if 2 * scheme.key_bits > 16:
        raise ParamTooLarge("exact enumeration capped at 2^16 key pairs")
    total = 0.0
    for k in scheme.keys():
        challenge = scheme.challenge(k)
        for k_guess in scheme.keys():
            total += scheme.verifier(k_guess, challenge)
    return total / scheme.num_keys ** 2


@dataclass(frozen=True)
class PairwiseStats:
    """Enumerated overlap/distance statistics of a pure-output scheme."""

    num_keys: int
    output_qubits: int
    correctness: float
    expected_overlap_sq: float
    overlap_floor: float  # 2^-m, the ensemble-independent floor
    expected_td: float
    td_bound: float  # sqrt(1 - 2^-m)
    win_lower_bound: float  # correctness - expected_td
    win_floor: float  # 2^-(m+1)


def expected_pairwise_quantities(scheme: OwsgScheme) -> PairwiseStats:
    """Exact pairwise statistics by enumeration of the key space.

    Pure outputs let both quantities come from the Gram matrix: the
    squared-overlap mean is the random-key adversary's win probability and
    is floored by 2^-m for any ensemble; the expected trace distance
    (sqrt(1-|<.|.>|^2) for pure states) is capped by sqrt(1 - 2^-m).
    """
    if scheme.pure_state is None:
        raise ValueError("pairwise statistics need a pure-output scheme")
    keys = list(scheme.keys())
    stack = np.stack([scheme.pure_state(k).amplitudes for k in keys])
    gram = stack @ stack.conj().T
    overlap_sq = np.abs(gram) ** 2
    expected_overlap_sq = float(np.mean(overlap_sq))
    expected_td = float(np.mean(np.sqrt(np.clip(1.0 - overlap_sq, 0.0, None))))
    correctness = float(np.mean(np.diag(overlap_sq).real))
    m = scheme.output_qubits
    return PairwiseStats(
        num_keys=len(keys),
        output_qubits=m,
        correctness=correctness,
        expected_overlap_sq=expected_overlap_sq,
        overlap_floor=2.0 ** (-m),
        expected_td=expected_td,
        td_bound=math.sqrt(1.0 - 2.0 ** (-m)),
        win_lower_bound=correctness - expected_td,
        win_floor=2.0 ** (-(m + 1)),
    )


# ---------------------------------------------------------------------------
# tomography
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TomographyEstimate:
    estimate: HermitianMatrix
    delta_target: float
    copies_used: int
    mode: str
    detail: dict = field(default_factory=dict)


def pauli_strings(num_qubits: int) -> list[np.ndarray]:
    """All d^2 Pauli strings on num_qubits qubits (identity included)."""
    single = [
        np.eye(2, dtype=np.complex128),
        np.array([[0, 1], [1, 0]], dtype=np.complex128),
        np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
        np.array([[1, 0], [0, -1]], dtype=np.complex128),
    ]
    out = []
    for combo in itertools.product(single, repeat=num_qubits):
        mat = np.array([[1.0]], dtype=np.complex128)
        for factor in combo:
            mat = np.kron(mat, factor)
        out.append(mat)
    return out


def per_pauli_shots(d: int, delta: float, beta: float) -> int:
    """Hoeffding budget: enough shots per Pauli so that all d^2 estimated
    expectations land within delta/d^2, hence the assembled matrix lands
    within trace-norm delta, except with probability beta."""
    return math.ceil((2.0 * d ** 4 / delta ** 2) * math.log(2.0 * d * d / beta))


def worst_case_copy_budget(d: int, delta: float, lam: int) -> float:
    """Analytic worst-case copy count 144 * lam * d^4 / delta^2."""
    return 144.0 * lam * d ** 4 / delta ** 2


def tomography(
    source,
    delta: float,
    rng: Rng | None = None,
    *,
    mode: str = "oracle",
    beta: float = 0.05,
    perturb_trace_norm: float = 0.0,
    shot_ceiling: int = 10 ** 8,
) -> TomographyEstimate:
    """Hermitian estimate of a state within trace-norm delta.

    "oracle" mode returns the exact matrix, optionally displaced by an
    adversarial Hermitian perturbation of trace norm exactly
    ``perturb_trace_norm`` (must be <= delta) for stress-testing the
    tolerance arithmetic downstream.  "sampled" mode estimates every Pauli
    expectation by measuring its +1 eigenprojector for per_pauli_shots
    shots and assembles the estimate; shots for one Pauli are drawn in one
    binomial batch from the exact Born probability, which is distributed
    identically to independent single-shot measurements.
    """
    if not isinstance(source, DensityMatrix):
        raise TypeError("tomography source must be a DensityMatrix")
    d = source.dim
    if mode == "oracle":
        matrix = source.matrix.copy()
        used = 0.0
        if perturb_trace_norm > 0.0:
            if perturb_trace_norm > delta + 1e-12:
                raise ValueError("perturbation must stay within the target error")
            if rng is None:
                raise ValueError("perturbed oracle mode needs an rng")
            noise = qcore.random_hermitian(d, rng)
            noise *= perturb_trace_norm / qcore.trace_norm(noise)
            matrix = matrix + noise
        return TomographyEstimate(
            estimate=HermitianMatrix(d, matrix),
            delta_target=delta,
            copies_used=0,
            mode="oracle",
            detail={"perturb_trace_norm": perturb_trace_norm},
        )
    if mode != "sampled":
        raise ValueError(f"unknown tomography mode {mode!r}")
    if rng is None:
        raise ValueError("sampled mode needs an rng")
    shots = per_pauli_shots(d, delta, beta)
    total_shots = shots * d * d
    if total_shots > shot_ceiling:
        raise BudgetOverflow(
            f"{total_shots} shots exceed the ceiling {shot_ceiling}; "
            "coarsen delta or raise the ceiling"
        )
    eye = np.eye(d, dtype=np.complex128)
    estimate = np.zeros((d, d), dtype=np.complex128)
    for idx, pauli in enumerate(pauli_strings(int(math.log2(d)))):
        plus_projector = qcore.Projector(d, (eye + pauli) / 2.0)
        p_plus = qcore.born_probability(source, plus_projector)
        ones = rng.child(f"pauli-{idx}").binomial(shots, p_plus)
        mean = (2.0 * ones - shots) / shots
        estimate += mean * pauli
    estimate /= d
    estimate = (estimate + estimate.conj().T) / 2.0
    return TomographyEstimate(
        estimate=HermitianMatrix(d, estimate),
        delta_target=delta,
        copies_used=total_shots,
        mode="sampled",
        detail={"per_pauli_shots": shots, "beta": beta},
    )


# ---------------------------------------------------------------------------
# covering nets
# ---------------------------------------------------------------------------

_PAULI_XYZ = [
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
]


@dataclass(frozen=True)
class EpsNet:
    """Finite set of density matrices within trace distance gamma of every
    state of the dimension."""

    gamma: float
    dim: int
    kind: str  # "mixed" or "pure"
    matrices: np.ndarray  # (size, dim, dim)
    construction: dict

    @property
    def size(self) -> int:
        return self.matrices.shape[0]

    @property
    def c_impl(self) -> float:
        """Effective constant: gamma * size^(1/d^2), so that
        size <= (c_impl/gamma)^(d^2) holds with equality."""
        return self.gamma * self.size ** (1.0 / self.dim ** 2)

    def element(self, index: int) -> DensityMatrix:
        n = int(math.log2(self.dim))
        return DensityMatrix(n, self.matrices[index], validate=False)

    @property
    def elements(self) -> list[DensityMatrix]:
        return [self.element(i) for i in range(self.size)]

    def distances_to(self, target: np.ndarray) -> np.ndarray:
        return batch_trace_distance(self.matrices, target)

    def covering_audit(self, samples: int, rng: Rng) -> dict:
        """Empirical covering: fraction of random states within gamma."""
        n = int(math.log2(self.dim))
        covered = 0
        worst = 0.0
        for i in range(samples):
            stream = rng.child(f"cover-{i}")
            if self.kind == "pure":
                state = qcore.haar_sample(n, stream).to_density(validate=False)
            else:
                state = qcore.induced_mixed_sample(n, stream)
            dist = float(np.min(self.distances_to(state.matrix)))
            worst = max(worst, dist)
            covered += dist <= self.gamma + 1e-12
        return {
            "samples": samples,
            "fraction_covered": covered / samples,
            "worst_min_distance": worst,
            "gamma": self.gamma,
        }


def batch_trace_distance(stack: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Trace distances from each matrix in ``stack`` to ``target``."""
    diffs = stack - target[None, :, :]
    if diffs.shape[-1] == 2:
        # closed form for 2x2 Hermitian [[a, b], [b*, c]]: the eigenvalues
        # are t +- s with t = (a+c)/2 and s = sqrt(((a-c)/2)^2 + |b|^2),
        # so (|t+s| + |t-s|)/2 = max(|t|, s)
        a = diffs[:, 0, 0].real
        c = diffs[:, 1, 1].real
        t = (a + c) / 2.0
        s = np.sqrt(((a - c) / 2.0) ** 2 + np.abs(diffs[:, 0, 1]) ** 2)
        return np.maximum(np.abs(t), s)
    eigs = np.linalg.eigvalsh(diffs)
    return 0.5 * np.sum(np.abs(eigs), axis=-1)


def build_net(
    d: int,
    gamma: float,
    *,
    kind: str = "mixed",
    max_elements: int = 2_000_000,
) -> EpsNet:
    """Deterministic gamma-net of d-dimensional states.

    Mixed nets: a single centre point once gamma reaches the covering
    radius of the maximally mixed state (1 - 1/d); otherwise, for qubits,
    a cubic lattice over the Bloch ball with out-of-ball points clipped to
    the sphere and near-duplicates merged within gamma/4.  The lattice
    spacing is chosen so the guaranteed covering radius stays at gamma.
    Mixed nets beyond d = 2 explode combinatorially and raise NetTooLarge
    for any gamma below the centre-point threshold.

    Pure nets (d <= 8): normalized coordinate grid over the amplitude
    sphere, enumerated with norm pruning.
    """
    if not 0.0 < gamma:
        raise ValueError("gamma must be positive")
    if kind == "mixed":
        if gamma >= 1.0 - 1.0 / d:
            centre = np.eye(d, dtype=np.complex128)[None, :, :] / d
            return EpsNet(gamma, d, kind, centre, {"method": "centre"})
        if d == 2:
            return _bloch_net(gamma, max_elements)
        raise NetTooLarge(
            f"mixed nets for d={d} below gamma={1.0 - 1.0 / d:.3f} are not "
            "enumerable at desk scale; coarsen gamma"
        )
    if kind == "pure":
        if d > 8:
            raise ValueError("pure nets are capped at dimension 8")
        if gamma >= 1.0:
            e0 = np.zeros((1, d, d), dtype=np.complex128)
            e0[0, 0, 0] = 1.0
            return EpsNet(gamma, d, kind, e0, {"method": "centre"})
        return _pure_net(d, gamma, max_elements)
    raise ValueError(f"unknown net kind {kind!r}")


def _bloch_net(gamma: float, max_elements: int) -> EpsNet:
    # budget: lattice covering 3*gamma/4 (in trace distance, i.e. half the
    # Bloch-vector distance) plus gamma/4 lost to deduplication
    step = gamma * math.sqrt(3.0) / 2.0
    half_count = math.floor(1.0 / step)
    axis = np.arange(-half_count, half_count + 1) * step
    if axis.size ** 3 > 8 * max_elements:
        raise NetTooLarge(f"{axis.size ** 3} lattice candidates exceed the ceiling")
    grid = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1).reshape(-1, 3)
    norms = np.linalg.norm(grid, axis=1)
    inside = grid[norms <= 1.0]
    shell_mask = (norms > 1.0) & (norms <= 1.0 + step * math.sqrt(3.0))
    clipped = grid[shell_mask] / norms[shell_mask][:, None]
    # merge clipped points within trace distance gamma/4 (Bloch gamma/2)
    if clipped.shape[0]:
        bucket = gamma / (2.0 * math.sqrt(3.0))
        keys = np.round(clipped / bucket).astype(np.int64)
        _, first = np.unique(keys, axis=0, return_index=True)
        clipped = clipped[np.sort(first)]
    points = np.concatenate([inside, clipped], axis=0)
    if points.shape[0] > max_elements:
        raise NetTooLarge(f"net would have {points.shape[0]} elements")
    mats = np.empty((points.shape[0], 2, 2), dtype=np.complex128)
    mats[:] = np.eye(2, dtype=np.complex128) / 2.0
    for k in range(3):
        mats += 0.5 * points[:, k, None, None] * _PAULI_XYZ[k][None, :, :]
    return EpsNet(
        gamma,
        2,
        "mixed",
        mats,
        {
            "method": "bloch-lattice",
            "step": step,
            "interior_points": int(inside.shape[0]),
            "clipped_points": int(points.shape[0] - inside.shape[0]),
        },
    )


def _pure_net(d: int, gamma: float, max_elements: int) -> EpsNet:
    # Euclidean distance on amplitude vectors upper-bounds trace distance,
    # so a grid with per-coordinate step h covers within h*sqrt(2d) after
    # normalization; 3/4 of the budget goes to the grid, 1/4 to dedup.
    coords = 2 * d
    h = 0.75 * gamma / math.sqrt(coords)
    half_count = math.ceil(1.0 / h)
    values = np.arange(-half_count, half_count + 1) * h
    slack = h * math.sqrt(coords) / 2.0
    lo, hi = (1.0 - slack) ** 2, (1.0 + slack) ** 2
    found: list[np.ndarray] = []

    def recurse(prefix: list[float], norm_sq: float, depth: int) -> None:
        if norm_sq > hi:
            return
        if depth == coords:
            if norm_sq >= lo and norm_sq > 0:
                found.append(np.array(prefix) / math.sqrt(norm_sq))
                if len(found) > 4 * max_elements:
                    raise NetTooLarge("pure net enumeration exceeded the ceiling")
            return
        # remaining coordinates can only increase the norm
        for v in values:
            recurse(prefix + [v], norm_sq + v * v, depth + 1)

    recurse([], 0.0, 0)
    if not found:
        raise NetTooLarge("pure net grid produced no points; gamma too small")
    reals = np.stack(found)
    bucket = gamma / (4.0 * math.sqrt(coords))
    keys = np.round(reals / bucket).astype(np.int64)
    _, first = np.unique(keys, axis=0, return_index=True)
    reals = reals[np.sort(first)]
    if reals.shape[0] > max_elements:
        raise NetTooLarge(f"net would have {reals.shape[0]} elements")
    vecs = reals[:, :d] + 1j * reals[:, d:]
    mats = vecs[:, :, None] * vecs[:, None, :].conj()
    return EpsNet(
        gamma,
        d,
        "pure",
        mats,
        {"method": "amplitude-grid", "step": h, "raw_points": len(found)},
    )


# ---------------------------------------------------------------------------
# tomography + net key-recovery attack
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NetAttackParams:
    """Derived parameters of the net attack for target advantage gap Delta."""

    target_gap: float  # Delta: attack aims at win probability 1 - Delta
    gamma: float  # Delta / 6
    net_size: int
    eps_bad: float  # gamma / net_size
    failure_budget: float
    max_iterations: int

    @classmethod
    def derive(cls, target_gap: float, net_size: int, failure_budget: float = 1e-3):
        gamma = target_gap / 6.0
        eps_bad = gamma / net_size
        max_iterations = math.ceil(math.log2(1.0 / failure_budget) / eps_bad)
        return cls(
            target_gap=target_gap,
            gamma=gamma,
            net_size=net_size,
            eps_bad=eps_bad,
            failure_budget=failure_budget,
            max_iterations=max_iterations,
        )

    def to_dict(self) -> dict:
        return {
            "target_gap": self.target_gap,
            "gamma": self.gamma,
            "net_size": self.net_size,
            "eps_bad": self.eps_bad,
            "failure_budget": self.failure_budget,
            "max_iterations": self.max_iterations,
        }


class NetAdversary:
    """Key-recovery adversary: estimate the challenge, shortlist the net
    points near it, then resample keys until one lands near the shortlist.

    Membership tests use trace distance with threshold gamma; candidates
    are scanned in ascending net index and the first qualifying iteration
    wins.  Returns None (recorded as an abort) if the shortlist is empty
    or the iteration cap runs out.
    """

    def __init__(
        self,
        scheme: OwsgScheme,
        net: EpsNet,
        params: NetAttackParams,
        *,
        tomography_mode: str = "oracle",
        perturb_trace_norm: float = 0.0,
        beta: float = 0.05,
    ):
        self.scheme = scheme
        self.net = net
        self.params = params
        self.tomography_mode = tomography_mode
        self.perturb_trace_norm = perturb_trace_norm
        self.beta = beta
        self.last_record: dict = {}

    def _estimate(self, state: DensityMatrix, rng: Rng) -> np.ndarray:
        result = tomography(
            state,
            self.params.gamma,
            rng,
            mode=self.tomography_mode,
            beta=self.beta,
            perturb_trace_norm=self.perturb_trace_norm,
        )
        return result.estimate.matrix

    def __call__(self, payload: DensityMatrix, rng: Rng) -> int | None:
        gamma = self.params.gamma
        estimate = self._estimate(payload, rng.child("tomography"))
        shortlist = np.nonzero(self.net.distances_to(estimate) <= gamma + 1e-12)[0]
        record = {"shortlist_size": int(shortlist.size), "iterations": 0, "bot": True}
        self.last_record = record
        if shortlist.size == 0:
            return None
        nearby = self.net.matrices[shortlist]
        for i in range(self.params.max_iterations):
            stream = rng.child(f"iteration-{i}")
            key = self.scheme.key_gen(stream.child("keygen"))
            candidate = self._estimate(self.scheme.state_gen(key), stream.child("tomography"))
            if np.any(batch_trace_distance(nearby, candidate) <= gamma + 1e-12):
                record["iterations"] = i + 1
                record["bot"] = False
                return key
        record["iterations"] = self.params.max_iterations
        return None


def net_attack(
    scheme: OwsgScheme,
    target_gap: float,
    *,
    net: EpsNet | None = None,
    failure_budget: float = 1e-3,
    tomography_mode: str = "oracle",
    perturb_trace_norm: float = 0.0,
    max_net_elements: int = 2_000_000,
) -> NetAdversary:
    if not 0.0 < target_gap < 1.0:
        raise ValueError("target gap must be in (0, 1)")
    gamma = target_gap / 6.0
    if net is None:
        net = build_net(1 << scheme.output_qubits, gamma, max_elements=max_net_elements)
    params = NetAttackParams.derive(target_gap, net.size, failure_budget)
    return NetAdversary(
        scheme,
        net,
        params,
        tomography_mode=tomography_mode,
        perturb_trace_norm=perturb_trace_norm,
    )


def run_net_attack(
    scheme: OwsgScheme,
    adversary: NetAdversary,
    trials: int,
    rng: Rng,
    *,
    scoring: str = "exact",
    bound: float | None = None,
    bound_source: str = "",
) -> GameReport:
    """Run the net attack, tracking aborts and the per-trial structural
    guarantee (recovered key's state within 4*gamma of the target)."""
    gamma = adversary.params.gamma
    wins = 0.0
    bots = 0
    structural_violations = 0
    transcript = []
    for t in range(trials):
        stream = rng.child(f"trial-{t}")
        key = scheme.key_gen(stream.child("keygen"))
        challenge = scheme.challenge(key)
        candidate = adversary(scheme.state_gen(key), stream.child("adversary"))
        record = {
            "trial": t,
            "seed": rng.seed,
            "mode": adversary.tomography_mode,
            "outcome": "abort" if candidate is None else "recovered",
            "bot": candidate is None,
            **adversary.last_record,
        }
        if candidate is None:
            bots += 1
            transcript.append(record)
            continue
        td = qcore.trace_distance(scheme.state_gen(key), scheme.state_gen(candidate))
        record["recovered_key"] = int(candidate)
        record["td_to_target"] = td
        if adversary.tomography_mode == "oracle" and adversary.perturb_trace_norm == 0.0:
            if td > 4.0 * gamma + 1e-9:
                structural_violations += 1
                record["structural_violation"] = True
        p_accept = scheme.verifier(int(candidate), challenge)
        if scoring == "exact":
            wins += p_accept
        else:
            wins += stream.child("score").bernoulli(p_accept)
        transcript.append(record)
    detail = {
        "bot_rate": bots / trials,
        "bots": bots,
        "structural_violations": structural_violations,
        "params": adversary.params.to_dict(),
        "transcript": transcript,
    }
    return GameReport.from_counts(
        trials,
        wins,
        bound=bound,
        bound_kind="lower",
        bound_source=bound_source,
        mode=f"net-attack/{adversary.tomography_mode}/{scoring}",
        detail=detail,
    )


# ---------------------------------------------------------------------------
# spectral-projector distinguisher
# ---------------------------------------------------------------------------


class EfiDistinguisher:
    """Distinguisher that estimates both arms, projects onto the positive
    part of the estimated difference, and reports which side the challenge
    lands on.

    With both estimates within trace-norm delta of the true states, the
    distinguishing advantage is at least TD(rho_0, rho_1) - 8*delta.  Modes:
    "oracle" uses exact states, optionally displaced by adversarial
    perturbations of trace norm exactly ``perturb_trace_norm``; "sampled"
    runs shot-budgeted tomography.  Fresh estimates are drawn per call
    unless ``cache`` is set.
    """

    def __init__(
        self,
        pair: EfiPair,
        distance_floor: float,
        *,
        mode: str = "oracle",
        perturb_trace_norm: float | None = None,
        beta: float = 0.05,
        cache: bool = False,
    ):
        if distance_floor <= 0.0:
            raise ValueError("distance floor must be positive")
        self.pair = pair
        self.distance_floor = distance_floor
        self.delta = distance_floor / 16.0
        self.mode = mode
        self.perturb_trace_norm = (
            self.delta if perturb_trace_norm is None else perturb_trace_norm
        )
        self.beta = beta
        self.cache = cache
        self._cached_projector: qcore.Projector | None = None

    def projector(self, rng: Rng) -> qcore.Projector:
        if self.cache and self._cached_projector is not None:
            return self._cached_projector
        estimates = []
        for b in (0, 1):
            result = tomography(
                self.pair.state_gen(b),
                self.delta,
                rng.child(f"arm-{b}"),
                mode=self.mode,
                beta=self.beta,
                perturb_trace_norm=self.perturb_trace_norm if self.mode == "oracle" else 0.0,
            )
            estimates.append(result.estimate.matrix)
        projector = qcore.positive_part_projector(estimates[0] - estimates[1])
        if self.cache:
            self._cached_projector = projector
        return projector

    def exact_advantage(self, rng: Rng) -> float:
        """Tr(P (rho_0 - rho_1)) for one fresh draw of the projector."""
        projector = self.projector(rng)
        rho0, rho1 = self.pair.states()
        return float(np.real(np.trace(projector.matrix @ (rho0.matrix - rho1.matrix))))

    def guarantee(self) -> float:
        """Advantage floor TD - 8*delta implied by the error budget."""
        return self.pair.trace_distance() - 8.0 * self.perturb_trace_norm

    def __call__(self, challenge: DensityMatrix, rng: Rng) -> int:
        projector = self.projector(rng.child("estimate"))
        return qcore.measure(challenge, projector, rng.child("measure"))


def efi_distinguisher(
    pair: EfiPair,
    polynomial_stand_in: float,
    *,
    mode: str = "oracle",
    perturb_trace_norm: float | None = None,
    beta: float = 0.05,
    cache: bool = False,
) -> EfiDistinguisher:
    """Build the spectral distinguisher for a pair with TD >= 1/p.

    ``polynomial_stand_in`` is p; the tomography error target is 1/(16 p).
    """
    if polynomial_stand_in < 1.0:
        raise ValueError("p must be at least 1 (TD is at most 1)")
    return EfiDistinguisher(
        pair,
        1.0 / polynomial_stand_in,
        mode=mode,
        perturb_trace_norm=perturb_trace_norm,
        beta=beta,
        cache=cache,
    )


# ---------------------------------------------------------------------------
# swap-test attack on hiding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SwapAttackAnalysis:
    purity: float  # Tr(rho_0^2)
    cross_term: float  # Tr(rho_0 rho_1)
    predicted_advantage: float  # (purity - cross) / 2
    purity_floor: float  # 2^-|R|: rank bound via Cauchy-Schwarz
    accept_prob: tuple[float, float]  # swap-test accept rate per arm

    def to_dict(self) -> dict:
        return {
            "purity": self.purity,
            "cross_term": self.cross_term,
            "predicted_advantage": self.predicted_advantage,
            "purity_floor": self.purity_floor,
            "accept_prob_arm0": self.accept_prob[0],
            "accept_prob_arm1": self.accept_prob[1],
        }


def swap_hiding_attack(commitment: CanonicalCommitment):
    """Swap-test distinguisher on the C-marginals, plus its exact analysis.

    The attacker swap-tests the challenge against a fresh honest
    0-commitment marginal; acceptance rates are (1 + Tr(rho_0 rho_b))/2,
    so the advantage is (Tr(rho_0^2) - Tr(rho_0 rho_1))/2.  Since rho_0 has
    rank at most 2^|R|, its purity is floored at 2^-|R|.
    """
    rho0 = commitment.commit_marginal(0)
    rho1 = commitment.commit_marginal(1)
    purity = rho0.purity()
    cross = float(np.real(np.trace(rho0.matrix @ rho1.matrix)))
    analysis = SwapAttackAnalysis(
        purity=purity,
        cross_term=cross,
        predicted_advantage=(purity - cross) / 2.0,
        purity_floor=2.0 ** (-commitment.reveal_qubits),
        accept_prob=((1.0 + purity) / 2.0, (1.0 + cross) / 2.0),
    )

    def distinguisher(challenge: DensityMatrix, rng: Rng) -> int:
        return qcore.swap_test_sample(rho0, challenge, rng)

    return distinguisher, analysis
