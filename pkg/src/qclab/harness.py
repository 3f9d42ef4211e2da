"""Experiment runner.

Each named experiment composes the other modules into a seeded,
replayable run that emits per-trial records, aggregate values, and
BoundChecks; a report passes iff every embedded check holds.  ``run_suite``
executes the full acceptance battery and writes one report per criterion
plus a summary.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass

import numpy as np

from . import attacks, bounds, caps, constructions, primitives, qcore
from .errors import ConfigError
from .plot import emit_plot
from .report import atomic_write_text, csv_render, json_dumps, strip_wall_time
from .rng import Rng

SCHEMA_VERSION = 1

_TOP_LEVEL_KEYS = {
    "schema_version",
    "experiment",
    "params",
    "trials",
    "seed",
    "output",
    "format",
    "plot",
    "max_qubits",
}


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    params: dict
    trials: int
    seed: int
    output: str | None = None
    format: str = "json"
    plot: str | None = None
    max_qubits: int | None = None

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        unknown = set(raw) - _TOP_LEVEL_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        version = raw.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise ConfigError(f"unsupported schema_version {version}")
        experiment = raw.get("experiment")
        if experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {experiment!r}")
        if "seed" not in raw:
            raise ConfigError("seed is mandatory")
        seed = raw["seed"]
        if not isinstance(seed, int) or seed < 0:
            raise ConfigError("seed must be a nonnegative integer")
        definition = EXPERIMENTS[experiment]
        params = dict(raw.get("params", {}))
        bad = set(params) - set(definition.params)
        if bad:
            raise ConfigError(f"unknown params for {experiment}: {sorted(bad)}")
        for key, default in definition.params.items():
            params.setdefault(key, default)
        trials = raw.get("trials", definition.default_trials)
        if not isinstance(trials, int) or trials < 1:
            raise ConfigError("trials must be a positive integer")
        fmt = raw.get("format", "json")
        if fmt not in ("json", "csv", "both"):
            raise ConfigError(f"unknown format {fmt!r}")
        max_qubits = raw.get("max_qubits")
        if max_qubits is not None:
            if not isinstance(max_qubits, int) or max_qubits < 1:
                raise ConfigError("max_qubits must be a positive integer")
            if max_qubits > caps.HARD_CAP:
                raise ConfigError(f"max_qubits may not exceed {caps.HARD_CAP}")
        return cls(
            experiment=experiment,
            params=params,
            trials=trials,
            seed=seed,
            output=raw.get("output"),
            format=fmt,
            plot=raw.get("plot"),
            max_qubits=max_qubits,
        )

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "experiment": self.experiment,
            "params": self.params,
            "trials": self.trials,
            "seed": self.seed,
            "output": self.output,
            "format": self.format,
            "plot": self.plot,
            "max_qubits": self.max_qubits,
        }


@dataclass
class ExperimentReport:
    experiment: str
    config: dict
    records: list
    aggregates: dict
    checks: list
    citations: list
    wall_time: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "experiment": self.experiment,
            "config": self.config,
            "passed": self.passed,
            "wall_time": self.wall_time,
            "checks": [c.to_dict() for c in self.checks],
            "citations": self.citations,
            "aggregates": self.aggregates,
            "records": self.records,
        }

    def to_json(self) -> str:
        return json_dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        return csv_render(self.records)


@dataclass(frozen=True)
class ExperimentDef:
    runner: object
    params: dict
    default_trials: int


def run(config: ExperimentConfig) -> ExperimentReport:
    """Execute one experiment and (when configured) write its outputs."""
    definition = EXPERIMENTS[config.experiment]
    rng = Rng(config.seed, (config.experiment,))
    started = time.perf_counter()
    if config.max_qubits is not None:
        with caps.cap_override(config.max_qubits):
            records, aggregates, checks, citations = definition.runner(
                config.params, config.trials, rng
            )
    else:
        records, aggregates, checks, citations = definition.runner(
            config.params, config.trials, rng
        )
    report = ExperimentReport(
        experiment=config.experiment,
        config=config.to_dict(),
        records=records,
        aggregates=aggregates,
        checks=checks,
        citations=citations,
        wall_time=time.perf_counter() - started,
        passed=all(c.holds for c in checks),
    )
    if config.output:
        write_outputs(report, config)
    if config.plot:
        emit_plot(report, config.plot)
    return report


def write_outputs(report: ExperimentReport, config: ExperimentConfig) -> None:
    out = config.output
    base, ext = os.path.splitext(out)
    if config.format in ("json", "both"):
        atomic_write_text(out if ext == ".json" or config.format == "json" else base + ".json",
                          report.to_json())
    if config.format in ("csv", "both"):
        atomic_write_text(out if config.format == "csv" else base + ".csv", report.to_csv())


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------


def _exp_welch(params, trials, rng):
    checks = bounds.welch_sweep(
        trials,
        rng.child("sweep"),
        max_states=params["max_states"],
        max_qubits=params["max_qubits"],
        k=params["k"],
    )
    records = [
        {"index": i, "lhs": c.lhs, "rhs": c.rhs, "margin": c.margin, "holds": c.holds}
        for i, c in enumerate(checks)
    ]
    # tightness: the uniform orthonormal ensemble sits exactly on the floor
    dim_qubits = params["max_qubits"]
    basis = [qcore.basis_state(dim_qubits, i) for i in range(1 << dim_qubits)]
    uniform = np.full(len(basis), 1.0 / len(basis))
    equality = bounds.welch_check(basis, uniform, witness={"ensemble": "orthonormal-uniform"})
    equality_check = bounds.make_check(
        "overlap-floor-equality-case",
        equality.lhs,
        equality.rhs,
        "==",
        1e-9,
        equality.witness,
    )
    all_checks = [bounds.aggregate_checks("overlap-floor-sweep", checks), equality_check]
    aggregates = {"ensembles": trials, "min_margin": min(c.margin for c in checks)}
    return records, aggregates, all_checks, ["pairwise-overlap floor 2^-m (Welch)"]


def _haar_toy_scheme(n: int, m: int, rng: Rng):
    return constructions.prsg_to_owsg(primitives.make_haar_prsg(n, m, rng))


def _exp_owsg_trivial(params, trials, rng):
    pairs = params["sweep"] or [[params["n"], params["m"]]]
    records, checks = [], []
    sweep_x, sweep_est, sweep_ref = [], [], []
    for n, m in pairs:
        scheme = _haar_toy_scheme(n, m, rng.child(f"scheme-{n}-{m}"))
        stats = attacks.expected_pairwise_quantities(scheme)
        exact_win = attacks.trivial_adversary_exact_win(scheme)
        game = primitives.run_onewayness_game(
            scheme,
            attacks.trivial_adversary(scheme),
            copies=1,
            trials=trials,
            rng=rng.child(f"game-{n}-{m}"),
            scoring="sampled",
            bound=stats.overlap_floor,
            bound_source="pairwise-overlap floor 2^-m",
        )
        sigma = game.ci95_halfwidth / 1.96
        tag = f"n{n}-m{m}"
        checks += [
            bounds.make_check(
                f"exact-win-equals-overlap-mean-{tag}",
                exact_win,
                stats.expected_overlap_sq,
                "==",
                1e-9,
                {"n": n, "m": m},
            ),
            bounds.make_check(
                f"exact-win-floor-{tag}",
                exact_win,
                stats.overlap_floor,
                ">=",
                1e-9,
                {"n": n, "m": m},
            ),
            bounds.make_check(
                f"expected-td-cap-{tag}",
                stats.expected_td,
                stats.td_bound,
                "<=",
                1e-9,
                {"n": n, "m": m},
            ),
            bounds.make_check(
                f"correctness-{tag}", stats.correctness, 1.0, "==", 1e-9, {"n": n, "m": m}
            ),
            bounds.make_check(
                f"sampled-matches-exact-{tag}",
                game.estimate,
                exact_win,
                "==",
                3.0 * sigma + 1e-12,
                {"n": n, "m": m, "trials": trials},
            ),
        ]
        records.append(
            {
                "n": n,
                "m": m,
                "exact_win": exact_win,
                "sampled_win": game.estimate,
                "expected_td": stats.expected_td,
                "td_bound": stats.td_bound,
                "overlap_floor": stats.overlap_floor,
                "win_lower_bound": stats.win_lower_bound,
            }
        )
        sweep_x.append(m)
        sweep_est.append(exact_win)
        sweep_ref.append(stats.overlap_floor)
    aggregates = {}
    if len(pairs) > 1:
        aggregates["sweep"] = {
            "x": sweep_x,
            "x_label": "output qubits m",
            "y_label": "random-key win probability",
            "series": {"exact win": sweep_est},
            "reference": {"name": "2^-m floor", "y": sweep_ref},
        }
    citations = [
        "random-key adversary wins with probability >= 2^-m on pure outputs",
        "expected pairwise trace distance <= sqrt(1 - 2^-m)",
    ]
    return records, aggregates, checks, citations


def _exp_owsg_net(params, trials, rng):
    n, m = params["n"], params["m"]
    gap = params["target_gap"]
    scheme = _haar_toy_scheme(n, m, rng.child("scheme"))
    adversary = attacks.net_attack(
        scheme,
        gap,
        failure_budget=params["failure_budget"],
        tomography_mode=params["tomography"],
    )
    game = attacks.run_net_attack(
        scheme,
        adversary,
        trials,
        rng.child("attack"),
        bound=1.0 - gap,
        bound_source="net attack succeeds with probability >= 1 - target gap",
    )
    gamma = adversary.params.gamma
    sigma_win = game.ci95_halfwidth / 1.96
    sigma_bot = math.sqrt(gamma * (1.0 - gamma) / trials)
    audit = adversary.net.covering_audit(params["covering_samples"], rng.child("covering"))
    checks = [
        bounds.make_check(
            "net-attack-win-rate",
            game.estimate,
            1.0 - gap,
            ">=",
            3.0 * sigma_win + 1e-12,
            {"n": n, "m": m, "target_gap": gap, "trials": trials},
        ),
        bounds.make_check(
            "abort-rate",
            game.detail["bot_rate"],
            gamma,
            "<=",
            3.0 * sigma_bot + 1e-12,
            {"trials": trials},
        ),
        bounds.make_check(
            "structural-within-4gamma",
            float(game.detail["structural_violations"]),
            0.0,
            "==",
            0.0,
            {"gamma": gamma},
        ),
        bounds.make_check(
            "net-covering",
            audit["fraction_covered"],
            0.995,
            ">=",
            1e-12,
            {"samples": audit["samples"], "net_size": adversary.net.size},
        ),
    ]
    aggregates = {
        "params": adversary.params.to_dict(),
        "net_size": adversary.net.size,
        "net_c_impl": adversary.net.c_impl,
        "net_construction": adversary.net.construction,
        "covering_audit": audit,
        "win_rate": game.estimate,
        "bot_rate": game.detail["bot_rate"],
    }
    records = game.detail["transcript"]
    citations = [
        "tomography + covering-net attack: win rate >= 1 - target gap",
        "abort probability <= gamma",
        "recovered key within 4*gamma of the target state",
    ]
    return records, aggregates, checks, citations


def _exp_efi_build(params, trials, rng):
    records, checks = [], []
    for n in params["n_values"]:
        prg = primitives.make_toy_prg(n, rng.child(f"prg-{n}"))
        pair = constructions.prg_efi(prg)
        fid = pair.fidelity()
        td = pair.trace_distance()
        rho0, rho1 = pair.states()
        off_diag = max(
            float(np.max(np.abs(rho0.matrix - np.diag(np.diag(rho0.matrix))))),
            float(np.max(np.abs(rho1.matrix - np.diag(np.diag(rho1.matrix))))),
        )
        tag = f"n{n}"
        checks += [
            bounds.make_check(
                f"fidelity-cap-{tag}", fid, 2.0 ** (-n), "<=", 1e-9, {"n": n}
            ),
            bounds.make_check(
                f"fidelity-equality-injective-{tag}",
                fid,
                2.0 ** (-n),
                "==",
                1e-9,
                {"n": n, "injective": prg.injective},
            ),
            bounds.make_check(
                f"td-floor-{tag}", td, 1.0 - 2.0 ** (-n / 2.0), ">=", 1e-9, {"n": n}
            ),
            bounds.make_check(
                f"diagonal-states-{tag}", off_diag, 0.0, "==", 1e-12, {"n": n}
            ),
        ]
        records.append(
            {"n": n, "fidelity": fid, "trace_distance": td, "prg_seed": prg.seed}
        )
    citations = [
        "image-vs-uniform ensemble: F <= 2^-n (Cauchy-Schwarz vs maximally mixed)",
        "trace distance >= 1 - 2^(-n/2) (Fuchs-van de Graaf from exact F)",
    ]
    return records, {}, checks, citations


def _exp_efi_attack(params, trials, rng):
    n = params["n"]
    prg = primitives.make_toy_prg(n, rng.child("prg"))
    pair = constructions.prg_efi(prg)
    td = pair.trace_distance()
    p = 1.0 / td
    records, checks = [], []
    aggregates = {"trace_distance": td, "delta": td / 16.0}
    for mode in params["modes"]:
        if mode == "perturbed":
            dist = attacks.efi_distinguisher(pair, p, mode="oracle")
            bound, relation, label = td / 2.0, ">=", "advantage-floor-perturbed"
            source = "spectral distinguisher: advantage >= TD - 8*delta = TD/2"
        elif mode == "helstrom":
            dist = attacks.efi_distinguisher(pair, p, mode="oracle", perturb_trace_norm=0.0)
            bound, relation, label = td, "==", "advantage-equals-td-helstrom"
            source = "exact estimates give the optimal two-state measurement"
        else:
            raise ConfigError(f"unknown efi-attack mode {mode!r}")
        game = primitives.run_efi_game(
            pair,
            dist,
            trials,
            rng.child(f"game-{mode}"),
            bound=bound,
            bound_kind="lower",
            bound_source=source,
        )
        sigma = game.ci95_halfwidth / 1.96
        checks.append(
            bounds.make_check(
                label,
                game.estimate,
                bound,
                relation,
                3.0 * sigma + 1e-12,
                {"n": n, "mode": mode, "trials_per_arm": trials},
            )
        )
        records.append(
            {
                "mode": mode,
                "advantage": game.estimate,
                "bound": bound,
                "p_arm0": game.detail["p_arm0"],
                "p_arm1": game.detail["p_arm1"],
            }
        )
        aggregates[f"game_{mode}"] = game.to_dict()
    citations = [
        "estimate both arms, project on the positive part, measure",
        "with estimate errors <= delta the advantage is >= TD - 8*delta",
    ]
    return records, aggregates, checks, citations


def _codeword_bit_matrix(code, messages: int) -> np.ndarray:
    bits = np.zeros((messages, code.block_bits), dtype=np.float64)
    for x in range(messages):
        word = code.encode(x)
        for i in range(code.block_bits):
            bits[x, i] = (word >> i) & 1
    return bits


def _exp_fingerprint(params, trials, rng):
    ell, eta = params["l"], params["eta"]
    owf = primitives.make_toy_owf(params["owf_n"], ell, rng.child("owf"), kind=params["owf_kind"])
    scheme = constructions.fingerprint_owsg(
        owf,
        eta,
        rng.child("code"),
        block_bits=params["block_bits"],
        target_delta=params["target_delta"],
        max_tries=params["max_tries"],
    )
    meta = scheme.metadata
    code = constructions.LinearCode.from_descriptor(meta["code"])
    fingerprint = constructions.make_fingerprint(code, eta)
    messages = 1 << ell

    # exhaustive pairwise overlaps, twice over: from the state vectors and
    # from the codeword-agreement formula
    stack = np.stack(
        [constructions.fingerprint_state(fingerprint, x).amplitudes for x in range(messages)]
    )
    gram = np.abs(stack @ stack.conj().T)
    bits = _codeword_bit_matrix(code, messages)
    agreements = bits @ bits.T + (1.0 - bits) @ (1.0 - bits).T
    formula = (agreements / code.block_bits) ** fingerprint.repetitions
    off = ~np.eye(messages, dtype=bool)
    max_overlap = float(np.max(gram[off]))
    max_route_gap = float(np.max(np.abs(gram - formula)))
    delta_r = fingerprint.overlap_bound()

    # verifier behaviour across key pairs, grouped by image agreement
    images = np.array([owf(k) for k in range(scheme.num_keys)])
    image_gram_sq = gram[np.ix_(images, images)] ** 2
    distinct = images[:, None] != images[None, :]
    cross_max = float(np.max(image_gram_sq[distinct])) if distinct.any() else 0.0
    correctness = primitives.scheme_correctness(scheme)

    checks = [
        bounds.make_check(
            "overlap-routes-agree", max_route_gap, 0.0, "==", 1e-9, {"pairs": "exhaustive"}
        ),
        bounds.make_check(
            "overlap-within-delta-r", max_overlap, delta_r, "<=", 1e-9, {"l": ell}
        ),
        bounds.make_check(
            "overlap-max-attains-delta-r",
            max_overlap,
            delta_r,
            "==",
            1e-9,
            {"d_min": code.d_min},
        ),
        bounds.make_check("delta-r-within-eta", delta_r, eta, "<=", 1e-12, {"r": fingerprint.repetitions}),
        bounds.make_check("correctness", correctness, 1.0, "==", 1e-9, {}),
        bounds.make_check(
            "cross-image-acceptance", cross_max, eta * eta, "<=", 1e-9, {"eta": eta}
        ),
    ]
    aggregates = {
        "code": code.to_descriptor(),
        "fingerprint": fingerprint.to_descriptor(),
        "total_qubits": fingerprint.total_qubits,
        "max_overlap": max_overlap,
        "delta_r": delta_r,
        "cross_image_max_acceptance": cross_max,
    }
    records = [
        {
            "d_min": code.d_min,
            "delta": code.delta,
            "r": fingerprint.repetitions,
            "max_overlap": max_overlap,
            "cross_image_max": cross_max,
        }
    ]
    citations = [
        "code fingerprints: |<h_x|h_x'>| = (agreement/m)^r <= delta^r <= eta",
        "verifier acceptance across images <= eta^2",
    ]
    return records, aggregates, checks, citations


def _exp_phase_owsg(params, trials, rng):
    ell, alphabet = params["l"], params["alphabet"]
    owf = primitives.make_toy_owf(params["owf_n"], ell, rng.child("owf"))
    scheme = constructions.phase_owsg(owf, alphabet)
    ceiling = constructions.phase_overlap_ceiling(alphabet)

    values = 1 << ell
    digit_lists = [constructions.digit_split(y, ell, alphabet) for y in range(values)]
    stack = np.stack(
        [constructions.phase_state(d, alphabet).amplitudes for d in digit_lists]
    )
    gram = np.abs(stack @ stack.conj().T)
    digits = np.array(digit_lists)
    differing = (digits[:, None, :] != digits[None, :, :]).sum(axis=2)
    formula = np.ones((values, values))
    for j in range(digits.shape[1]):
        col = digits[:, j]
        per_digit = np.abs(
            (1.0 + np.exp(2j * math.pi * (col[None, :] - col[:, None]) / alphabet)) / 2.0
        )
        formula *= per_digit
    bound_matrix = ceiling ** differing
    off = differing > 0
    max_route_gap = float(np.max(np.abs(gram - formula)))
    worst_excess = float(np.max(gram[off] - bound_matrix[off]))
    correctness = primitives.scheme_correctness(scheme)
    checks = [
        bounds.make_check("overlap-routes-agree", max_route_gap, 0.0, "==", 1e-9, {}),
        bounds.make_check(
            "overlap-within-per-digit-ceiling",
            worst_excess,
            0.0,
            "<=",
            1e-9,
            {"alphabet": alphabet, "ceiling": ceiling},
        ),
        bounds.make_check("correctness", correctness, 1.0, "==", 1e-9, {}),
    ]
    aggregates = {
        "digits": scheme.output_qubits,
        "per_digit_ceiling": ceiling,
        "max_overlap_distinct": float(np.max(gram[off])),
    }
    records = [
        {
            "alphabet": alphabet,
            "digits": scheme.output_qubits,
            "ceiling": ceiling,
            "max_overlap_distinct": float(np.max(gram[off])),
        }
    ]
    citations = [
        "per-digit overlap |(1 + e^{2 pi i (y - y')/alphabet})/2| <= sqrt((1 + cos(2 pi/alphabet))/2)"
    ]
    return records, aggregates, checks, citations


def _exp_prsg_owsg(params, trials, rng):
    n, m, h = params["n"], params["m"], params["h"]
    prsg = primitives.make_haar_prsg(n, m, rng.child("backend"))
    scheme = constructions.prsg_to_owsg(prsg)
    correctness = primitives.scheme_correctness(scheme)
    slack = constructions.prsg_verifier_slack(n, m, h)
    checks = [
        bounds.make_check("projection-correctness", correctness, 1.0, "==", 1e-9, {"n": n, "m": m}),
        bounds.make_check(
            "slack-at-h-1-is-1",
            constructions.prsg_verifier_slack(n, m, 1.0),
            1.0,
            "==",
            1e-12,
            {},
        ),
    ]
    aggregates = {
        "verifier_slack": slack,
        "slack_vacuous": slack >= 1.0,
        "h": h,
        "backend": prsg.to_descriptor(),
    }
    records = [{"n": n, "m": m, "h": h, "verifier_slack": slack}]
    citations = ["projection-verifier slack 2^n (1-h)^(2^m - 1) + h"]
    return records, aggregates, checks, citations


def _exp_commit_build(params, trials, rng):
    n = params["n"]
    prg = primitives.make_toy_prg(n, rng.child("prg"))
    commitment = constructions.prg_commitment(prg)
    reveal0 = primitives.reveal_verify(commitment, 0, commitment.commit_state(0))
    reveal1 = primitives.reveal_verify(commitment, 1, commitment.commit_state(1))
    binding = primitives.honest_binding_optimum(commitment)
    uhlmann = primitives.apply_reveal_attack(commitment, binding.attack_unitary)
    attack_accept = primitives.reveal_verify(commitment, 1, uhlmann)
    mixed_gap = float(
        np.max(
            np.abs(
                commitment.commit_marginal(1).matrix
                - qcore.maximally_mixed(commitment.commit_qubits).matrix
            )
        )
    )
    checks = [
        bounds.make_check("reveal-correctness-0", reveal0, 1.0, "==", 1e-9, {"n": n}),
        bounds.make_check("reveal-correctness-1", reveal1, 1.0, "==", 1e-9, {"n": n}),
        bounds.make_check(
            "binding-optimum-cap", binding.optimum, 2.0 ** (-n), "<=", 1e-9, {"n": n}
        ),
        bounds.make_check(
            "uhlmann-attack-attains-optimum",
            attack_accept,
            binding.optimum,
            "==",
            1e-7,
            {"n": n},
        ),
        bounds.make_check(
            "uniform-commitment-marginal", mixed_gap, 0.0, "==", 1e-9, {"n": n}
        ),
    ]
    aggregates = {
        "binding_optimum": binding.optimum,
        "reveal_qubits": commitment.reveal_qubits,
        "commit_qubits": commitment.commit_qubits,
        "prg": prg.to_descriptor(),
    }
    records = [
        {
            "n": n,
            "reveal_0": reveal0,
            "reveal_1": reveal1,
            "binding_optimum": binding.optimum,
            "uhlmann_accept": attack_accept,
        }
    ]
    citations = [
        "binding optimum = fidelity of the commitment marginals (Uhlmann)",
        "image-vs-uniform marginals: F <= 2^-n",
    ]
    return records, aggregates, checks, citations


def _exp_commit_convert(params, trials, rng):
    n = params["n"]
    prg = primitives.make_toy_prg(n, rng.child("prg"))
    base = constructions.prg_commitment(prg)
    converted = constructions.flavor_convert(base)
    reveal0 = primitives.reveal_verify(converted, 0, converted.commit_state(0))
    reveal1 = primitives.reveal_verify(converted, 1, converted.commit_state(1))
    overlap = abs(converted.commit_state(0).overlap(converted.commit_state(1)))
    checks = [
        bounds.make_check("converted-reveal-0", reveal0, 1.0, "==", 1e-9, {"n": n}),
        bounds.make_check("converted-reveal-1", reveal1, 1.0, "==", 1e-9, {"n": n}),
        bounds.make_check(
            "converted-commit-register",
            float(converted.commit_qubits),
            float(2 * n + 1),
            "==",
            0.0,
            {"n": n},
        ),
        bounds.make_check("converted-states-orthogonal", overlap, 0.0, "==", 1e-9, {}),
    ]
    aggregates = {
        "reveal_qubits": converted.reveal_qubits,
        "commit_qubits": converted.commit_qubits,
    }
    if params["double_convert"]:
        twice = constructions.flavor_convert(converted)
        checks.append(
            bounds.make_check(
                "double-converted-reveal-0",
                primitives.reveal_verify(twice, 0, twice.commit_state(0)),
                1.0,
                "==",
                1e-9,
                {},
            )
        )
        aggregates["double_converted_qubits"] = twice.num_qubits
    records = [
        {
            "n": n,
            "reveal_0": reveal0,
            "reveal_1": reveal1,
            "commit_qubits": converted.commit_qubits,
            "cross_overlap": overlap,
        }
    ]
    citations = ["one extra control qubit swaps the hiding and binding roles"]
    return records, aggregates, checks, citations


def _exp_commit_attack(params, trials, rng):
    n = params["n"]
    prg = primitives.make_toy_prg(n, rng.child("prg"))
    converted = constructions.flavor_convert(constructions.prg_commitment(prg))
    distinguisher, analysis = attacks.swap_hiding_attack(converted)
    game = primitives.hiding_advantage(
        converted,
        distinguisher,
        trials,
        rng.child("game"),
        bound=analysis.predicted_advantage,
        bound_kind="lower",
        bound_source="swap-test advantage (purity - cross term)/2",
    )
    sigma = game.ci95_halfwidth / 1.96
    sigma_arm = math.sqrt(0.25 / trials)
    checks = [
        bounds.make_check(
            "purity-floor",
            analysis.purity,
            analysis.purity_floor,
            ">=",
            1e-9,
            {"reveal_qubits": converted.reveal_qubits},
        ),
        bounds.make_check(
            "swap-advantage-matches-prediction",
            game.estimate,
            analysis.predicted_advantage,
            "==",
            3.0 * sigma + 1e-12,
            {"trials_per_arm": trials},
        ),
        bounds.make_check(
            "arm0-rate-matches",
            game.detail["p_arm0"],
            analysis.accept_prob[0],
            "==",
            3.0 * sigma_arm + 1e-12,
            {},
        ),
        bounds.make_check(
            "arm1-rate-matches",
            game.detail["p_arm1"],
            analysis.accept_prob[1],
            "==",
            3.0 * sigma_arm + 1e-12,
            {},
        ),
    ]
    aggregates = {"analysis": analysis.to_dict(), "game": game.to_dict()}
    records = [
        {
            "n": n,
            "purity": analysis.purity,
            "cross_term": analysis.cross_term,
            "predicted_advantage": analysis.predicted_advantage,
            "measured_advantage": game.estimate,
        }
    ]
    citations = [
        "swap test accepts with probability (1 + Tr(rho sigma))/2",
        "marginal purity >= 2^-|reveal| by the rank bound",
    ]
    return records, aggregates, checks, citations


def _exp_tomography_bench(params, trials, rng):
    qubits, delta, beta = params["qubits"], params["delta"], params["beta"]
    d = 1 << qubits
    failures = 0
    records = []
    for run_idx in range(trials):
        state = qcore.induced_mixed_sample(qubits, rng.child(f"state-{run_idx}"))
        result = attacks.tomography(
            state, delta, rng.child(f"tomo-{run_idx}"), mode="sampled", beta=beta
        )
        err = qcore.trace_norm(result.estimate.matrix - state.matrix)
        failed = err > delta
        failures += failed
        records.append(
            {"run": run_idx, "error": err, "failed": failed, "shots": result.copies_used}
        )
    budget = attacks.worst_case_copy_budget(d, delta, params["lam"])
    checks = [
        bounds.make_check(
            "failure-rate",
            failures / trials,
            beta,
            "<=",
            1e-12,
            {"runs": trials, "delta": delta, "beta": beta},
        )
    ]
    aggregates = {
        "per_pauli_shots": attacks.per_pauli_shots(d, delta, beta),
        "total_shots_per_run": records[0]["shots"] if records else 0,
        "worst_case_copies": budget,
        "lam": params["lam"],
        "worst_error": max(r["error"] for r in records),
    }
    citations = [
        "Hoeffding per-Pauli budget achieves trace-norm delta except with probability beta",
        "worst-case copy formula 144*lam*d^4/delta^2 logged for comparison",
    ]
    return records, aggregates, checks, citations


def _exp_bounds_suite(params, trials, rng):
    checks, records = [], []
    parts = params["parts"]
    if "trace-product" in parts:
        sweep = bounds.trace_product_check(
            params["instances"], params["qubits"], rng.child("trace-product")
        )
        checks.append(bounds.aggregate_checks("trace-product-vs-fidelity", sweep))
        records += [
            {"check": "trace-product", "index": i, "margin": c.margin}
            for i, c in enumerate(sweep)
        ]
    if "projector" in parts:
        sweep = bounds.projector_distance_check(
            params["instances"], params["qubits"], rng.child("projector")
        )
        checks.append(bounds.aggregate_checks("projector-vs-trace-distance", sweep))
        records += [
            {"check": "projector", "index": i, "margin": c.margin}
            for i, c in enumerate(sweep)
        ]
    if "mixed-fidelity" in parts:
        sweep = bounds.mixed_fidelity_check(
            params["mix_n"], params["mix_m"], params["instances"], rng.child("mixed-fidelity")
        )
        checks.append(bounds.aggregate_checks("average-vs-maximally-mixed", sweep))
        records += [
            {"check": "mixed-fidelity", "index": i, "margin": c.margin}
            for i, c in enumerate(sweep)
        ]
    if "haar-tail" in parts:
        for m in params["m_values"]:
            for h in params["h_values"]:
                check = bounds.haar_concentration_check(
                    m, h, params["haar_samples"], rng.child(f"haar-m{m}-h{h}")
                )
                checks.append(check)
                records.append(
                    {
                        "check": "haar-tail",
                        "m": m,
                        "h": h,
                        "empirical": check.lhs,
                        "analytic": check.rhs,
                    }
                )
    if not checks:
        raise ConfigError("bounds-suite needs at least one part")
    citations = [
        "Tr(rho sigma) <= F(rho, sigma)",
        "max over projectors of Tr(P(A-B)) = trace_norm(A-B) + Tr(A-B)/2",
        "F(average of 2^n pure states, I/2^m) <= 2^(n-m)",
        "Haar tail Pr[|<psi|0>|^2 >= h] = (1-h)^(2^m - 1)",
    ]
    return records, {}, checks, citations


EXPERIMENTS: dict[str, ExperimentDef] = {
    "welch": ExperimentDef(_exp_welch, {"max_states": 16, "max_qubits": 3, "k": 1}, 100),
    "owsg-trivial": ExperimentDef(
        _exp_owsg_trivial, {"n": 3, "m": 1, "sweep": None}, 10_000
    ),
    "owsg-net": ExperimentDef(
        _exp_owsg_net,
        {
            "n": 3,
            "m": 1,
            "target_gap": 0.2,
            "failure_budget": 1e-3,
            "tomography": "oracle",
            "covering_samples": 1000,
        },
        500,
    ),
    "efi-build": ExperimentDef(_exp_efi_build, {"n_values": [2, 3, 4]}, 1),
    "efi-attack": ExperimentDef(
        _exp_efi_attack, {"n": 3, "modes": ["perturbed", "helstrom"]}, 2000
    ),
    "fingerprint": ExperimentDef(
        _exp_fingerprint,
        {
            "l": 8,
            "eta": 0.5,
            "owf_n": 8,
            "owf_kind": "table",
            "block_bits": 32,
            "target_delta": 0.6875,
            "max_tries": 2000,
        },
        1,
    ),
    "phase-owsg": ExperimentDef(
        _exp_phase_owsg, {"l": 8, "alphabet": 16, "owf_n": 8}, 1
    ),
    "prsg-owsg": ExperimentDef(_exp_prsg_owsg, {"n": 4, "m": 2, "h": 0.25}, 1),
    "commit-build": ExperimentDef(_exp_commit_build, {"n": 2}, 1),
    "commit-convert": ExperimentDef(
        _exp_commit_convert, {"n": 2, "double_convert": True}, 1
    ),
    "commit-attack": ExperimentDef(_exp_commit_attack, {"n": 2}, 10_000),
    "tomography-bench": ExperimentDef(
        _exp_tomography_bench, {"qubits": 1, "delta": 0.1, "beta": 0.05, "lam": 16}, 200
    ),
    "bounds-suite": ExperimentDef(
        _exp_bounds_suite,
        {
            "parts": ["trace-product", "projector", "mixed-fidelity"],
            "instances": 1000,
            "qubits": 2,
            "mix_n": 2,
            "mix_m": 3,
            "haar_samples": 100_000,
            "m_values": [1, 2],
            "h_values": [0.1, 0.5],
        },
        1,
    ),
}


# ---------------------------------------------------------------------------
# acceptance suite
# ---------------------------------------------------------------------------


def suite_criteria(seed: int) -> list[tuple[str, dict]]:
    """Criterion id -> experiment config for the full acceptance battery."""
    return [
        (
            "01-trivial-adversary",
            {
                "experiment": "owsg-trivial",
                "params": {"sweep": [[3, 1], [4, 2], [6, 3]]},
                "trials": 10_000,
                "seed": seed,
            },
        ),
        ("02-welch-sweep", {"experiment": "welch", "trials": 100, "seed": seed}),
        ("03-fingerprinting", {"experiment": "fingerprint", "seed": seed}),
        ("04-phase-weak-owsg", {"experiment": "phase-owsg", "seed": seed}),
        ("05-efi-construction", {"experiment": "efi-build", "seed": seed}),
        (
            "06-efi-distinguisher",
            {"experiment": "efi-attack", "trials": 2000, "seed": seed},
        ),
        (
            "07-tomography",
            {"experiment": "tomography-bench", "trials": 200, "seed": seed},
        ),
        ("08-net-attack", {"experiment": "owsg-net", "trials": 500, "seed": seed}),
        (
            "09-haar-concentration",
            {
                "experiment": "bounds-suite",
                "params": {"parts": ["haar-tail"]},
                "seed": seed,
            },
        ),
        (
            "10-inequality-suites",
            {
                "experiment": "bounds-suite",
                "params": {"parts": ["trace-product", "projector", "mixed-fidelity"]},
                "seed": seed,
            },
        ),
        ("11a-commit-build", {"experiment": "commit-build", "seed": seed}),
        ("11b-commit-convert", {"experiment": "commit-convert", "seed": seed}),
        (
            "11c-commit-attack",
            {"experiment": "commit-attack", "trials": 10_000, "seed": seed},
        ),
    ]


def run_suite(out_dir: str | None, seed: int) -> dict:
    """Run every acceptance criterion; returns (and optionally writes) the
    summary.  Criterion 12 replays one experiment and byte-compares the
    reports modulo wall time."""
    summary_rows = []
    all_pass = True
    for criterion_id, raw in suite_criteria(seed):
        config = ExperimentConfig.from_dict(raw)
        report = run(config)
        primary = report.checks[0]
        summary_rows.append(
            {
                "id": criterion_id,
                "pass": report.passed,
                "estimate": primary.lhs,
                "bound": primary.rhs,
            }
        )
        all_pass = all_pass and report.passed
        if out_dir:
            atomic_write_text(
                os.path.join(out_dir, f"{criterion_id}.json"), report.to_json()
            )

    # criterion 12: replaying a config reproduces the report byte-for-byte
    replay_cfg = ExperimentConfig.from_dict(
        {"experiment": "welch", "trials": 100, "seed": seed}
    )
    first = strip_wall_time(run(replay_cfg).to_json())
    second = strip_wall_time(run(replay_cfg).to_json())
    replay_ok = first == second
    summary_rows.append(
        {
            "id": "12-reproducibility",
            "pass": replay_ok,
            "estimate": 1.0 if replay_ok else 0.0,
            "bound": 1.0,
        }
    )
    all_pass = all_pass and replay_ok

    summary = {"criteria": summary_rows, "all_pass": all_pass, "seed": seed}
    if out_dir:
        atomic_write_text(
            os.path.join(out_dir, "summary.json"), json_dumps(summary, indent=2) + "\n"
        )
    return summary
