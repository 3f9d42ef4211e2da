"""Acceptance battery.

One test per criterion, each at its stated tolerance, printing a pass/fail
line.  The same configurations drive `qclab suite run`; criterion 12 runs
the actual CLI twice and compares the reports byte for byte.
"""

import json
import math
import os
import subprocess
import sys

import pytest

from qclab import attacks
from qclab.harness import ExperimentConfig, run
from qclab.report import strip_wall_time

SEED = 42


def _run(raw: dict):
    return run(ExperimentConfig.from_dict(dict(raw, seed=SEED)))


def _announce(criterion: str, passed: bool):
    print(f"\nacceptance {criterion}: {'PASS' if passed else 'FAIL'}")
    assert passed


def _by_name(report, prefix: str):
    return [c for c in report.checks if c.name.startswith(prefix)]


def test_criterion_01_trivial_adversary_bound():
    report = _run(
        {
            "experiment": "owsg-trivial",
            "params": {"sweep": [[3, 1], [4, 2], [6, 3]]},
            "trials": 10_000,
        }
    )
    for record in report.records:
        m = record["m"]
        assert record["exact_win"] >= 2.0 ** -m - 1e-9
        assert record["expected_td"] <= math.sqrt(1 - 2.0 ** -m) + 1e-9
    for prefix in (
        "exact-win-equals-overlap-mean",
        "exact-win-floor",
        "expected-td-cap",
        "sampled-matches-exact",
        "correctness",
    ):
        assert all(c.holds for c in _by_name(report, prefix)), prefix
    _announce("criterion 01 (trivial-adversary bound)", report.passed)


def test_criterion_02_welch_sweep():
    report = _run({"experiment": "welch", "trials": 100})
    sweep = next(c for c in report.checks if c.name == "overlap-floor-sweep")
    equality = next(c for c in report.checks if c.name == "overlap-floor-equality-case")
    assert sweep.margin >= -1e-9
    assert abs(equality.lhs - equality.rhs) <= 1e-9
    assert all(r["margin"] >= -1e-9 for r in report.records)
    _announce("criterion 02 (overlap-floor sweep)", report.passed)


def test_criterion_03_fingerprinting():
    report = _run({"experiment": "fingerprint"})
    agg = report.aggregates
    assert agg["max_overlap"] <= agg["delta_r"] + 1e-9
    assert agg["delta_r"] <= 0.5
    assert agg["cross_image_max_acceptance"] <= 0.25 + 1e-9
    correctness = next(c for c in report.checks if c.name == "correctness")
    assert abs(correctness.lhs - 1.0) <= 1e-9
    _announce("criterion 03 (fingerprinting)", report.passed)


def test_criterion_04_phase_weak_owsg():
    report = _run({"experiment": "phase-owsg"})
    excess = next(c for c in report.checks if c.name == "overlap-within-per-digit-ceiling")
    assert excess.lhs <= 1e-9  # worst overlap minus its per-digit-power ceiling
    correctness = next(c for c in report.checks if c.name == "correctness")
    assert abs(correctness.lhs - 1.0) <= 1e-9
    _announce("criterion 04 (phase-encoded weak scheme)", report.passed)


def test_criterion_05_efi_construction():
    report = _run({"experiment": "efi-build"})
    for record in report.records:
        n = record["n"]
        assert record["fidelity"] <= 2.0 ** -n + 1e-9
        assert record["trace_distance"] >= 1.0 - 2.0 ** (-n / 2.0) - 1e-9
    assert {r["n"] for r in report.records} == {2, 3, 4}
    _announce("criterion 05 (two-state construction)", report.passed)


def test_criterion_06_efi_distinguisher():
    report = _run({"experiment": "efi-attack", "trials": 2000})
    td = report.aggregates["trace_distance"]
    perturbed = next(r for r in report.records if r["mode"] == "perturbed")
    helstrom = next(r for r in report.records if r["mode"] == "helstrom")
    sigma = math.sqrt(0.25 / 2000)
    assert perturbed["advantage"] >= td / 2.0 - 3 * sigma
    assert abs(helstrom["advantage"] - td) <= 3 * sigma
    _announce("criterion 06 (spectral distinguisher)", report.passed)


def test_criterion_07_tomography():
    report = _run({"experiment": "tomography-bench", "trials": 200})
    failure = next(c for c in report.checks if c.name == "failure-rate")
    assert failure.lhs <= 0.05
    # the worst-case copy formula, recomputed independently (bit-equal as a
    # float expression; 3,686,400 exactly in rational arithmetic)
    logged = report.aggregates["worst_case_copies"]
    assert logged == 144 * 16 * 2 ** 4 / 0.1 ** 2
    assert logged == pytest.approx(3_686_400.0, rel=1e-12)
    assert attacks.worst_case_copy_budget(2, 0.1, 16) == logged
    _announce("criterion 07 (tomography budget)", report.passed)


def test_criterion_08_net_attack():
    report = _run({"experiment": "owsg-net", "trials": 500})
    gamma = report.aggregates["params"]["gamma"]
    sigma_win = math.sqrt(0.25 / 500)
    assert report.aggregates["win_rate"] >= 0.8 - 3 * sigma_win
    assert report.aggregates["bot_rate"] <= gamma + 3 * math.sqrt(gamma * (1 - gamma) / 500)
    structural = next(c for c in report.checks if c.name == "structural-within-4gamma")
    assert structural.lhs == 0.0
    for record in report.records:
        if not record["bot"]:
            assert record["td_to_target"] <= 4 * gamma + 1e-9
    _announce("criterion 08 (tomography + net attack)", report.passed)


def test_criterion_09_haar_concentration():
    report = _run(
        {"experiment": "bounds-suite", "params": {"parts": ["haar-tail"]}}
    )
    combos = {(r["m"], r["h"]) for r in report.records}
    assert combos == {(1, 0.1), (1, 0.5), (2, 0.1), (2, 0.5)}
    for record in report.records:
        analytic = (1 - record["h"]) ** (2 ** record["m"] - 1)
        assert record["analytic"] == pytest.approx(analytic, abs=1e-15)
        sigma = math.sqrt(analytic * (1 - analytic) / 100_000)
        assert abs(record["empirical"] - analytic) <= 3 * sigma + 1e-12
    _announce("criterion 09 (Haar overlap tail)", report.passed)


def test_criterion_10_inequality_suites():
    report = _run(
        {
            "experiment": "bounds-suite",
            "params": {"parts": ["trace-product", "projector", "mixed-fidelity"]},
        }
    )
    assert all(c.holds for c in report.checks)
    assert min(r["margin"] for r in report.records) >= -1e-9
    per_part = {}
    for r in report.records:
        per_part[r["check"]] = per_part.get(r["check"], 0) + 1
    assert per_part["trace-product"] == 1000
    assert per_part["projector"] == 2000  # equality + trace-bound check per instance
    assert per_part["mixed-fidelity"] == 1000
    _announce("criterion 10 (inequality suites)", report.passed)


def test_criterion_11_commitments():
    build = _run({"experiment": "commit-build"})
    convert = _run({"experiment": "commit-convert"})
    attack = _run({"experiment": "commit-attack", "trials": 10_000})

    record = build.records[0]
    assert record["reveal_0"] == pytest.approx(1.0, abs=1e-9)
    assert record["reveal_1"] == pytest.approx(1.0, abs=1e-9)
    assert record["binding_optimum"] <= 0.25 + 1e-9

    assert convert.records[0]["commit_qubits"] == 2 * 2 + 1

    analysis = attack.aggregates["analysis"]
    assert analysis["predicted_advantage"] == pytest.approx(
        (analysis["purity"] - analysis["cross_term"]) / 2.0, abs=1e-12
    )
    assert analysis["purity"] >= 2.0 ** -4 - 1e-12
    sigma = math.sqrt(0.25 / 10_000)
    measured = attack.records[0]["measured_advantage"]
    assert abs(measured - analysis["predicted_advantage"]) <= 3 * sigma
    passed = build.passed and convert.passed and attack.passed
    _announce("criterion 11 (commitments)", passed)


def test_criterion_12_reproducibility(tmp_path):
    dirs = [tmp_path / "first", tmp_path / "second"]
    for out in dirs:
        proc = subprocess.run(
            [sys.executable, "-m", "qclab.cli", "suite", "run", "--out", str(out), "--seed", "42"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stdout + proc.stderr
    names = sorted(os.listdir(dirs[0]))
    assert names == sorted(os.listdir(dirs[1]))
    assert "summary.json" in names
    identical = all(
        strip_wall_time((dirs[0] / name).read_text())
        == strip_wall_time((dirs[1] / name).read_text())
        for name in names
    )
    summary = json.loads((dirs[0] / "summary.json").read_text())
    assert summary["all_pass"]
    _announce("criterion 12 (reproducibility)", identical)
