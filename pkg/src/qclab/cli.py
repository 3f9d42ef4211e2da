"""Command-line entry point.

One subcommand per experiment plus ``suite run``; configs are JSON files,
flags override seed/output/format/plot/cap.  Exit codes: 0 all checks
passed, 1 some check failed, 2 bad configuration, 3 qubit cap exceeded,
4 could not write output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CapExceeded, ConfigError, IoError, QclabError
from .harness import EXPERIMENTS, ExperimentConfig, run, run_suite


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qclab",
        description="seeded numerical experiments on short-output quantum-cryptographic primitives",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in EXPERIMENTS:
        cmd = sub.add_parser(name, help=f"run the {name} experiment")
        _add_run_flags(cmd)
    suite = sub.add_parser("suite", help="acceptance battery")
    suite_sub = suite.add_subparsers(dest="suite_command", required=True)
    suite_run = suite_sub.add_parser("run", help="run every acceptance criterion")
    suite_run.add_argument("--out", required=True, help="directory for per-criterion reports")
    suite_run.add_argument("--seed", type=int, default=42)
    return parser


def _add_run_flags(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument("--config", help="JSON config file")
    cmd.add_argument("--seed", type=int, help="override (or supply) the seed")
    cmd.add_argument("--out", help="report path")
    cmd.add_argument("--format", choices=["json", "csv", "both"])
    cmd.add_argument("--plot", help="SVG path for the report's sweep")
    cmd.add_argument("--max-qubits", type=int, help="override the qubit cap (hard limit 16)")
    cmd.add_argument("--trials", type=int)


def _load_config(args) -> ExperimentConfig:
    raw: dict = {}
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
    raw.setdefault("experiment", args.command)
    if raw["experiment"] != args.command:
        raise ConfigError(
            f"config is for {raw['experiment']!r} but subcommand is {args.command!r}"
        )
    if args.seed is not None:
        raw["seed"] = args.seed
    if args.trials is not None:
        raw["trials"] = args.trials
    if args.out is not None:
        raw["output"] = args.out
    if args.format is not None:
        raw["format"] = args.format
    if args.plot is not None:
        raw["plot"] = args.plot
    if args.max_qubits is not None:
        raw["max_qubits"] = args.max_qubits
    return ExperimentConfig.from_dict(raw)


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "suite":
            summary = run_suite(args.out, args.seed)
            for row in summary["criteria"]:
                verdict = "PASS" if row["pass"] else "FAIL"
                print(f"{row['id']}: {verdict}")
            print("all_pass:", summary["all_pass"])
            return 0 if summary["all_pass"] else 1
        config = _load_config(args)
        report = run(config)
        for check in report.checks:
            verdict = "PASS" if check.holds else "FAIL"
            print(f"{check.name}: {verdict} (lhs={check.lhs:.6g}, rhs={check.rhs:.6g})")
        print("passed:", report.passed)
        return 0 if report.passed else 1
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except IoError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 4
    except QclabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
