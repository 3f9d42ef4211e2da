"""Qubit-cap bookkeeping.

Everything in this package is dense linear algebra, so the total number of
simulated qubits is capped: the default of 12 keeps every matrix at or below
4096 x 4096.  The cap can be raised via the QCLAB_MAX_QUBITS environment
variable or a per-run override, but never above HARD_CAP.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from .errors import CapExceeded, ConfigError

DEFAULT_CAP = 12
HARD_CAP = 16

_override: int | None = None


def qubit_cap() -> int:
    """Currently effective cap on the total number of simulated qubits."""
    if _override is not None:
        return _override
    raw = os.environ.get("QCLAB_MAX_QUBITS")
    if raw is None:
        return DEFAULT_CAP
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"QCLAB_MAX_QUBITS={raw!r} is not an integer") from exc
    return min(value, HARD_CAP)


@contextmanager
def cap_override(num_qubits: int):
    """Temporarily replace the cap (still clamped to HARD_CAP)."""
    global _override
    if num_qubits > HARD_CAP:
        raise ConfigError(f"cap {num_qubits} exceeds hard limit {HARD_CAP}")
    previous = _override
    _override = num_qubits
    try:
        yield
    finally:
        _override = previous


def check_qubits(num_qubits: int, what: str = "state") -> None:
    cap = qubit_cap()
    if num_qubits > cap:
        raise CapExceeded(f"{what} needs {num_qubits} qubits, cap is {cap}")
