"""Standalone numerical checks for the inequalities the package relies on.

Each check returns BoundCheck records whose ``margin`` is the signed slack
(nonnegative means the relation holds) and whose witness pins down the
seeded instance, so every number is recomputable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qcore
from .errors import BadDistribution
from .qcore import PureState
from .rng import Rng


@dataclass(frozen=True)
class BoundCheck:
    """One verified relation lhs (<=|>=|==) rhs.

    margin: signed slack (rhs-lhs for <=, lhs-rhs for >=, -|lhs-rhs| for ==).
    holds: margin >= -tol.
    """

    name: str
    lhs: float
    rhs: float
    relation: str
    margin: float
    tol: float
    holds: bool
    witness: dict

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation,
            "margin": self.margin,
            "tol": self.tol,
            "holds": self.holds,
            "witness": self.witness,
        }


def make_check(
    name: str, lhs: float, rhs: float, relation: str, tol: float, witness: dict
) -> BoundCheck:
    lhs, rhs = float(lhs), float(rhs)
    if relation == "<=":
        margin = rhs - lhs
    elif relation == ">=":
        margin = lhs - rhs
    elif relation == "==":
        margin = -abs(lhs - rhs)
    else:
        raise ValueError(f"unknown relation {relation!r}")
    return BoundCheck(
        name=name,
        lhs=lhs,
        rhs=rhs,
        relation=relation,
        margin=float(margin),
        tol=tol,
        holds=bool(margin >= -tol),
        witness=witness,
    )


def aggregate_checks(name: str, checks: list[BoundCheck]) -> BoundCheck:
    """Worst-case roll-up; the witness points at the weakest instance."""
    worst = min(range(len(checks)), key=lambda i: checks[i].margin)
    return BoundCheck(
        name=name,
        lhs=checks[worst].lhs,
        rhs=checks[worst].rhs,
        relation=checks[worst].relation,
        margin=checks[worst].margin,
        tol=checks[worst].tol,
        holds=all(c.holds for c in checks),
        witness={"instances": len(checks), "worst": checks[worst].witness},
    )


# ---------------------------------------------------------------------------
# pairwise-overlap floor
# ---------------------------------------------------------------------------


def welch_check(
    states: list[PureState],
    dist: np.ndarray,
    k: int = 1,
    *,
    tol: float = 1e-9,
    witness: dict | None = None,
) -> BoundCheck:
    """E_{i,j}|<phi_i|phi_j>|^(2k) >= 1/binom(d+k-1, k) for any ensemble.

    k = 1 is the floor 1/d = 2^-m on the mean squared overlap of two
    independent draws; the higher moments use the same Gram matrix.
    """
    if k not in (1, 2, 3):
        raise ValueError("moment order limited to k in {1, 2, 3}")
    weights = np.asarray(dist, dtype=np.float64)
    if weights.ndim != 1 or weights.shape[0] != len(states):
        raise BadDistribution("distribution length must match the ensemble")
    if np.any(weights < -1e-12) or abs(float(np.sum(weights)) - 1.0) > qcore.EPS:
        raise BadDistribution("distribution must be nonnegative and sum to 1")
    dims = {s.dim for s in states}
    if len(dims) != 1:
        raise BadDistribution("states must share one dimension")
    d = dims.pop()
    stack = np.stack([s.amplitudes for s in states])
    gram_sq = np.abs(stack @ stack.conj().T) ** (2 * k)
    lhs = float(weights @ gram_sq @ weights)
    rhs = 1.0 / math.comb(d + k - 1, k)
    return make_check(
        f"overlap-moment-floor-k{k}",
        lhs,
        rhs,
        ">=",
        tol,
        witness or {"n_states": len(states), "dim": d, "k": k},
    )


def welch_sweep(
    ensembles: int,
    rng: Rng,
    *,
    max_states: int = 16,
    max_qubits: int = 3,
    k: int = 1,
    tol: float = 1e-9,
) -> list[BoundCheck]:
    """Seeded random ensembles (Haar states, random distribution)."""
    checks = []
    for i in range(ensembles):
        stream = rng.child(f"ensemble-{i}")
        m = 1 + int(stream.integers(0, max_qubits))
        n = 2 + int(stream.integers(0, max_states - 1))
        states = [qcore.haar_sample(m, stream.child(f"state-{j}")) for j in range(n)]
        raw = stream.random(n) + 1e-3
        dist = raw / raw.sum()
        checks.append(
            welch_check(
                states,
                dist,
                k,
                tol=tol,
                witness={"index": i, "n_states": n, "qubits": m, "k": k},
            )
        )
    return checks


# ---------------------------------------------------------------------------
# Haar overlap tail
# ---------------------------------------------------------------------------


def haar_concentration_check(
    m: int, h: float, samples: int, rng: Rng, *, witness: dict | None = None
) -> BoundCheck:
    """Empirical Pr[|<psi|0>|^2 >= h] against the closed form (1-h)^(2^m - 1)."""
    if not 0.0 <= h <= 1.0:
        raise ValueError("threshold must be in [0, 1]")
    hits = 0
    for i in range(samples):
        amp0 = qcore.haar_sample(m, rng.child(f"sample-{i}")).amplitudes[0]
        hits += (abs(amp0) ** 2) >= h
    freq = hits / samples
    analytic = (1.0 - h) ** (2 ** m - 1)
    sigma = math.sqrt(max(analytic * (1.0 - analytic), 0.0) / samples)
    return make_check(
        "haar-overlap-tail",
        freq,
        analytic,
        "==",
        3.0 * sigma + 1e-12,
        witness or {"m": m, "h": h, "samples": samples},
    )


# ---------------------------------------------------------------------------
# trace product vs fidelity, fidelity vs maximally mixed
# ---------------------------------------------------------------------------


def trace_product_check(pairs: int, num_qubits: int, rng: Rng, *, tol: float = 1e-9) -> list[BoundCheck]:
    """Tr(rho sigma) <= F(rho, sigma) on random full-rank pairs."""
    checks = []
    for i in range(pairs):
        stream = rng.child(f"pair-{i}")
        rho = qcore.induced_mixed_sample(num_qubits, stream.child("rho"))
        sigma = qcore.induced_mixed_sample(num_qubits, stream.child("sigma"))
        lhs = float(np.real(np.trace(rho.matrix @ sigma.matrix)))
        rhs = qcore.fidelity(rho, sigma)
        checks.append(
            make_check(
                "trace-product-vs-fidelity",
                lhs,
                rhs,
                "<=",
                tol,
                {"index": i, "qubits": num_qubits},
            )
        )
    return checks


def mixed_fidelity_check(
    n: int, m: int, instances: int, rng: Rng, *, tol: float = 1e-9
) -> list[BoundCheck]:
    """F(average of 2^n pure states, I/2^m) <= 2^(n-m) (Cauchy-Schwarz)."""
    if n > m + 4:
        raise ValueError("n is capped at m + 4 to keep the average enumerable")
    checks = []
    dim = 1 << m
    for i in range(instances):
        stream = rng.child(f"instance-{i}")
        avg = np.zeros((dim, dim), dtype=np.complex128)
        for k in range(1 << n):
            psi = qcore.haar_sample(m, stream.child(f"state-{k}")).amplitudes
            avg += np.outer(psi, psi.conj())
        avg /= 1 << n
        rho = qcore.DensityMatrix(m, avg, validate=False)
        lhs = qcore.fidelity(rho, qcore.maximally_mixed(m))
        rhs = 2.0 ** (n - m)
        checks.append(
            make_check(
                "average-vs-maximally-mixed",
                lhs,
                rhs,
                "<=",
                tol,
                {"index": i, "n": n, "m": m},
            )
        )
    return checks


# ---------------------------------------------------------------------------
# projector vs trace distance
# ---------------------------------------------------------------------------


def projector_distance_check(
    instances: int, num_qubits: int, rng: Rng, *, tol: float = 1e-9
) -> list[BoundCheck]:
    """Two facts about Hermitian A, B per instance:

    the positive-part projector of A - B attains
    trace_norm(A-B) + Tr(A-B)/2 (the maximum over all projectors), and an
    unrelated projector obeys |Tr(P(A-B))| <= 2 * trace_norm(A-B).
    """
    checks = []
    dim = 1 << num_qubits
    for i in range(instances):
        stream = rng.child(f"instance-{i}")
        a = qcore.random_hermitian(dim, stream.child("a"))
        b = qcore.random_hermitian(dim, stream.child("b"))
        diff = a - b
        norm = qcore.trace_norm(diff)
        optimal = qcore.positive_part_projector(diff)
        attained = float(np.real(np.trace(optimal.matrix @ diff)))
        target = norm + float(np.real(np.trace(diff))) / 2.0
        checks.append(
            make_check(
                "positive-part-attains-max",
                attained,
                target,
                "==",
                tol,
                {"index": i, "qubits": num_qubits},
            )
        )
        other = qcore.positive_part_projector(qcore.random_hermitian(dim, stream.child("c")))
        bounded = abs(float(np.real(np.trace(other.matrix @ diff))))
        checks.append(
            make_check(
                "projector-trace-vs-distance",
                bounded,
                2.0 * norm,
                "<=",
                tol,
                {"index": i, "qubits": num_qubits},
            )
        )
    return checks
