"""Structured state-preparation unitaries.

Commitment schemes need actual unitaries, not just the states they
prepare, but dense matrices on 12 qubits are enormous.  A PrepCircuit is
a short list of structured operations (Hadamard layers, phase flips,
basis permutations, qubit reorderings, a two-way branch on the leading
qubit, or an explicit dense block) that can be applied to a state vector
in O(dim) or O(dim log dim) time and whose unitarity is checked piecewise
rather than assumed.
"""

from __future__ import annotations

import numpy as np

from .qcore import PureState

_DENSE_LIMIT = 1 << 10


class PrepCircuit:
    """Composable unitary on ``num_qubits`` qubits, applied op by op."""

    def __init__(self, num_qubits: int, ops: list | None = None):
        self.num_qubits = num_qubits
        self.dim = 1 << num_qubits
        self.ops = list(ops or [])

    # -- builders ----------------------------------------------------------

    def h(self, qubit: int) -> "PrepCircuit":
        self.ops.append(("h", qubit))
        return self

    def z(self, qubit: int) -> "PrepCircuit":
        self.ops.append(("z", qubit))
        return self

    def permute_basis(self, perm: np.ndarray) -> "PrepCircuit":
        """Basis relabeling |i> -> |perm[i]>."""
        self.ops.append(("perm", np.asarray(perm, dtype=np.int64)))
        return self

    def reorder_qubits(self, order: list[int]) -> "PrepCircuit":
        """New qubit j carries what old qubit order[j] carried."""
        self.ops.append(("reorder", list(order)))
        return self

    def branch_on_leading(self, zero: "PrepCircuit", one: "PrepCircuit") -> "PrepCircuit":
        """Apply ``zero``/``one`` to the trailing qubits, controlled on qubit 0."""
        self.ops.append(("branch", zero, one))
        return self

    def dense(self, matrix: np.ndarray) -> "PrepCircuit":
        self.ops.append(("dense", np.asarray(matrix, dtype=np.complex128)))
        return self

    # -- application -------------------------------------------------------

    def apply(self, vec: np.ndarray) -> np.ndarray:
        out = np.asarray(vec, dtype=np.complex128).copy()
        for op in self.ops:
            out = self._apply_op(op, out, dagger=False)
        return out

    def apply_dagger(self, vec: np.ndarray) -> np.ndarray:
        out = np.asarray(vec, dtype=np.complex128).copy()
        for op in reversed(self.ops):
            out = self._apply_op(op, out, dagger=True)
        return out

    def _apply_op(self, op, vec: np.ndarray, dagger: bool) -> np.ndarray:
        kind = op[0]
        if kind == "h":
            return self._single_qubit(vec, op[1], _HADAMARD)
        if kind == "z":
            return self._single_qubit(vec, op[1], _PAULI_Z)
        if kind == "perm":
            perm = op[1]
            if dagger:
                return vec[perm]
            out = np.empty_like(vec)
            out[perm] = vec
            return out
        if kind == "reorder":
            order = op[1]
            axes = list(np.argsort(order)) if dagger else order
            tens = vec.reshape((2,) * self.num_qubits)
            return np.transpose(tens, axes=axes).reshape(-1)
        if kind == "branch":
            zero, one = op[1], op[2]
            half = self.dim // 2
            out = np.empty_like(vec)
            if dagger:
                out[:half] = zero.apply_dagger(vec[:half])
                out[half:] = one.apply_dagger(vec[half:])
            else:
                out[:half] = zero.apply(vec[:half])
                out[half:] = one.apply(vec[half:])
            return out
        if kind == "dense":
            mat = op[1]
            return (mat.conj().T @ vec) if dagger else (mat @ vec)
        raise ValueError(f"unknown op {kind}")

    def _single_qubit(self, vec: np.ndarray, qubit: int, gate: np.ndarray) -> np.ndarray:
        n = self.num_qubits
        shaped = vec.reshape(1 << qubit, 2, 1 << (n - qubit - 1))
        return np.einsum("ab,ibj->iaj", gate, shaped).reshape(-1)

    # -- derived -----------------------------------------------------------

    def prepare(self) -> PureState:
        """State produced from |0...0>."""
        e0 = np.zeros(self.dim, dtype=np.complex128)
        e0[0] = 1.0
        return PureState(self.num_qubits, self.apply(e0))

    def matrix(self) -> np.ndarray:
        if self.dim > _DENSE_LIMIT:
            raise ValueError(f"refusing to densify a {self.dim}-dimensional unitary")
        cols = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for i in range(self.dim):
            e = np.zeros(self.dim, dtype=np.complex128)
            e[i] = 1.0
            cols[:, i] = self.apply(e)
        return cols

    def validate(self) -> None:
        """Check unitarity op by op; raises ValueError on failure."""
        for op in self.ops:
            kind = op[0]
            if kind in ("h", "z"):
                if not 0 <= op[1] < self.num_qubits:
                    raise ValueError(f"gate qubit {op[1]} out of range")
            elif kind == "perm":
                perm = op[1]
                if perm.shape != (self.dim,) or not np.array_equal(np.sort(perm), np.arange(self.dim)):
                    raise ValueError("basis permutation is not a bijection")
            elif kind == "reorder":
                if sorted(op[1]) != list(range(self.num_qubits)):
                    raise ValueError("qubit reordering is not a permutation")
            elif kind == "branch":
                for sub in (op[1], op[2]):
                    if sub.num_qubits != self.num_qubits - 1:
                        raise ValueError("branch blocks must act on one fewer qubit")
                    sub.validate()
            elif kind == "dense":
                mat = op[1]
                if mat.shape != (self.dim, self.dim):
                    raise ValueError("dense block has the wrong shape")
                if np.max(np.abs(mat.conj().T @ mat - np.eye(self.dim))) > 1e-8:
                    raise ValueError("dense block is not unitary within 1e-8")
            else:
                raise ValueError(f"unknown op {kind}")


_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)
_PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)


def prep_from_state(psi: PureState) -> PrepCircuit:
    """Dense unitary whose first column is ``psi`` (Householder completion)."""
    amps = psi.amplitudes
    dim = amps.shape[0]
    pivot = amps[0]
    phase = pivot / abs(pivot) if abs(pivot) > 1e-12 else 1.0
    target = amps / phase
    e0 = np.zeros(dim, dtype=np.complex128)
    e0[0] = 1.0
    v = e0 - target
    vnorm_sq = float(np.real(np.vdot(v, v)))
    if vnorm_sq < 1e-24:
        mat = phase * np.eye(dim, dtype=np.complex128)
    else:
        mat = phase * (np.eye(dim, dtype=np.complex128) - 2.0 * np.outer(v, v.conj()) / vnorm_sq)
    circuit = PrepCircuit(psi.num_qubits).dense(mat)
    circuit.validate()
    return circuit
