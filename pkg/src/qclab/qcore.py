"""Exact dense simulation of small qubit registers.

Conventions used throughout the package:

* Qubit 0 is the *most significant* bit of a basis index, so tensoring
  puts the left factor's qubits first.
* ``trace_distance`` and ``trace_norm`` use the trace-distance
  normalization, i.e. half the Schatten 1-norm.  For density matrices this
  lands in [0, 1].
* ``fidelity`` uses the *squared* convention ``(Tr sqrt(sqrt(b) a
  sqrt(b)))**2``.  Both conventions circulate in the literature; every
  bound in this package assumes the squared one.
* EPS (1e-9) guards algebraic identities; EIG_TOL (1e-7) guards anything
  that went through an eigensolver.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .caps import check_qubits
from .errors import DimensionMismatch, IndexOutOfRange, NotHermitian
from .rng import Rng

EPS = 1e-9
EIG_TOL = 1e-7


def _as_complex_vector(values) -> np.ndarray:
    vec = np.asarray(values, dtype=np.complex128)
    if vec.ndim != 1:
        raise ValueError("amplitudes must be a 1-d array")
    return vec


def _as_complex_matrix(values) -> np.ndarray:
    mat = np.asarray(values, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("expected a square matrix")
    return mat


def _require_hermitian(mat: np.ndarray, tol: float, what: str) -> None:
    if np.max(np.abs(mat - mat.conj().T)) > tol:
        raise NotHermitian(f"{what} is not Hermitian within {tol}")


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PureState:
    """Normalized state vector on ``num_qubits`` qubits."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        vec = _as_complex_vector(self.amplitudes)
        object.__setattr__(self, "amplitudes", vec)
        if vec.shape[0] != 1 << self.num_qubits:
            raise ValueError(
                f"{self.num_qubits}-qubit state needs {1 << self.num_qubits} "
                f"amplitudes, got {vec.shape[0]}"
            )
        norm_sq = float(np.real(np.vdot(vec, vec)))
        if abs(norm_sq - 1.0) > EPS:
            raise ValueError(f"state norm^2 = {norm_sq}, expected 1")

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def overlap(self, other: "PureState") -> complex:
        """Inner product <self|other>."""
        if self.dim != other.dim:
            raise DimensionMismatch("states live in different dimensions")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def to_density(self, validate: bool = False) -> "DensityMatrix":
        mat = np.outer(self.amplitudes, self.amplitudes.conj())
        return DensityMatrix(self.num_qubits, mat, validate=validate)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, PSD, trace-one matrix on ``num_qubits`` qubits.

    Construction validates the invariants; pass ``validate=False`` only
    when the matrix is PSD by construction (e.g. a partial trace of a
    pure state) and the eigencheck would dominate the run time.
    """

    num_qubits: int
    matrix: np.ndarray
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        mat = _as_complex_matrix(self.matrix)
        object.__setattr__(self, "matrix", mat)
        dim = 1 << self.num_qubits
        if mat.shape != (dim, dim):
            raise ValueError(f"expected {dim}x{dim} matrix, got {mat.shape}")
        if np.max(np.abs(mat - mat.conj().T)) > EPS:
            raise NotHermitian("density matrix is not Hermitian within 1e-9")
        trace = float(np.real(np.trace(mat)))
        if abs(trace - 1.0) > EPS:
            raise ValueError(f"trace = {trace}, expected 1")
        if self.validate:
            low = float(np.min(np.linalg.eigvalsh(mat)))
            if low < -EPS:
                raise ValueError(f"matrix has eigenvalue {low} < 0")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


@dataclass(frozen=True)
class HermitianMatrix:
    """Hermitian matrix with no PSD or trace constraint (tomography output)."""

    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = _as_complex_matrix(self.matrix)
        object.__setattr__(self, "matrix", mat)
        if mat.shape != (self.dim, self.dim):
            raise ValueError(f"expected {self.dim}x{self.dim} matrix")
        _require_hermitian(mat, 1e-8, "matrix")


@dataclass(frozen=True)
class Projector:
    """Hermitian idempotent; eigenvalues 0/1 within EIG_TOL."""

    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = _as_complex_matrix(self.matrix)
        object.__setattr__(self, "matrix", mat)
        if mat.shape != (self.dim, self.dim):
            raise ValueError(f"expected {self.dim}x{self.dim} matrix")
        _require_hermitian(mat, EPS, "projector")
        if np.max(np.abs(mat @ mat - mat)) > EIG_TOL:
            raise ValueError("projector is not idempotent within 1e-7")

    def rank(self) -> int:
        return int(round(float(np.real(np.trace(self.matrix)))))


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def basis_state(num_qubits: int, index: int) -> PureState:
    dim = 1 << num_qubits
    if not 0 <= index < dim:
        raise IndexOutOfRange(f"basis index {index} out of range for {num_qubits} qubits")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[index] = 1.0
    return PureState(num_qubits, amps)


def plus_state() -> PureState:
    return PureState(1, np.array([1.0, 1.0]) / np.sqrt(2.0))


def phase_plus_state(theta: float) -> PureState:
    """(|0> + e^{i theta}|1>)/sqrt(2)."""
    return PureState(1, np.array([1.0, np.exp(1j * theta)]) / np.sqrt(2.0))


def maximally_mixed(num_qubits: int) -> DensityMatrix:
    dim = 1 << num_qubits
    return DensityMatrix(num_qubits, np.eye(dim, dtype=np.complex128) / dim, validate=False)


def identity_projector(num_qubits: int) -> Projector:
    dim = 1 << num_qubits
    return Projector(dim, np.eye(dim, dtype=np.complex128))


# ---------------------------------------------------------------------------
# composition and reduction
# ---------------------------------------------------------------------------


def tensor(a, b):
    """Kronecker product of two PureStates or two DensityMatrices.

    The left operand's qubits come first (most significant).
    """
    if isinstance(a, PureState) and isinstance(b, PureState):
        total = a.num_qubits + b.num_qubits
        check_qubits(total, "tensor product")
        return PureState(total, np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        total = a.num_qubits + b.num_qubits
        check_qubits(total, "tensor product")
        return DensityMatrix(total, np.kron(a.matrix, b.matrix), validate=False)
    raise TypeError("tensor expects two PureStates or two DensityMatrices")


def tensor_power(state, copies: int):
    if copies < 1:
        raise ValueError("copies must be >= 1")
    out = state
    for _ in range(copies - 1):
        out = tensor(out, state)
    return out


def partial_trace(state, keep) -> DensityMatrix:
    """Reduced state on ``keep`` (kept in their original relative order)."""
    keep = sorted(set(int(q) for q in keep))
    if isinstance(state, PureState):
        n = state.num_qubits
        _check_indices(keep, n)
        dropped = [q for q in range(n) if q not in keep]
        tensor_amps = state.amplitudes.reshape((2,) * n) if n else state.amplitudes.reshape(())
        reordered = np.transpose(tensor_amps, axes=keep + dropped) if n else tensor_amps
        flat = reordered.reshape(1 << len(keep), 1 << len(dropped))
        reduced = flat @ flat.conj().T
        return DensityMatrix(len(keep), reduced, validate=False)
    if isinstance(state, DensityMatrix):
        n = state.num_qubits
        _check_indices(keep, n)
        dropped = [q for q in range(n) if q not in keep]
        k, r = len(keep), len(dropped)
        tens = state.matrix.reshape((2,) * (2 * n)) if n else state.matrix.reshape(())
        if n == 0:
            return DensityMatrix(0, state.matrix.copy(), validate=False)
        # order: kept-row, dropped-row, kept-col, dropped-col
        axes = keep + dropped + [n + q for q in keep] + [n + q for q in dropped]
        tens = np.transpose(tens, axes=axes)
        tens = tens.reshape(1 << k, 1 << r, 1 << k, 1 << r)
        reduced = np.einsum("arbr->ab", tens)
        return DensityMatrix(k, reduced, validate=False)
    raise TypeError("partial_trace expects a PureState or DensityMatrix")


def _check_indices(keep, num_qubits: int) -> None:
    for q in keep:
        if not 0 <= q < num_qubits:
            raise IndexOutOfRange(f"qubit {q} not in register of size {num_qubits}")


# ---------------------------------------------------------------------------
# distances and spectra
# ---------------------------------------------------------------------------


def _pair_matrices(a, b) -> tuple[np.ndarray, np.ndarray]:
    ma = a.matrix if hasattr(a, "matrix") else _as_complex_matrix(a)
    mb = b.matrix if hasattr(b, "matrix") else _as_complex_matrix(b)
    if ma.shape != mb.shape:
        raise DimensionMismatch(f"shapes {ma.shape} and {mb.shape} differ")
    return ma, mb


def trace_norm(matrix) -> float:
    """Half the Schatten 1-norm of a Hermitian matrix.

    This is the normalization under which the distance of two density
    matrices lies in [0, 1].
    """
    mat = matrix.matrix if hasattr(matrix, "matrix") else _as_complex_matrix(matrix)
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(mat))))


def trace_distance(a, b) -> float:
    ma, mb = _pair_matrices(a, b)
    return trace_norm(ma - mb)


def fidelity(a, b) -> float:
    """Squared-convention fidelity (Tr sqrt(sqrt(b) a sqrt(b)))**2.

    Eigenvalues of the inner product matrix below a relative noise floor
    are zeroed before the square root: sqrt() would otherwise amplify
    1e-16 solver noise on rank-deficient states to ~1e-8 in the result.
    """
    ma, mb = _pair_matrices(a, b)
    evals, evecs = np.linalg.eigh(mb)
    sqrt_b = (evecs * np.sqrt(np.clip(evals, 0.0, None))) @ evecs.conj().T
    inner_evals = np.linalg.eigvalsh(sqrt_b @ ma @ sqrt_b)
    floor = max(float(inner_evals.max(initial=0.0)), 0.0) * 1e-13
    kept = np.where(inner_evals > floor, inner_evals, 0.0)
    return float(np.sum(np.sqrt(kept))) ** 2


def pure_overlap_sq(a: PureState, b: PureState) -> float:
    return abs(a.overlap(b)) ** 2


def spectral_decompose(h) -> list[tuple[float, np.ndarray]]:
    """Eigenpairs sorted by descending eigenvalue.

    Each eigenvector's phase is fixed by making its largest-magnitude
    component real and positive, so outputs are reproducible.
    """
    mat = h.matrix if hasattr(h, "matrix") else _as_complex_matrix(h)
    _require_hermitian(mat, 1e-8, "input")
    evals, evecs = np.linalg.eigh(mat)
    order = np.argsort(evals)[::-1]
    pairs = []
    for idx in order:
        vec = evecs[:, idx].copy()
        j = int(np.argmax(np.abs(vec)))
        pivot = vec[j]
        if abs(pivot) > 0:
            vec *= pivot.conjugate() / abs(pivot)
        pairs.append((float(evals[idx]), vec))
    return pairs


def positive_part_projector(h) -> Projector:
    """Projector onto the span of eigenvectors with eigenvalue >= 0.

    Zero eigenvalues count as nonnegative, so the zero matrix maps to the
    identity.  This is the maximizer of Tr(P h) over projectors P.
    """
    mat = h.matrix if hasattr(h, "matrix") else _as_complex_matrix(h)
    _require_hermitian(mat, 1e-8, "input")
    evals, evecs = np.linalg.eigh(mat)
    cols = evecs[:, evals >= 0.0]
    proj = cols @ cols.conj().T
    return Projector(mat.shape[0], proj)


# ---------------------------------------------------------------------------
# measurement and sampling
# ---------------------------------------------------------------------------


def born_probability(state, projector: Projector) -> float:
    """Tr(P rho), clipped into [0, 1]."""
    if isinstance(state, PureState):
        if state.dim != projector.dim:
            raise DimensionMismatch("state and projector dimensions differ")
        p = float(np.real(np.vdot(state.amplitudes, projector.matrix @ state.amplitudes)))
    else:
        mat, proj = _pair_matrices(state, projector)
        p = float(np.real(np.trace(proj @ mat)))
    return min(max(p, 0.0), 1.0)


def measure(state, projector: Projector, rng: Rng) -> int:
    """One shot of the two-outcome measurement {P, I-P}; returns the P bit."""
    return rng.bernoulli(born_probability(state, projector))


def swap_test_accept_prob(a, b) -> float:
    """(1 + Tr(ab))/2, the acceptance probability of the swap test."""
    if isinstance(a, PureState) and isinstance(b, PureState):
        return 0.5 * (1.0 + pure_overlap_sq(a, b))
    ma, mb = _pair_matrices(a, b)
    return 0.5 * (1.0 + float(np.real(np.trace(ma @ mb))))


def swap_test_sample(a, b, rng: Rng) -> int:
    return rng.bernoulli(swap_test_accept_prob(a, b))


def haar_sample(num_qubits: int, rng: Rng) -> PureState:
    """Haar-random pure state: normalized complex Gaussian vector."""
    check_qubits(num_qubits, "Haar sample")
    dim = 1 << num_qubits
    vec = rng.complex_normal(dim)
    vec /= np.linalg.norm(vec)
    return PureState(num_qubits, vec)


def induced_mixed_sample(num_qubits: int, rng: Rng) -> DensityMatrix:
    """Full-rank random density matrix: partial trace of a Haar pure state
    on a doubled register (ancilla of equal dimension)."""
    psi = haar_sample(2 * num_qubits, rng)
    return partial_trace(psi, range(num_qubits))


def random_hermitian(dim: int, rng: Rng) -> np.ndarray:
    """Gaussian Hermitian matrix (GUE-style, unnormalized)."""
    raw = rng.complex_normal((dim, dim))
    return (raw + raw.conj().T) / 2.0
