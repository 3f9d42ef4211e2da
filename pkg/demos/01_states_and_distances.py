"""A tour of the simulation core: states, composition, and distances.

Everything downstream rests on a handful of conventions fixed here:
qubit 0 is the most significant bit, trace distance is half the Schatten
1-norm (so it lands in [0, 1]), and fidelity uses the squared convention.
"""

import numpy as np

from qclab import (
    Rng,
    basis_state,
    fidelity,
    haar_sample,
    maximally_mixed,
    partial_trace,
    plus_state,
    swap_test_accept_prob,
    tensor,
    trace_distance,
)

rng = Rng(2024)

print("== composing registers ==")
zero, one = basis_state(1, 0), basis_state(1, 1)
print("|0> ox |1> amplitudes:", tensor(zero, one).amplitudes.real)

bell = basis_state(2, 0).amplitudes + basis_state(2, 3).amplitudes
bell = bell / np.linalg.norm(bell)
from qclab import PureState  # noqa: E402

bell_state = PureState(2, bell)
marginal = partial_trace(bell_state, [0])
print("Bell-pair marginal (should be I/2):\n", marginal.matrix.real)

print("\n== distances ==")
print("TD(|0>, |1>)  =", trace_distance(zero.to_density(), one.to_density()))
print("TD(|0>, |+>)  =", trace_distance(zero.to_density(), plus_state().to_density()))
print("   (pure states obey TD^2 + overlap^2 = 1; overlap here is 1/2)")
print("F(|0>, I/4)   =", fidelity(basis_state(2, 0).to_density(), maximally_mixed(2)))

print("\n== swap test ==")
psi = haar_sample(1, rng.child("psi"))
print("identical states accept with prob", swap_test_accept_prob(psi, psi))
print("orthogonal states accept with prob", swap_test_accept_prob(zero, one))
print("two maximally mixed qubits:", swap_test_accept_prob(maximally_mixed(1), maximally_mixed(1)))

print("\n== Haar sampling is seeded and replayable ==")
a = haar_sample(2, Rng(7).child("x")).amplitudes
b = haar_sample(2, Rng(7).child("x")).amplitudes
print("same seed, same state:", np.array_equal(a, b))
