"""Fingerprint states: packing 8 classical bits into 12 qubits with every
pair of distinct inputs at overlap <= 1/2.

The encoding superposes |position>|code bit| over the positions of an
error-correcting codeword, then repeats r times: two inputs whose
codewords agree on a fraction a/m overlap at exactly (a/m)^r, so a code
with certified minimum distance turns into a certified overlap bound.
Composing with a (toy) one-way function gives a keyed scheme whose
verifier accepts wrong keys with probability at most eta^2.
"""

import numpy as np

from qclab.constructions import (
    build_linear_code,
    fingerprint_overlap,
    fingerprint_owsg,
    fingerprint_state,
    make_fingerprint,
)
from qclab.primitives import make_toy_owf, scheme_correctness
from qclab.rng import Rng

rng = Rng(33)

code = build_linear_code(8, 32, rng.child("code"), target_delta=0.6875, max_tries=2000)
print(f"code: 8 -> 32 bits, certified d_min = {code.d_min}, delta = {code.delta:.4f}")

fp = make_fingerprint(code, eta=0.5)
print(f"repetitions r = {fp.repetitions}, qubits = {fp.total_qubits}, "
      f"delta^r = {fp.overlap_bound():.4f} <= eta = {fp.eta}")

x, y = 0b10110001, 0b10110000
s_x, s_y = fingerprint_state(fp, x), fingerprint_state(fp, y)
print(f"\ninputs differing in one bit:")
print(f"  state inner product  : {abs(s_x.overlap(s_y)):.6f}")
print(f"  (agreement/m)^r      : {fingerprint_overlap(fp, x, y):.6f}")

print("\nexhaustive certificate over all 256 inputs:")
stack = np.stack([fingerprint_state(fp, v).amplitudes for v in range(256)])
gram = np.abs(stack @ stack.conj().T)
off = ~np.eye(256, dtype=bool)
print(f"  max overlap over distinct pairs = {gram[off].max():.6f} (= delta^r at a d_min pair)")

owf = make_toy_owf(8, 8, rng.child("owf"))
scheme = fingerprint_owsg(owf, 0.5, rng.child("unused"), code=code)
print(f"\nkeyed scheme: correctness = {scheme_correctness(scheme):.12f}")
k, k_bad = 3, 7
accept = scheme.verifier(k_bad, scheme.challenge(k))
print(f"verifier on a wrong key with a different image: {accept:.6f} <= eta^2 = 0.25")
