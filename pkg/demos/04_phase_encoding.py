"""Phase encoding: log(alphabet) classical bits per qubit, weakly separated.

Each digit y of the input becomes the equatorial qubit state with phase
2*pi*y/alphabet.  Distinct digits overlap at most
sqrt((1 + cos(2*pi/alphabet))/2) < 1, a separation that shrinks only
polynomially in the alphabet size, which is exactly the trade the weak
one-wayness regime allows.
"""

import math

from qclab.constructions import (
    digit_split,
    phase_digit_overlap,
    phase_overlap_ceiling,
    phase_owsg,
    phase_state,
)
from qclab.primitives import make_toy_owf, scheme_correctness
from qclab.rng import Rng

print("single-digit overlap ceiling as the alphabet grows:")
for alphabet in (4, 8, 16, 64, 256):
    print(f"  alphabet {alphabet:4d}: {phase_overlap_ceiling(alphabet):.6f}")

print("\nalphabet 4, adjacent digits: |(1+i)/2| =", phase_digit_overlap(0, 1, 4),
      "= 1/sqrt(2) =", 1 / math.sqrt(2))

lam = 16
y = 0b10110001
digits = digit_split(y, 8, lam)
print(f"\n8-bit value {y:08b} as base-{lam} digits: {digits}")

a = phase_state(digit_split(0b10110001, 8, lam), lam)
b = phase_state(digit_split(0b10110010, 8, lam), lam)
print("two-digit states, one digit differing, overlap:", abs(a.overlap(b)))
print("per-digit ceiling:", phase_overlap_ceiling(lam))

owf = make_toy_owf(8, 8, Rng(61))
scheme = phase_owsg(owf, lam)
print(f"\nkeyed scheme on {scheme.output_qubits} qubits, "
      f"correctness = {scheme_correctness(scheme):.12f}")
print("the verifier still accepts wrong keys with probability close to 1;")
print("this buys output length, not strong security.")
