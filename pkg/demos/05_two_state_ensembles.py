"""Two-state ensembles and the spectral distinguisher that breaks small ones.

The ensemble: the image distribution of a length-doubling PRG versus the
uniform string, as diagonal states on 2n qubits.  They are statistically
far (fidelity <= 2^-n) by construction.  The distinguisher estimates both
states, projects onto the positive part of the estimated difference, and
measures.  With both estimates within trace-norm delta, its advantage is
at least TD - 8*delta, checked here with adversarial worst-case
perturbations of exactly that size.
"""

from qclab.attacks import efi_distinguisher
from qclab.constructions import prg_efi
from qclab.primitives import make_toy_prg, run_efi_game
from qclab.rng import Rng

rng = Rng(77)

for n in (2, 3, 4):
    pair = prg_efi(make_toy_prg(n, rng.child(f"prg-{n}")))
    print(f"n={n}: F = {pair.fidelity():.6f} (cap 2^-{n}),"
          f" TD = {pair.trace_distance():.6f} (floor 1 - 2^(-{n}/2))")

pair = prg_efi(make_toy_prg(3, rng.child("attack-prg")))
td = pair.trace_distance()
print(f"\nattacking the n=3 pair, TD = {td:.4f}, delta = TD/16 = {td / 16:.6f}")

helstrom = efi_distinguisher(pair, 1.0 / td, perturb_trace_norm=0.0)
game = run_efi_game(pair, helstrom, 1500, rng.child("game-exact"))
print(f"exact estimates   : advantage {game.estimate:.4f}  (TD = {td:.4f})")

perturbed = efi_distinguisher(pair, 1.0 / td)  # worst-case delta injected
game = run_efi_game(pair, perturbed, 1500, rng.child("game-perturbed"))
print(f"perturbed estimates: advantage {game.estimate:.4f}  (floor TD - 8*delta = {td / 2:.4f})")
print("\neven with every estimate off by the full error budget, the")
print("projector keeps more than half the statistical distance.")
