"""Full key recovery: estimate the state, shortlist a covering net, resample.

Tomography turns copies of an unknown state into a classical matrix within
trace-norm delta; a gamma-net makes the continuum of states finite.  The
attack estimates the challenge, keeps the net points within gamma, then
redraws keys until one lands near the shortlist, recovering, with
probability 1 - Delta, a key whose state sits within 4*gamma of the
target.  Below, on a scheme with 8 keys on one qubit.
"""

from qclab.attacks import (
    build_net,
    net_attack,
    per_pauli_shots,
    run_net_attack,
    tomography,
    worst_case_copy_budget,
)
from qclab.constructions import prsg_to_owsg
from qclab.primitives import make_haar_prsg
from qclab.qcore import maximally_mixed, trace_norm
from qclab.rng import Rng

rng = Rng(99)

print("== tomography ==")
rho = maximally_mixed(1)
result = tomography(rho, delta=0.1, rng=rng.child("tomo"), mode="sampled", beta=0.05)
err = trace_norm(result.estimate.matrix - rho.matrix)
print(f"sampled estimate of I/2: error {err:.5f} <= 0.1 using {result.copies_used} shots")
print(f"  ({per_pauli_shots(2, 0.1, 0.05)} shots per Pauli observable)")
print(f"worst-case analytic copy count at lam=16: {worst_case_copy_budget(2, 0.1, 16):,.0f}")
print("  (logged for comparison, never executed)")

print("\n== covering net ==")
delta_gap = 0.2
net = build_net(2, delta_gap / 6.0)
print(f"gamma = Delta/6 = {delta_gap / 6:.4f}: {net.size} qubit states "
      f"(effective constant {net.c_impl:.3f})")
audit = net.covering_audit(300, rng.child("audit"))
print(f"covering audit: {audit['fraction_covered']:.1%} of 300 random mixed states "
      f"within gamma (worst min distance {audit['worst_min_distance']:.4f})")

print("\n== the attack ==")
scheme = prsg_to_owsg(make_haar_prsg(3, 1, rng.child("scheme")))
adversary = net_attack(scheme, delta_gap, net=net)
report = run_net_attack(scheme, adversary, 200, rng.child("attack"))
print(f"win rate over 200 trials: {report.estimate:.4f} (target >= {1 - delta_gap})")
print(f"aborts: {report.detail['bots']}, structural violations: "
      f"{report.detail['structural_violations']}")
iters = [r["iterations"] for r in report.detail["transcript"] if not r["bot"]]
print(f"iterations per trial: mean {sum(iters) / len(iters):.2f}, max {max(iters)}")
