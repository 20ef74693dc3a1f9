"""Crushing an election into its extremal shape, one certified move at a time.

Starts from a scattered election in which the left candidate leads on
expected votes while the right candidate is optimal, then walks the
displacement chain: region A empties onto 0, region C drains onto {1/2, 1}
via paired moves, and each of B and D collapses to a single point.  Every
step is certified on the spot: the expected winner never changes and its
distortion never decreases.
"""

from votedist import LineElection, canonicalize_expected_winner, winner_distortion
from votedist.model import expected_winner, social_costs

BETA = 0.9
e = LineElection([-1.2, -0.3, 0.05, 0.1, 0.32, 0.6, 0.85, 2.0, 2.3, 2.8, 3.2])

sc_left, sc_right = social_costs(e)
print("start   :", ", ".join(f"{x:+.4f}" for x in e.positions))
print(
    f"expected winner = {expected_winner(e, BETA)}, optimal = "
    f"{'right' if sc_right < sc_left else 'left'}, "
    f"D(winner) = {winner_distortion(e, BETA):.6f}\n"
)

form = canonicalize_expected_winner(e, BETA)
shown = list(zip(form.steps, form.certificates))
head, tail = shown[:12], shown[-2:]
for step, cert in head:
    targets = ", ".join(f"{t:+.4f}" for t in step.targets)
    print(
        f"{step.kind:>18} voters {step.voters} -> ({targets})   "
        f"D(winner) {cert.metric_before:.6f} -> {cert.metric_after:.6f}"
    )
if len(shown) > 14:
    print(f"{'...':>18} {len(shown) - 14} more midpoint merges ...")
    for step, cert in tail:
        targets = ", ".join(f"{t:+.4f}" for t in step.targets)
        print(
            f"{step.kind:>18} voters {step.voters} -> ({targets})   "
            f"D(winner) {cert.metric_before:.6f} -> {cert.metric_after:.6f}"
        )

final = form.election
print("\nfinal   :", ", ".join(f"{x:+.4f}" for x in final.positions))
print(f"distinct positions: {sorted(set(final.positions))}")
print(f"D(winner): {winner_distortion(final, BETA):.6f} (never decreased)")
