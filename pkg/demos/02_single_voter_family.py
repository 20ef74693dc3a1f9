"""The single-voter family: expected distortion creeping up to 2.

One voter sits at 1 + eps, just right of the right candidate.  The right
candidate is optimal, but the voter only votes with probability
1 / (1 + 2 eps); when she abstains, a fair coin may hand the election to the
far candidate.  As eps -> 0 the closed form (2 + 2 eps) / (1 + 2 eps) tends
to 2, the worst expected distortion any election of this shape can produce.
"""

from votedist import LineElection, expected_distortion, win_probabilities

print(f"{'eps':>8} {'P(left wins)':>13} {'expected distortion':>20} {'closed form':>12}")
for eps in (0.5, 0.2, 0.1, 0.05, 0.01, 0.001, 1e-4):
    e = LineElection([1.0 + eps])
    win = win_probabilities(e, 1.0)
    report = expected_distortion(e, 1.0)
    closed = (2 + 2 * eps) / (1 + 2 * eps)
    print(
        f"{eps:8.4f} {win.p_left:13.6f} "
        f"{report.expected_distortion:20.12f} {closed:12.6f}"
    )

print("\nthe family approaches 2 from below; no single-voter election reaches it")
