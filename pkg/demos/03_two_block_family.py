"""Two voter blocks: full participation is what makes distortion bad.

A thin majority sits just right of the midpoint while a large minority sits
exactly on the left candidate.  Under full participation (beta = 0) the
majority elects the right candidate with certainty and the distortion climbs
toward 3 as the blocks tighten.  Allowing abstention (beta = 1) all but
silences the barely-interested majority, and the expected winner flips back
to the cheap candidate.
"""

from votedist import LineElection, expected_distortion


def family(eps: float, total: int = 1000) -> LineElection:
    m_right = round((0.5 + eps) * total)
    return LineElection([0.0] * (total - m_right) + [0.5 + eps] * m_right)


print("full participation (beta = 0): majority wins, costs be damned")
print(f"{'eps':>8} {'winner prob right':>18} {'expected distortion':>20}")
for eps in (0.1, 0.05, 0.01, 0.001):
    report = expected_distortion(family(eps), 0.0)
    print(
        f"{eps:8.3f} {report.win_prob_right:18.6f} "
        f"{report.expected_distortion:20.6f}"
    )

print("\nrelative-distance abstention (beta = 1): the lukewarm majority stays home")
print(f"{'eps':>8} {'expected winner':>16} {'P(right wins)':>14} {'exp. distortion':>16}")
for eps in (0.1, 0.05, 0.01, 0.001):
    report = expected_distortion(family(eps), 1.0)
    print(
        f"{eps:8.3f} {report.expected_winner:>16} {report.win_prob_right:14.6g} "
        f"{report.expected_distortion:16.6f}"
    )
