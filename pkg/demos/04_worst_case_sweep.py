"""Worst-case distortion of the expected winner as beta sweeps 0 to 1.

Solves the two-point program at each beta and writes worst_case_sweep.csv.
The curve starts at 3 (full participation), dips to about sqrt(2) near
beta = 0.705, and climbs back to about 1.522 at beta = 1, where the extremal
election puts 1/(2 + sqrt 2) of the voters on the left candidate and the rest
at (2 + sqrt 2)/2.
"""

import numpy as np

from votedist import solve_worst_case, sweep_beta, sweep_csv

betas = np.linspace(0.0, 1.0, 101)
rows = sweep_beta(betas)

with open("worst_case_sweep.csv", "w") as fh:
    fh.write(sweep_csv(rows))

values = [r.value for r in rows]
k = int(np.argmin(values))
print(f"{'beta':>6} {'worst case':>11} {'q_b':>8} {'x_b':>8} {'x_d':>8}")
for i in range(0, 101, 10):
    r = rows[i]
    print(f"{r.beta:6.2f} {r.value:11.6f} {r.q_b:8.4f} {r.x_b:8.4f} {r.x_d:8.4f}")

print(f"\nminimum {values[k]:.6f} at beta = {betas[k]:.3f}")
tight = solve_worst_case(1.0)
print(
    f"beta = 1 witness: q_b = {tight.q_b:.6f}, x_b = {tight.x_b:.6f}, "
    f"x_d = {tight.x_d:.6f}, value = {tight.value:.6f}"
)
print("full curve written to worst_case_sweep.csv")
