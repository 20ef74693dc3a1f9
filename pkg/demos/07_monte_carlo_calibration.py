"""Are the simulation intervals honest?  Check them against the exact engine.

For a fixed mid-sized election, simulate with many seeds and count how often
the reported interval captures the exact win probability.  The half-widths
come from a distribution-free tail bound, so measured coverage should sit
well above the nominal confidence; halving only kicks in with 4x samples.
"""

from votedist import LineElection, McConfig, simulate, win_probabilities

e = LineElection([-0.5, -0.1, 0.2, 0.35, 0.6, 0.9, 1.25, 1.8])
BETA = 0.7
exact_p = win_probabilities(e, BETA).p_left
print(f"exact P(left wins) = {exact_p:.6f}\n")

for confidence in (0.8, 0.9, 0.95):
    hits = 0
    seeds = 200
    for seed in range(seeds):
        est = simulate(e, BETA, McConfig(samples=300, seed=seed, confidence=confidence))
        if abs(est.p_left_hat - exact_p) <= est.half_width_p:
            hits += 1
    print(
        f"confidence {confidence:.2f}: covered in {hits}/{seeds} runs "
        f"({hits / seeds:.1%}), half-width {est.half_width_p:.4f}"
    )

print("\nhalf-widths shrink with the square root of the sample count:")
for samples in (250, 1000, 4000, 16000):
    est = simulate(e, BETA, McConfig(samples=samples, seed=1, confidence=0.95))
    print(
        f"  samples {samples:6d}: p_hat = {est.p_left_hat:.5f} "
        f"+/- {est.half_width_p:.5f}"
    )
