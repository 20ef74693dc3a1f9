"""Sampling estimates with distribution-free confidence half-widths.

For elections too large for comfort, win probability and expected distortion
are estimated by simulating the election, with two-sided half-widths from
the exponential tail bound for bounded variables:

    t = sqrt(ln(2 / (1 - confidence)) / (2 * samples))

for the probability estimate, scaled by the distortion range for the
distortion estimate.  Streams come from counter-based generators spawned per
worker, so results are bit-reproducible given (seed, workers) regardless of
scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import model
from .model import LEFT, RIGHT, LineElection

__all__ = [
    "McConfig",
    "McEstimate",
    "hoeffding_half_width",
    "simulate",
    "sample_outcome",
]


@dataclass(frozen=True)
class McConfig:
    """Sampling plan: sample count, seed, confidence level, worker count."""

    samples: int
    seed: int
    confidence: float = 0.95
    workers: int = 1

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not 0.0 < self.confidence < 1.0:
            raise ValueError("confidence must lie in (0, 1)")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class McEstimate:
    """Point estimates with confidence half-widths."""

    p_left_hat: float
    expected_distortion_hat: float
    half_width_p: float
    half_width_d: float


def hoeffding_half_width(samples: int, confidence: float) -> float:
    """Two-sided half-width for the mean of ``samples`` variables in [0, 1]."""
    return math.sqrt(math.log(2.0 / (1.0 - confidence)) / (2.0 * samples))


def _groups(e: LineElection, beta: float):
    # Voters sharing (preference, participation) are exchangeable, so their
    # joint vote count can be drawn as one binomial.
    counts: dict[tuple[str, float], int] = {}
    for x in e.positions:
        prof = model.profile(x, beta)
        if prof.preferred == model.INDIFFERENT:
            continue
        key = (prof.preferred, prof.participation)
        counts[key] = counts.get(key, 0) + 1
    return sorted(counts.items())


def simulate(e: LineElection, beta: float, cfg: McConfig) -> McEstimate:
    """Estimate win probability and expected distortion by simulation.

    Each sample realizes every voter's participation independently and
    applies the majority rule with a fair-coin tie.  Elections where either
    distortion is infinite are rejected; their expected distortion is not a
    bounded variable and has no finite-width interval.
    """
    beta = model.check_beta(beta)
    sc_left, sc_right = model.social_costs(e)
    _, dist_left, dist_right = model.distortion_pair(sc_left, sc_right)
    if math.isinf(dist_left) or math.isinf(dist_right):
        raise ValueError("cannot simulate an election with infinite distortion")

    groups = _groups(e, beta)
    chunk_sizes = [
        cfg.samples // cfg.workers + (1 if i < cfg.samples % cfg.workers else 0)
        for i in range(cfg.workers)
    ]
    streams = np.random.SeedSequence(cfg.seed).spawn(cfg.workers)

    wins_left = 0.0
    dist_total = 0.0
    for size, stream in zip(chunk_sizes, streams):
        if size == 0:
            continue
        rng = np.random.Generator(np.random.Philox(stream))
        count_left = np.zeros(size, dtype=np.int64)
        count_right = np.zeros(size, dtype=np.int64)
        for (preferred, p), m in groups:
            drawn = rng.binomial(m, p, size=size)
            if preferred == LEFT:
                count_left += drawn
            else:
                count_right += drawn
        coin = rng.integers(0, 2, size=size).astype(bool)
        left_won = (count_left > count_right) | ((count_left == count_right) & coin)
        wins_left += float(np.count_nonzero(left_won))
        dist_total += float(np.where(left_won, dist_left, dist_right).sum())

    p_left_hat = wins_left / cfg.samples
    dbar_hat = dist_total / cfg.samples
    t = hoeffding_half_width(cfg.samples, cfg.confidence)
    return McEstimate(
        p_left_hat=p_left_hat,
        expected_distortion_hat=dbar_hat,
        half_width_p=t,
        half_width_d=t * (max(dist_left, dist_right) - 1.0),
    )


def sample_outcome(e: LineElection, beta: float, rng: np.random.Generator) -> str:
    """Realize one election outcome, advancing ``rng``; returns the winner."""
    beta = model.check_beta(beta)
    count_left = 0
    count_right = 0
    for x in e.positions:
        prof = model.profile(x, beta)
        if prof.preferred == model.INDIFFERENT:
            continue
        if rng.random() < prof.participation:
            if prof.preferred == LEFT:
                count_left += 1
            else:
                count_right += 1
    if count_left != count_right:
        return LEFT if count_left > count_right else RIGHT
    return LEFT if rng.integers(0, 2) == 0 else RIGHT
