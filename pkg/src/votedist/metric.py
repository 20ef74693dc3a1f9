"""Elections in arbitrary metric spaces, and their reduction to the line.

A metric election keeps only what the analysis ever uses: each voter's
distance pair to the two candidates, with the candidate separation
normalized to 1 (so ``d_left + d_right >= 1`` by the triangle inequality).
Any such pair list is realizable in some metric space.

``reduce_to_line`` builds a line election in which every voter keeps her
preferred candidate and her exact participation probability, while both the
expected winner's distortion and the expected distortion can only grow.  The
map splits voters by their distance ratio against the left candidate's
distortion: ratios up to it land at ``ratio / (ratio + 1)``, larger ratios at
``ratio / (ratio - 1)``, and voters co-located with the right candidate at 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from . import exact, model
from .model import DistortionReport, LineElection, VoterProfile

__all__ = [
    "MetricElection",
    "LineReduction",
    "distance_ratio",
    "metric_profiles",
    "metric_social_costs",
    "metric_report",
    "reduce_to_line",
    "swap_labels",
]

#: Slack for the triangle-inequality check, absorbing distance round-off.
TRIANGLE_TOL = 1e-12


@dataclass(frozen=True)
class MetricElection:
    """Per-voter distance pairs (d_left, d_right), separation normalized to 1."""

    pairs: tuple[tuple[float, float], ...]

    def __init__(self, pairs: Iterable[tuple[float, float]]):
        clean = []
        for i, (d_left, d_right) in enumerate(pairs):
            d_left, d_right = float(d_left), float(d_right)
            if not (math.isfinite(d_left) and math.isfinite(d_right)):
                raise ValueError(f"voter {i} has non-finite distances")
            if d_left < 0 or d_right < 0:
                raise ValueError(f"voter {i} has negative distances")
            if d_left + d_right < 1.0 - TRIANGLE_TOL:
                raise ValueError(
                    f"voter {i} violates the triangle inequality: "
                    f"{d_left} + {d_right} < 1"
                )
            clean.append((d_left, d_right))
        if not clean:
            raise ValueError("an election needs at least one voter")
        object.__setattr__(self, "pairs", tuple(clean))

    def __len__(self) -> int:
        return len(self.pairs)


class LineReduction(NamedTuple):
    """Line image of a metric election.

    ``swapped`` records that candidate labels were exchanged first because
    the left candidate was optimal in the input; positions then refer to the
    relabeled election.
    """

    election: LineElection
    swapped: bool


def distance_ratio(pair: tuple[float, float]) -> float:
    """Ratio d_left / d_right; inf for voters co-located with the right candidate."""
    d_left, d_right = pair
    if d_right == 0.0:
        if d_left == 0.0:
            raise ValueError("both distances are zero")
        return math.inf
    return d_left / d_right


def metric_profiles(m: MetricElection, beta: float) -> list[VoterProfile]:
    """Preference and participation probability of each voter."""
    beta = model.check_beta(beta)
    profiles = []
    for d_left, d_right in m.pairs:
        if d_left == d_right:
            profiles.append(VoterProfile(model.INDIFFERENT, 0.0))
            continue
        preferred = model.LEFT if d_left < d_right else model.RIGHT
        p = model.participation_probability(
            min(d_left, d_right), max(d_left, d_right), beta
        )
        profiles.append(VoterProfile(preferred, p))
    return profiles


def metric_social_costs(m: MetricElection) -> tuple[float, float]:
    """Summed distances to each candidate."""
    return (
        sum(d_left for d_left, _ in m.pairs),
        sum(d_right for _, d_right in m.pairs),
    )


def metric_report(m: MetricElection, beta: float) -> DistortionReport:
    """Full evaluation of a metric election, with exact win probabilities."""
    beta = model.check_beta(beta)
    profiles = metric_profiles(m, beta)
    sc_left, sc_right = metric_social_costs(m)
    optimal, dist_left, dist_right = model.distortion_pair(sc_left, sc_right)
    win = exact.win_probabilities_from_profiles(profiles)
    ev_left = sum(p.participation for p in profiles if p.preferred == model.LEFT)
    ev_right = sum(p.participation for p in profiles if p.preferred == model.RIGHT)
    if abs(ev_left - ev_right) <= model.WINNER_TIE_TOL:
        winner = model.TIE
    else:
        winner = model.LEFT if ev_left > ev_right else model.RIGHT
    dbar = 0.0
    if win.p_left > 0.0:
        dbar += win.p_left * dist_left
    if win.p_right > 0.0:
        dbar += win.p_right * dist_right
    return DistortionReport(
        sc_left=sc_left,
        sc_right=sc_right,
        optimal=optimal,
        dist_left=dist_left,
        dist_right=dist_right,
        expected_votes_left=ev_left,
        expected_votes_right=ev_right,
        expected_winner=winner,
        win_prob_left=win.p_left,
        win_prob_right=win.p_right,
        expected_distortion=dbar,
    )


def swap_labels(m: MetricElection) -> MetricElection:
    """Exchange the two candidates by swapping every distance pair."""
    return MetricElection((d_right, d_left) for d_left, d_right in m.pairs)


def reduce_to_line(m: MetricElection, beta: float) -> LineReduction:
    """Line election preserving every voter's preference and participation.

    If the left candidate is optimal the labels are swapped first, so the
    construction always works against a right-optimal election (``swapped``
    reports this).  The split threshold is the left candidate's distortion
    computed from the full social costs, which abstention does not affect.
    """
    beta = model.check_beta(beta)
    sc_left, sc_right = metric_social_costs(m)
    swapped = sc_left < sc_right
    if swapped:
        m = swap_labels(m)
        sc_left, sc_right = sc_right, sc_left
    dist_left = math.inf if sc_right == 0.0 else sc_left / sc_right

    positions = []
    for pair in m.pairs:
        ratio = distance_ratio(pair)
        if math.isinf(ratio):
            positions.append(1.0)
        elif ratio <= dist_left:
            positions.append(ratio / (ratio + 1.0))
        else:
            positions.append(ratio / (ratio - 1.0))
    return LineReduction(LineElection(positions), swapped)
