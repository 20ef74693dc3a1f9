"""Core model: two candidates on a line, voters who may abstain.

The two candidates sit at 0 (``left``) and 1 (``right``); voters are points
on the real line.  A voter with distances ``d_near <= d_far`` to her
preferred and non-preferred candidate casts a sincere vote with probability

    ((d_far - d_near) / (d_near + d_far)) ** beta

and abstains otherwise.  ``beta`` in [0, 1] tunes how strongly the relative
distance suppresses turnout: ``beta = 0`` means everyone with a strict
preference votes, ``beta = 1`` is the fully relative-distance model.  A voter
exactly halfway between the candidates has no sincere vote to cast and never
participates, for every ``beta`` including 0.

Social cost of a candidate is the summed voter distance to it; a candidate's
distortion is its social cost divided by the optimal candidate's.  The
expected winner maximizes the expected number of cast votes, and the expected
distortion weights each candidate's distortion by its probability of winning
the majority contest (ties broken by a fair coin).

Everything here is an immutable value or a pure function; all types are safe
to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "LEFT",
    "RIGHT",
    "TIE",
    "INDIFFERENT",
    "WINNER_TIE_TOL",
    "LineElection",
    "VoterProfile",
    "DistortionReport",
    "check_beta",
    "participation_probability",
    "profile",
    "region_of",
    "social_costs",
    "expected_votes",
    "expected_winner",
    "distortion_pair",
    "distortion_report",
    "winner_distortion",
    "mirror",
]

LEFT = "left"
RIGHT = "right"
TIE = "tie"
INDIFFERENT = "indifferent"

#: Absolute tolerance below which expected vote counts are reported as a tie.
WINNER_TIE_TOL = 1e-12


def check_beta(beta: float) -> float:
    """Validate the participation parameter and return it as a float."""
    beta = float(beta)
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    return beta


@dataclass(frozen=True)
class LineElection:
    """Voter positions on the line, in units of the candidate gap.

    Candidates are implicit: ``left`` at 0 and ``right`` at 1.  Positions may
    be any finite reals; at least one voter is required.
    """

    positions: tuple[float, ...]

    def __init__(self, positions: Iterable[float]):
        pos = tuple(float(x) for x in positions)
        if not pos:
            raise ValueError("an election needs at least one voter")
        for i, x in enumerate(pos):
            if not math.isfinite(x):
                raise ValueError(f"voter {i} has non-finite position {x!r}")
        object.__setattr__(self, "positions", pos)

    def __len__(self) -> int:
        return len(self.positions)

    def replace(self, assignments: dict[int, float]) -> "LineElection":
        """Copy of the election with the given voters moved to new positions."""
        pos = list(self.positions)
        for i, x in assignments.items():
            pos[i] = x
        return LineElection(pos)


@dataclass(frozen=True)
class VoterProfile:
    """A voter's preferred candidate and participation probability.

    ``preferred`` is ``left``, ``right`` or ``indifferent``; an indifferent
    voter always has participation 0.
    """

    preferred: str
    participation: float


@dataclass(frozen=True)
class DistortionReport:
    """Full evaluation of one election at one ``beta``.

    Distortions are at least 1, with ``inf`` when the optimal candidate has
    zero social cost and the other does not.  ``expected_winner`` is ``tie``
    when the expected vote counts agree within ``WINNER_TIE_TOL``.
    """

    sc_left: float
    sc_right: float
    optimal: str
    dist_left: float
    dist_right: float
    expected_votes_left: float
    expected_votes_right: float
    expected_winner: str
    win_prob_left: float
    win_prob_right: float
    expected_distortion: float


def participation_probability(d_near: float, d_far: float, beta: float) -> float:
    """Probability that a voter with these candidate distances casts a vote.

    Parameters
    ----------
    d_near, d_far : float
        Distances to the preferred and the other candidate.  Must be
        nonnegative and not both zero.
    beta : float
        Participation parameter in [0, 1].

    Returns
    -------
    float
        ``(|d_near - d_far| / (d_near + d_far)) ** beta``; equidistant voters
        get 0 for every ``beta``, including 0.
    """
    beta = check_beta(beta)
    if d_near < 0 or d_far < 0:
        raise ValueError("distances must be nonnegative")
    if d_near == 0 and d_far == 0:
        raise ValueError("distances must not both be zero")
    if d_near == d_far:
        return 0.0
    if beta == 0.0:
        return 1.0
    return (abs(d_far - d_near) / (d_near + d_far)) ** beta


def profile(x: float, beta: float) -> VoterProfile:
    """Preference and participation of a voter at position ``x``."""
    if not math.isfinite(x):
        raise ValueError(f"position must be finite, got {x!r}")
    d_left = abs(x)
    d_right = abs(x - 1.0)
    if x == 0.5:
        return VoterProfile(INDIFFERENT, 0.0)
    preferred = LEFT if x < 0.5 else RIGHT
    p = participation_probability(min(d_left, d_right), max(d_left, d_right), beta)
    return VoterProfile(preferred, p)


def region_of(x: float) -> str:
    """Classify a position into region A, B, C or D.

    The line splits at the candidates and their midpoint; boundaries follow
    the half-open convention A = (-inf, 0), B = [0, 1/2), C = [1/2, 1),
    D = [1, inf).
    """
    if not math.isfinite(x):
        raise ValueError(f"position must be finite, got {x!r}")
    if x < 0.0:
        return "A"
    if x < 0.5:
        return "B"
    if x < 1.0:
        return "C"
    return "D"


def social_costs(e: LineElection) -> tuple[float, float]:
    """Summed voter distances to the left and right candidate."""
    sc_left = sum(abs(x) for x in e.positions)
    sc_right = sum(abs(x - 1.0) for x in e.positions)
    return sc_left, sc_right


def expected_votes(e: LineElection, beta: float) -> tuple[float, float]:
    """Expected number of cast votes for each candidate."""
    beta = check_beta(beta)
    left = 0.0
    right = 0.0
    for x in e.positions:
        prof = profile(x, beta)
        if prof.preferred == LEFT:
            left += prof.participation
        elif prof.preferred == RIGHT:
            right += prof.participation
    return left, right


def expected_winner(e: LineElection, beta: float) -> str:
    """Candidate with the larger expected vote count, or ``tie``.

    Counts within ``WINNER_TIE_TOL`` of each other are reported as a tie
    rather than broken silently; callers pick their own tie policy.
    """
    left, right = expected_votes(e, beta)
    if abs(left - right) <= WINNER_TIE_TOL:
        return TIE
    return LEFT if left > right else RIGHT


def distortion_pair(sc_left: float, sc_right: float) -> tuple[str, float, float]:
    """Optimal candidate and both distortions for the given social costs.

    Degenerate costs follow fixed conventions: both zero means both
    distortions are 1; a zero-cost optimum against a positive cost yields an
    infinite distortion for the other candidate.  An exact cost tie reports
    ``left`` as optimal (both distortions are 1, so the label is cosmetic).
    """
    if sc_left < 0 or sc_right < 0:
        raise ValueError("social costs must be nonnegative")
    if sc_left == 0.0 and sc_right == 0.0:
        return LEFT, 1.0, 1.0
    optimal = LEFT if sc_left <= sc_right else RIGHT
    sc_opt = min(sc_left, sc_right)
    if sc_opt == 0.0:
        return optimal, (1.0 if optimal == LEFT else math.inf), (
            1.0 if optimal == RIGHT else math.inf
        )
    return optimal, sc_left / sc_opt, sc_right / sc_opt


def distortion_report(
    e: LineElection, beta: float, win_probs: Sequence[float]
) -> DistortionReport:
    """Assemble the full report from an election and supplied win probabilities.

    ``win_probs`` is the pair (P(left wins), P(right wins)); it must sum to 1.
    The expected distortion weights each candidate's distortion by its win
    probability, with zero-probability candidates contributing nothing even
    when their distortion is infinite.
    """
    beta = check_beta(beta)
    p_left, p_right = float(win_probs[0]), float(win_probs[1])
    if min(p_left, p_right) < 0 or abs(p_left + p_right - 1.0) > 1e-9:
        raise ValueError(f"win probabilities must sum to 1, got {win_probs!r}")
    sc_left, sc_right = social_costs(e)
    optimal, dist_left, dist_right = distortion_pair(sc_left, sc_right)
    ev_left, ev_right = expected_votes(e, beta)
    dbar = 0.0
    if p_left > 0.0:
        dbar += p_left * dist_left
    if p_right > 0.0:
        dbar += p_right * dist_right
    return DistortionReport(
        sc_left=sc_left,
        sc_right=sc_right,
        optimal=optimal,
        dist_left=dist_left,
        dist_right=dist_right,
        expected_votes_left=ev_left,
        expected_votes_right=ev_right,
        expected_winner=expected_winner(e, beta),
        win_prob_left=p_left,
        win_prob_right=p_right,
        expected_distortion=dbar,
    )


def winner_distortion(e: LineElection, beta: float) -> float:
    """Distortion of the expected winner.

    Raises if the expected vote counts tie; there is then no single winner to
    take the distortion of.
    """
    w = expected_winner(e, beta)
    if w == TIE:
        raise ValueError("expected vote counts tie; no unique expected winner")
    _, dist_left, dist_right = distortion_pair(*social_costs(e))
    return dist_left if w == LEFT else dist_right


def mirror(e: LineElection) -> LineElection:
    """Reflect every voter through the midpoint (x -> 1 - x).

    Swaps the roles of the two candidates: social costs, expected vote counts
    and win probabilities all trade places under this map.
    """
    return LineElection(1.0 - x for x in e.positions)
