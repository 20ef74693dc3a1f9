"""Valid displacements: voter moves that cannot improve an election.

A displacement relocates one or two voters.  It is *valid* for the
expected-winner analysis when it preserves the expected winner and does not
decrease that winner's distortion, and valid for the expected-distortion
analysis when it does not decrease the expected distortion.  The moves here
are the constructive ones:

* ``move_a_to_zero``     -- an A voter jumps to the left candidate;
* ``move_bc_pair``       -- a B voter and a C voter shift by equal and
                             opposite amounts until the C voter reaches 1/2
                             or 1;
* ``merge_same_region``  -- two voters in the same region (B or D) meet at
                             their midpoint;
* ``map_a_to_b``         -- an A voter crosses to the mirror point in B with
                             the exact same participation probability;
* ``map_c_to_d``         -- the analogous C-to-D crossing;
* ``merge_d_geometric``  -- two D voters meet where the odds factors
                             ``2x - 1`` average geometrically, preserving the
                             probability that both vote.

Every move can be certified numerically on a concrete election:
``certify_winner_displacement`` and ``certify_expected_displacement`` compare
the relevant quantity before and after.  The two ``canonicalize_*``
procedures chain the moves to crush an election into its extremal shape,
certifying every step, and raise ``CertificateError`` on any certified
regression (which would indicate a bug, not a property of the input).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from . import exact, model, montecarlo
from .model import LEFT, RIGHT, TIE, LineElection

__all__ = [
    "CERTIFICATE_TOL",
    "SNAP_TOL",
    "CertificateError",
    "Displacement",
    "ValidityCertificate",
    "CanonicalForm",
    "certify_winner_displacement",
    "certify_expected_displacement",
    "move_a_to_zero",
    "move_bc_pair",
    "merge_same_region",
    "map_a_to_b",
    "map_c_to_d",
    "merge_d_geometric",
    "canonicalize_expected_winner",
    "canonicalize_expected_distortion",
]

#: Certified quantities may drift below their predecessor by at most this.
CERTIFICATE_TOL = 1e-9

#: Positions closer than this are collapsed to a single point.
SNAP_TOL = 1e-12

_MAX_MERGE_ROUNDS = 100_000


class CertificateError(RuntimeError):
    """A displacement chain produced a certified regression."""


@dataclass(frozen=True)
class Displacement:
    """One applied move: its kind, the voters touched, their new positions."""

    kind: str
    voters: tuple[int, ...]
    targets: tuple[float, ...]


@dataclass(frozen=True)
class ValidityCertificate:
    """Before/after record for one displacement.

    ``metric`` is the distortion of the expected winner for winner-preserving
    moves and the expected distortion otherwise.  ``allowance`` widens the
    tolerance when the metric was estimated rather than computed exactly.
    """

    winner_before: str
    winner_after: str
    metric_before: float
    metric_after: float
    winner_preserving: bool
    allowance: float = CERTIFICATE_TOL

    @property
    def passed(self) -> bool:
        if self.winner_preserving and self.winner_after != self.winner_before:
            return False
        return self.metric_after >= self.metric_before - self.allowance


@dataclass(frozen=True)
class CanonicalForm:
    """Result of a canonicalization.

    ``applied`` is False when the election was not in the configuration the
    procedure reduces (it is then returned unchanged).  When certification is
    on, ``certificates`` holds one entry per step plus a final end-to-end
    certificate comparing input to output.
    """

    election: LineElection
    applied: bool
    steps: tuple[Displacement, ...]
    certificates: tuple[ValidityCertificate, ...]


def certify_winner_displacement(
    before: LineElection, after: LineElection, beta: float
) -> ValidityCertificate:
    """Certificate that a move kept the expected winner and its distortion."""
    w_before = model.expected_winner(before, beta)
    w_after = model.expected_winner(after, beta)
    if w_before == TIE:
        raise ValueError("cannot certify winner preservation from a tied election")
    return ValidityCertificate(
        winner_before=w_before,
        winner_after=w_after,
        metric_before=model.winner_distortion(before, beta),
        metric_after=(
            model.winner_distortion(after, beta) if w_after != TIE else math.nan
        ),
        winner_preserving=True,
    )


def certify_expected_displacement(
    before: LineElection,
    after: LineElection,
    beta: float,
    exact_limit: int = 512,
    mc: Optional[montecarlo.McConfig] = None,
) -> ValidityCertificate:
    """Certificate that a move did not decrease the expected distortion.

    Uses the exact engine up to ``exact_limit`` voters.  Beyond that the two
    sides are estimated by simulation (``mc`` must then be given) and the
    allowance widens by both half-widths, so the certificate only fails when
    the confidence intervals themselves witness a decrease.
    """
    allowance = CERTIFICATE_TOL
    if max(len(before), len(after)) <= exact_limit:
        d_before = exact.expected_distortion(before, beta).expected_distortion
        d_after = exact.expected_distortion(after, beta).expected_distortion
    else:
        if mc is None:
            raise ValueError("election too large for exact certification; pass mc")
        est_before = montecarlo.simulate(before, beta, mc)
        est_after = montecarlo.simulate(after, beta, mc)
        d_before = est_before.expected_distortion_hat
        d_after = est_after.expected_distortion_hat
        allowance += est_before.half_width_d + est_after.half_width_d
    return ValidityCertificate(
        winner_before=model.expected_winner(before, beta),
        winner_after=model.expected_winner(after, beta),
        metric_before=d_before,
        metric_after=d_after,
        winner_preserving=False,
        allowance=allowance,
    )


def _require_region(e: LineElection, i: int, wanted: str) -> float:
    x = e.positions[i]
    got = model.region_of(x)
    if got != wanted:
        raise ValueError(f"voter {i} at {x} is in region {got}, expected {wanted}")
    return x


def move_a_to_zero(e: LineElection, i: int) -> LineElection:
    """Move voter ``i`` from region A onto the left candidate."""
    _require_region(e, i, "A")
    return e.replace({i: 0.0})


def move_bc_pair(e: LineElection, i: int, j: int) -> LineElection:
    """Shift a B voter and an interior-C voter by equal, opposite amounts.

    When the B voter is at most as far from the left candidate as the C voter
    is from the right one, the pair closes up until the C voter sits at 1/2;
    otherwise until the C voter sits at 1.  Either way both social costs are
    untouched, and the left candidate's expected-vote lead cannot shrink.
    """
    xi = _require_region(e, i, "B")
    xj = _require_region(e, j, "C")
    if xj == 0.5:
        raise ValueError(f"voter {j} is exactly indifferent; no pair move applies")
    if xi <= 1.0 - xj:
        return e.replace({i: xi + xj - 0.5, j: 0.5})
    return e.replace({i: xi - 1.0 + xj, j: 1.0})


def merge_same_region(e: LineElection, i: int, j: int) -> LineElection:
    """Move two voters of the same region (B or D) to their midpoint."""
    ri = model.region_of(e.positions[i])
    rj = model.region_of(e.positions[j])
    if ri != rj or ri not in ("B", "D"):
        raise ValueError(
            f"voters {i} and {j} must share region B or D, got {ri} and {rj}"
        )
    m = 0.5 * (e.positions[i] + e.positions[j])
    return e.replace({i: m, j: m})


def map_a_to_b(e: LineElection, i: int) -> LineElection:
    """Carry an A voter to the unique B point with equal participation.

    A voter at ``x < 0`` votes with probability ``(1 / (1 - 2x)) ** beta``;
    the point ``-x / (1 - 2x)`` in B yields exactly the same probability for
    every ``beta``, while both social costs drop.
    """
    x = _require_region(e, i, "A")
    return e.replace({i: -x / (1.0 - 2.0 * x)})


def map_c_to_d(e: LineElection, j: int) -> LineElection:
    """Carry an interior-C voter to the unique D point with equal participation.

    The image of ``x`` is ``x / (2x - 1)``, the mirror of the A-to-B map.
    Exactly indifferent voters (x = 1/2) are rejected; they have no preferred
    candidate whose vote probability could be preserved.

    Unlike the A-to-B crossing, this move is *conditionally* valid: it scales
    the voter's cost pair up in the ratio ``x / (1 - x)``, so it cannot lower
    the expected distortion exactly when that ratio is at least the left
    candidate's distortion.  Below that threshold the move provably lowers
    the left candidate's distortion (win probabilities are untouched), and a
    certificate will fail.  :func:`canonicalize_expected_distortion` checks
    the threshold before crossing anyone.
    """
    x = _require_region(e, j, "C")
    if x == 0.5:
        raise ValueError(f"voter {j} is exactly indifferent; no D image exists")
    return e.replace({j: x / (2.0 * x - 1.0)})


def merge_d_geometric(e: LineElection, i: int, j: int) -> LineElection:
    """Merge two D voters at the geometric mean of their odds factors.

    Both land at ``t = (sqrt((2 x_i - 1)(2 x_j - 1)) + 1) / 2``, which lies
    between them.  The probability that both vote is exactly preserved;
    probability mass moves only from "exactly one votes" to "neither votes".
    """
    xi = _require_region(e, i, "D")
    xj = _require_region(e, j, "D")
    t = 0.5 * (math.sqrt((2.0 * xi - 1.0) * (2.0 * xj - 1.0)) + 1.0)
    return e.replace({i: t, j: t})


class _Chain:
    """Bookkeeping for a certified sequence of displacements."""

    def __init__(
        self,
        e: LineElection,
        certifier: Optional[Callable[[LineElection, LineElection], ValidityCertificate]],
    ):
        self.current = e
        self.certifier = certifier
        self.steps: list[Displacement] = []
        self.certificates: list[ValidityCertificate] = []

    def apply(self, kind: str, assignments: dict[int, float]) -> None:
        nxt = self.current.replace(assignments)
        self.steps.append(
            Displacement(kind, tuple(assignments), tuple(assignments.values()))
        )
        if self.certifier is not None:
            cert = self.certifier(self.current, nxt)
            self.certificates.append(cert)
            if not cert.passed:
                raise CertificateError(
                    f"displacement {kind}{tuple(assignments)} regressed: {cert}"
                )
        self.current = nxt

    def collapse(
        self,
        member: Callable[[float], bool],
        kind: str,
        meet: Callable[[float, float], float],
    ) -> None:
        """Merge the two extreme members until all sit at one snapped point."""
        for _ in range(_MAX_MERGE_ROUNDS):
            members = [i for i, x in enumerate(self.current.positions) if member(x)]
            if len(members) < 2:
                return
            lo = min(members, key=lambda i: self.current.positions[i])
            hi = max(members, key=lambda i: self.current.positions[i])
            x_lo = self.current.positions[lo]
            x_hi = self.current.positions[hi]
            if x_hi - x_lo <= SNAP_TOL:
                point = 0.5 * (x_lo + x_hi)
                self.current = self.current.replace({i: point for i in members})
                return
            t = meet(x_lo, x_hi)
            self.apply(kind, {lo: t, hi: t})
        raise CertificateError("merge loop failed to converge; this is a bug")

    def finish(self, origin: LineElection) -> CanonicalForm:
        if self.certifier is not None:
            cert = self.certifier(origin, self.current)
            self.certificates.append(cert)
            if not cert.passed:
                raise CertificateError(f"end-to-end certificate failed: {cert}")
        return CanonicalForm(
            election=self.current,
            applied=True,
            steps=tuple(self.steps),
            certificates=tuple(self.certificates),
        )


def canonicalize_expected_winner(
    e: LineElection, beta: float, certify: bool = True
) -> CanonicalForm:
    """Reduce an election to two points without lowering D(expected winner).

    Applies only when the left candidate is strictly the expected winner and
    the right candidate is strictly optimal; anything else passes through
    with ``applied=False``.  Region A empties onto 0, the interior of C onto
    {1/2, 1}, then everything in [0, 1/2] and everything in [1, inf) each
    collapses to a single point, so the result has at most two distinct
    positions: one in B (or at 1/2) and one in D.
    """
    beta = model.check_beta(beta)
    sc_left, sc_right = model.social_costs(e)
    if model.expected_winner(e, beta) != LEFT or not sc_right < sc_left:
        return CanonicalForm(e, applied=False, steps=(), certificates=())

    certifier = (
        (lambda a, b: certify_winner_displacement(a, b, beta)) if certify else None
    )
    chain = _Chain(e, certifier)

    for i, x in enumerate(chain.current.positions):
        if x < 0.0:
            chain.apply("A_to_zero", {i: 0.0})

    c_voters = [i for i, x in enumerate(chain.current.positions) if 0.5 < x < 1.0]
    c_voters.sort(key=lambda i: -chain.current.positions[i])
    b_voters = [i for i, x in enumerate(chain.current.positions) if 0.0 <= x < 0.5]
    b_voters.sort(key=lambda i: chain.current.positions[i])
    if c_voters and not b_voters:
        # Unreachable when left leads on expected votes: an interior-C voter
        # gives the right candidate positive expected votes, so the left
        # candidate needs a B voter to lead at all.
        raise ValueError("no B voter available to pair against region C")
    for k, j in enumerate(c_voters):
        i = b_voters[k % len(b_voters)]
        xi = chain.current.positions[i]
        xj = chain.current.positions[j]
        if xi <= 1.0 - xj:
            chain.apply("BC_pair", {i: xi + xj - 0.5, j: 0.5})
        else:
            chain.apply("BC_pair", {i: xi - 1.0 + xj, j: 1.0})

    midpoint = lambda a, b: 0.5 * (a + b)
    chain.collapse(lambda x: 0.0 <= x <= 0.5, "same_region_merge", midpoint)
    chain.collapse(lambda x: x >= 1.0, "same_region_merge", midpoint)
    return chain.finish(e)


def canonicalize_expected_distortion(
    e: LineElection,
    beta: float,
    certify: bool = True,
    exact_limit: int = 512,
    mc: Optional[montecarlo.McConfig] = None,
) -> CanonicalForm:
    """Empty region A, drain C where valid, fuse D; never lowering D-bar.

    Applies when the right candidate is strictly optimal and strictly the
    expected winner; anything else passes through with ``applied=False``.
    A voters cross to their participation-preserving B images.  Interior-C
    voters cross to their D images only while their cost ratio
    ``x / (1 - x)`` is at least the left candidate's current distortion;
    crossing below that bar would lower the expected distortion (see
    :func:`map_c_to_d`), so such voters stay put.  Every applied move raises
    the bar, hence processing C in ascending position moves a maximal set
    and no second pass could move more.  Finally the D mass contracts
    pairwise to a single point.

    On return, region A and the movable part of C are empty, D holds at most
    one distinct position, and any interior-C voter left behind sits strictly
    below the final bar.  Voters exactly at 1/2 always stay put: they never
    vote and no crossing is defined for them.
    """
    beta = model.check_beta(beta)
    sc_left, sc_right = model.social_costs(e)
    if model.expected_winner(e, beta) != RIGHT or not sc_right < sc_left:
        return CanonicalForm(e, applied=False, steps=(), certificates=())

    certifier = (
        (lambda a, b: certify_expected_displacement(a, b, beta, exact_limit, mc))
        if certify
        else None
    )
    chain = _Chain(e, certifier)

    for i, x in enumerate(chain.current.positions):
        if x < 0.0:
            chain.apply("A_to_B_map", {i: -x / (1.0 - 2.0 * x)})

    c_voters = [j for j, x in enumerate(chain.current.positions) if 0.5 < x < 1.0]
    c_voters.sort(key=lambda j: chain.current.positions[j])
    for j in c_voters:
        x = chain.current.positions[j]
        sc_left, sc_right = model.social_costs(chain.current)
        bar = math.inf if sc_right == 0.0 else sc_left / sc_right
        if x / (1.0 - x) >= bar:
            chain.apply("C_to_D_map", {j: x / (2.0 * x - 1.0)})

    def geometric(a: float, b: float) -> float:
        return 0.5 * (math.sqrt((2.0 * a - 1.0) * (2.0 * b - 1.0)) + 1.0)

    chain.collapse(lambda x: x >= 1.0, "D_geometric_merge", geometric)
    return chain.finish(e)
