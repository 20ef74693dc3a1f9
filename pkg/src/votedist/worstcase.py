"""Worst-case distortion of the expected winner, swept over beta.

Any election maximizing the expected winner's distortion can be assumed to
hold all voters at two points: ``q_b`` (as a fraction of the electorate) at
``x_b`` in region B and the rest at ``x_d`` in region D, with the left
candidate still leading on expected votes:

    maximize (q_b x_b + (1 - q_b) x_d) / (q_b (1 - x_b) + (1 - q_b)(x_d - 1))
    subject to (1 - 2 x_b)^beta q_b >= (1 - q_b) / (2 x_d - 1)^beta

Past the feasibility boundary the objective only falls as ``x_d`` grows (the
ratio exceeds 1, and pushing equal mass into numerator and denominator drags
it toward 1), so ``x_d`` is eliminated analytically at the binding value and
the remaining 2-D box is searched by a refined grid.

At ``beta = 0`` the constraint degenerates to ``q_b >= 1/2`` and the value 3
is only approached (voters exactly at the midpoint never vote sincerely, so
``x_b = 1/2`` is not realizable); the solver reports the finest searched
point with ``attained=False``.

The module also provides the expected-vote threshold above which the
expected distortion of a large election stays within a ``(1 + 2 alpha)``
factor of the worst case, and a checker that audits that bound on concrete
elections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import exact, model, montecarlo
from .model import LineElection

__all__ = [
    "WorstCaseSolution",
    "VoteMoments",
    "BoundCheck",
    "two_point_distortion",
    "binding_xd",
    "solve_worst_case",
    "solve_worst_case_margin",
    "vote_count_threshold",
    "vote_moments",
    "sweep_beta",
    "sweep_csv",
    "witness_election",
    "generate_gate_elections",
    "verify_distortion_bound",
]

#: Refinement stops once both box spans fall below this.
REFINE_TOL = 1e-6

#: How close the beta = 0 search may approach the unattainable x_b = 1/2 edge.
_EDGE_GAP = 1e-6

_GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class WorstCaseSolution:
    """Maximizer of the two-point program at one beta.

    ``attained=False`` marks a supremum approached on an open boundary and
    reported at the finest grid point rather than extrapolated.
    """

    beta: float
    q_b: float
    x_b: float
    x_d: float
    value: float
    attained: bool


@dataclass(frozen=True)
class VoteMoments:
    """Mean and variance of each candidate's vote count."""

    mean_left: float
    mean_right: float
    var_left: float
    var_right: float


def two_point_distortion(q_b: float, x_b: float, x_d: float) -> float:
    """Left candidate's distortion when mass q_b sits at x_b and 1 - q_b at x_d.

    The electorate is normalized to total mass 1.
    """
    if not 0.0 <= q_b <= 1.0:
        raise ValueError(f"q_b must lie in [0, 1], got {q_b}")
    if not 0.0 <= x_b <= 0.5:
        raise ValueError(f"x_b must lie in [0, 1/2], got {x_b}")
    if x_d < 1.0:
        raise ValueError(f"x_d must be >= 1, got {x_d}")
    num = q_b * x_b + (1.0 - q_b) * x_d
    den = q_b * (1.0 - x_b) + (1.0 - q_b) * (x_d - 1.0)
    if den <= 0.0:
        raise ValueError("two-point election has zero social cost for the right candidate")
    return num / den


def binding_xd(q_b: float, x_b: float, beta: float, margin: float = 0.0) -> float:
    """Smallest x_d at which the left candidate still leads on expected votes.

    Solving the vote-lead constraint for ``x_d`` at equality gives
    ``(1 + ((1 - q_b) / ((1 - 2 x_b)^beta q_b))^(1/beta)) / 2``, clamped up to
    1 where the constraint is already slack there.  Returns ``inf`` at
    ``x_b = 1/2`` with ``q_b < 1``: midpoint voters never vote, so no finite
    ``x_d`` restores the lead.  ``margin`` strengthens the required lead to a
    factor ``1 + margin``.
    """
    beta = model.check_beta(beta)
    if beta == 0.0:
        raise ValueError("at beta = 0 the vote-lead constraint does not involve x_d")
    if not 0.0 < q_b <= 1.0:
        raise ValueError(f"q_b must lie in (0, 1], got {q_b}")
    if not 0.0 <= x_b <= 0.5:
        raise ValueError(f"x_b must lie in [0, 1/2], got {x_b}")
    if q_b == 1.0:
        return 1.0
    left_rate = (1.0 - 2.0 * x_b) ** beta * q_b
    if left_rate == 0.0:
        return math.inf
    base = (1.0 + margin) * (1.0 - q_b) / left_rate
    try:
        xd = 0.5 * (1.0 + base ** (1.0 / beta))
    except OverflowError:
        return math.inf
    return max(1.0, xd)


def _positive_beta_values(q, x_b, beta, margin):
    """Vectorized objective over a (q, x_b) grid with x_d eliminated."""
    qq, xx = np.meshgrid(q, x_b, indexing="ij")
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        base = (1.0 + margin) * (1.0 - qq) / ((1.0 - 2.0 * xx) ** beta * qq)
        xd = np.maximum(1.0, 0.5 * (1.0 + base ** (1.0 / beta)))
        num = qq * xx + (1.0 - qq) * xd
        den = qq * (1.0 - xx) + (1.0 - qq) * (xd - 1.0)
        vals = num / den
    vals = np.where(np.isfinite(xd) & np.isfinite(vals) & (den > 0), vals, -np.inf)
    return vals, xd


def _zero_beta_values(q, x_b):
    """At beta = 0 everyone with a strict preference votes and x_d = 1."""
    qq, xx = np.meshgrid(q, x_b, indexing="ij")
    num = qq * xx + (1.0 - qq)
    den = qq * (1.0 - xx)
    vals = np.where(den > 0, num / den, -np.inf)
    return vals, np.ones_like(vals)


def _grid_max(values_fn, q_box, x_box, grid):
    """Shrinking grid search; returns (value, q, x_b, x_d)."""
    q_lo, q_hi = q_box
    x_lo, x_hi = x_box
    best = None
    for _ in range(200):
        q = np.linspace(q_lo, q_hi, grid)
        x = np.linspace(x_lo, x_hi, grid)
        vals, xd = values_fn(q, x)
        i, j = np.unravel_index(np.argmax(vals), vals.shape)
        best = (float(vals[i, j]), float(q[i]), float(x[j]), float(xd[i, j]))
        dq = (q_hi - q_lo) / (grid - 1)
        dx = (x_hi - x_lo) / (grid - 1)
        if max(dq, dx) <= REFINE_TOL:
            break
        q_lo = max(q_box[0], q[i] - 2.0 * dq)
        q_hi = min(q_box[1], q[i] + 2.0 * dq)
        x_lo = max(x_box[0], x[j] - 2.0 * dx)
        x_hi = min(x_box[1], x[j] + 2.0 * dx)
    return best


def solve_worst_case_margin(
    beta: float, epsilon: float, grid: int = 128
) -> WorstCaseSolution:
    """Worst case subject to a strengthened expected-vote lead.

    The left candidate must lead the right's expected votes by a factor of at
    least ``1 + epsilon``.  ``epsilon = 0`` recovers :func:`solve_worst_case`.
    """
    beta = model.check_beta(beta)
    if epsilon < 0.0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    if grid < 64:
        raise ValueError(f"grid must provide at least 64 points per axis, got {grid}")

    if beta == 0.0:
        q_min = (1.0 + epsilon) / (2.0 + epsilon)
        value, q_b, x_b, x_d = _grid_max(
            _zero_beta_values, (q_min, 1.0), (0.0, 0.5 - _EDGE_GAP), grid
        )
        return WorstCaseSolution(beta, q_b, x_b, x_d, value, attained=False)

    value, q_b, x_b, x_d = _grid_max(
        lambda q, x: _positive_beta_values(q, x, beta, epsilon),
        (1e-9, 1.0),
        (0.0, 0.5),
        grid,
    )
    return WorstCaseSolution(beta, q_b, x_b, x_d, value, attained=True)


def solve_worst_case(beta: float, grid: int = 128) -> WorstCaseSolution:
    """Maximum distortion of the expected winner at this beta."""
    return solve_worst_case_margin(beta, 0.0, grid)


def sweep_beta(betas: Sequence[float], grid: int = 128) -> list[WorstCaseSolution]:
    """One worst-case solution per beta, in the given order."""
    return [solve_worst_case(b, grid) for b in betas]


def sweep_csv(solutions: Sequence[WorstCaseSolution]) -> str:
    """Render solutions as CSV with the stable schema and 12 significant digits."""
    lines = ["beta,dstar,q_b,x_b,x_d,attained"]
    for s in solutions:
        lines.append(
            f"{s.beta:.12g},{s.value:.12g},{s.q_b:.12g},{s.x_b:.12g},"
            f"{s.x_d:.12g},{str(s.attained).lower()}"
        )
    return "\n".join(lines) + "\n"


def witness_election(solution: WorstCaseSolution, total: int = 400) -> LineElection:
    """Concrete two-point election realizing (approximately) a solution.

    Rounds ``q_b * total`` up until the left candidate genuinely leads on
    expected votes, so the witness is always in the configuration the solver
    models.
    """
    m_b = math.ceil(solution.q_b * total)
    while m_b <= total:
        e = LineElection([solution.x_b] * m_b + [solution.x_d] * (total - m_b))
        if model.expected_winner(e, solution.beta) == model.LEFT:
            return e
        m_b += 1
    raise ValueError("no rounding of the witness keeps the left candidate leading")


def vote_count_threshold(alpha: float) -> float:
    """Expected votes per candidate needed for the (1 + 2 alpha) guarantee.

    Evaluates ``(alpha + 1)^3 / (alpha^2 (alpha - sqrt(alpha + 1))^2)``.
    Undefined at ``alpha = (1 + sqrt(5)) / 2`` where the second denominator
    factor vanishes.
    """
    if alpha <= 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    gap = alpha - math.sqrt(alpha + 1.0)
    if gap == 0.0:
        raise ValueError(f"threshold undefined at alpha = {_GOLDEN} (division by zero)")
    return (alpha + 1.0) ** 3 / (alpha**2 * gap**2)


def vote_moments(e: LineElection, beta: float) -> VoteMoments:
    """Bernoulli-sum mean and variance of each candidate's vote count."""
    beta = model.check_beta(beta)
    mean = {model.LEFT: 0.0, model.RIGHT: 0.0}
    var = {model.LEFT: 0.0, model.RIGHT: 0.0}
    for x in e.positions:
        prof = model.profile(x, beta)
        if prof.preferred == model.INDIFFERENT:
            continue
        mean[prof.preferred] += prof.participation
        var[prof.preferred] += prof.participation * (1.0 - prof.participation)
    return VoteMoments(
        mean_left=mean[model.LEFT],
        mean_right=mean[model.RIGHT],
        var_left=var[model.LEFT],
        var_right=var[model.RIGHT],
    )


@dataclass(frozen=True)
class BoundCheck:
    """Outcome of auditing the expected-distortion bound on one election.

    ``status`` is ``pass``, ``fail``, ``indeterminate`` (the confidence
    interval straddles the bound) or ``skipped`` (a precondition failed,
    named in ``reason``).  ``slack`` is bound minus the upper end of the
    expected-distortion interval; negative only for ``fail``.
    """

    status: str
    method: Optional[str]
    dbar_low: Optional[float]
    dbar_high: Optional[float]
    bound: float
    slack: Optional[float]
    reason: Optional[str] = None


def verify_distortion_bound(
    alpha: float,
    beta: float,
    elections: Sequence[LineElection],
    dstar: Optional[float] = None,
    exact_limit: int = 15,
    mc_samples: int = 100_000,
    seed: int = 0,
    confidence: float = 0.999,
) -> list[BoundCheck]:
    """Check expected distortion <= (1 + 2 alpha) * worst case, per election.

    Elections whose expected vote counts fall below
    :func:`vote_count_threshold` or whose optimal candidate is not the right
    one are reported as skipped, not failed.  Small elections are evaluated
    exactly; larger ones by simulation, with the verdict read off the
    confidence interval.
    """
    beta = model.check_beta(beta)
    threshold = vote_count_threshold(alpha)
    if dstar is None:
        dstar = solve_worst_case(beta).value
    bound = (1.0 + 2.0 * alpha) * dstar

    checks = []
    for k, e in enumerate(elections):
        moments = vote_moments(e, beta)
        if min(moments.mean_left, moments.mean_right) < threshold:
            checks.append(
                BoundCheck(
                    "skipped", None, None, None, bound, None,
                    reason=f"expected votes below threshold {threshold:.6g}",
                )
            )
            continue
        sc_left, sc_right = model.social_costs(e)
        if sc_right > sc_left:
            checks.append(
                BoundCheck(
                    "skipped", None, None, None, bound, None,
                    reason="right candidate is not optimal",
                )
            )
            continue
        if len(e) <= exact_limit:
            dbar = exact.expected_distortion(e, beta).expected_distortion
            low = high = dbar
            method = "exact"
        else:
            cfg = montecarlo.McConfig(
                samples=mc_samples, seed=seed + k, confidence=confidence
            )
            est = montecarlo.simulate(e, beta, cfg)
            low = est.expected_distortion_hat - est.half_width_d
            high = est.expected_distortion_hat + est.half_width_d
            method = "montecarlo"
        if high <= bound + 1e-12:
            status = "pass"
        elif low > bound:
            status = "fail"
        else:
            status = "indeterminate"
        checks.append(BoundCheck(status, method, low, high, bound, bound - high))
    return checks


def generate_gate_elections(
    alpha: float,
    beta: float,
    count: int,
    seed: int,
    max_attempts: int = 10_000,
) -> list[LineElection]:
    """Random elections clearing the vote-count gate, right candidate optimal.

    Each election is a small cloud of B sites plus one D site, with
    multiplicities scaled so both expected vote counts exceed
    :func:`vote_count_threshold` and the right candidate is strictly optimal.
    Distinct positions are kept few so simulation can draw votes per site.
    """
    beta = model.check_beta(beta)
    threshold = vote_count_threshold(alpha)
    rng = np.random.default_rng(seed)
    out: list[LineElection] = []
    for _ in range(max_attempts):
        if len(out) == count:
            break
        n_sites = int(rng.integers(2, 7))
        sites = rng.uniform(0.0, 0.45, size=n_sites)
        weights = rng.dirichlet(np.ones(n_sites))
        x_d = float(rng.uniform(1.2, 2.5))
        margin = float(rng.uniform(1.05, 1.5))

        p_b = (1.0 - 2.0 * sites) ** beta
        mean_p_b = float(np.dot(weights, p_b))
        m_b_total = math.ceil(threshold * margin / mean_p_b)
        m_b = np.maximum(1, np.rint(weights * m_b_total).astype(int))

        p_d = (2.0 * x_d - 1.0) ** (-beta)
        lead = float(np.dot(m_b, 1.0 - 2.0 * sites))
        m_d = max(
            math.ceil(threshold * margin / p_d),
            math.ceil(lead * float(rng.uniform(1.05, 2.0))),
        )

        positions = np.concatenate([np.repeat(sites, m_b), np.full(m_d, x_d)])
        e = LineElection(positions)
        moments = vote_moments(e, beta)
        sc_left, sc_right = model.social_costs(e)
        if (
            min(moments.mean_left, moments.mean_right) >= threshold
            and sc_right < sc_left
        ):
            out.append(e)
    if len(out) < count:
        raise RuntimeError(
            f"generated only {len(out)} of {count} elections in {max_attempts} tries"
        )
    return out
