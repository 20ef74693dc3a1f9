"""Command-line interface.

Every command reads election files in the JSON schema of
:mod:`votedist.documents`, writes deterministic text (CSV by default) to
stdout or ``--out``, and exits 0 on success, 1 on a validation error, 2 on a
certified property failure.  Randomized commands require an explicit
``--seed``; there is no wall-clock default.
"""

from __future__ import annotations

import sys

import click

from . import displace, documents, exact, metric, model, montecarlo, verification, worstcase
from .documents import DocumentError, ElectionDocument

EXIT_VALIDATION = 1
EXIT_PROPERTY = 2

_REPORT_FIELDS = (
    "sc_left",
    "sc_right",
    "optimal",
    "dist_left",
    "dist_right",
    "expected_votes_left",
    "expected_votes_right",
    "expected_winner",
    "win_prob_left",
    "win_prob_right",
    "expected_distortion",
)


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _emit(text: str, out) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _report_lines(report, fmt: str) -> str:
    values = [getattr(report, f) for f in _REPORT_FIELDS]
    if fmt == "csv":
        return ",".join(_REPORT_FIELDS) + "\n" + ",".join(_fmt(v) for v in values) + "\n"
    width = max(len(f) for f in _REPORT_FIELDS)
    return "".join(f"{f:<{width}}  {_fmt(v)}\n" for f, v in zip(_REPORT_FIELDS, values))


def _load(path: str) -> ElectionDocument:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as err:
        raise DocumentError(f"cannot read {path}: {err}") from None
    return documents.parse_election(text)


def _fail_validation(err: Exception) -> None:
    click.echo(f"error: {err}", err=True)
    sys.exit(EXIT_VALIDATION)


format_option = click.option(
    "--format", "fmt", type=click.Choice(["csv", "report"]), default="csv",
    show_default=True, help="Output style.",
)
out_option = click.option(
    "--out", type=click.Path(dir_okay=False, writable=True), default=None,
    help="Write output to this path instead of stdout.",
)
beta_option = click.option(
    "--beta", type=float, default=None,
    help="Override the document's participation parameter.",
)


@click.group()
def main() -> None:
    """Distortion of two-candidate elections with distance-based abstention."""


@main.command("eval")
@click.argument("election_file", type=click.Path(exists=True, dir_okay=False))
@beta_option
@format_option
@out_option
def cmd_eval(election_file, beta, fmt, out) -> None:
    """Exact evaluation: costs, distortions, win probabilities."""
    try:
        doc = _load(election_file)
        b = doc.beta if beta is None else model.check_beta(beta)
        if doc.kind == "line":
            report = exact.expected_distortion(doc.to_line(), b)
        else:
            report = metric.metric_report(doc.to_metric(), b)
    except (DocumentError, ValueError) as err:
        _fail_validation(err)
    _emit(_report_lines(report, fmt), out)


@main.command("simulate")
@click.argument("election_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--samples", type=int, required=True, help="Number of simulated outcomes.")
@click.option("--seed", type=int, required=True, help="Generator seed.")
@click.option("--confidence", type=float, default=0.95, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@beta_option
@format_option
@out_option
def cmd_simulate(election_file, samples, seed, confidence, workers, beta, fmt, out) -> None:
    """Estimate win probability and expected distortion by sampling."""
    try:
        doc = _load(election_file)
        if doc.kind != "line":
            raise DocumentError("simulate supports line elections only")
        b = doc.beta if beta is None else model.check_beta(beta)
        cfg = montecarlo.McConfig(samples, seed, confidence, workers)
        est = montecarlo.simulate(doc.to_line(), b, cfg)
    except (DocumentError, ValueError) as err:
        _fail_validation(err)
    fields = ("p_left_hat", "half_width_p", "expected_distortion_hat", "half_width_d")
    values = [getattr(est, f) for f in fields]
    if fmt == "csv":
        text = ",".join(fields) + "\n" + ",".join(_fmt(v) for v in values) + "\n"
    else:
        width = max(len(f) for f in fields)
        text = "".join(f"{f:<{width}}  {_fmt(v)}\n" for f, v in zip(fields, values))
    _emit(text, out)


@main.command("reduce")
@click.argument("election_file", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--mode", type=click.Choice(["auto", "winner", "distortion"]), default="auto",
    show_default=True,
    help="Which canonical form to target; auto picks from the configuration.",
)
@beta_option
@out_option
def cmd_reduce(election_file, mode, beta, out) -> None:
    """Canonicalize a line election through certified displacements."""
    try:
        doc = _load(election_file)
        if doc.kind != "line":
            raise DocumentError("reduce supports line elections only")
        b = doc.beta if beta is None else model.check_beta(beta)
        e = doc.to_line()
        if mode == "auto":
            mode = (
                "winner"
                if model.expected_winner(e, b) == model.LEFT
                else "distortion"
            )
    except (DocumentError, ValueError) as err:
        _fail_validation(err)
    try:
        if mode == "winner":
            form = displace.canonicalize_expected_winner(e, b)
        else:
            form = displace.canonicalize_expected_distortion(e, b)
    except displace.CertificateError as err:
        click.echo(f"certificate failure: {err}", err=True)
        sys.exit(EXIT_PROPERTY)
    meta = dict(doc.metadata)
    meta.update(
        {
            "reduced": mode,
            "applied": str(form.applied).lower(),
            "steps": str(len(form.steps)),
        }
    )
    _emit(
        documents.serialize_election(ElectionDocument.for_line(form.election, b, meta)),
        out,
    )


@main.command("metric-reduce")
@click.argument("election_file", type=click.Path(exists=True, dir_okay=False))
@beta_option
@out_option
def cmd_metric_reduce(election_file, beta, out) -> None:
    """Reduce a metric election to an equivalent-or-worse line election."""
    try:
        doc = _load(election_file)
        if doc.kind != "metric":
            raise DocumentError("metric-reduce supports metric elections only")
        b = doc.beta if beta is None else model.check_beta(beta)
        reduction = metric.reduce_to_line(doc.to_metric(), b)
    except (DocumentError, ValueError) as err:
        _fail_validation(err)
    meta = dict(doc.metadata)
    meta["swapped"] = str(reduction.swapped).lower()
    _emit(
        documents.serialize_election(
            ElectionDocument.for_line(reduction.election, b, meta)
        ),
        out,
    )


@main.command("worstcase")
@click.option("--beta", type=float, required=True)
@click.option("--grid", type=int, default=128, show_default=True)
@click.option(
    "--epsilon", type=float, default=0.0, show_default=True,
    help="Require the expected-vote lead to exceed a factor 1 + epsilon.",
)
@format_option
@out_option
def cmd_worstcase(beta, grid, epsilon, fmt, out) -> None:
    """Worst-case distortion of the expected winner at one beta."""
    try:
        solution = worstcase.solve_worst_case_margin(
            model.check_beta(beta), epsilon, grid
        )
    except ValueError as err:
        _fail_validation(err)
    if fmt == "csv":
        text = worstcase.sweep_csv([solution])
    else:
        text = (
            f"beta      {_fmt(solution.beta)}\n"
            f"dstar     {_fmt(solution.value)}\n"
            f"q_b       {_fmt(solution.q_b)}\n"
            f"x_b       {_fmt(solution.x_b)}\n"
            f"x_d       {_fmt(solution.x_d)}\n"
            f"attained  {str(solution.attained).lower()}\n"
        )
    _emit(text, out)


@main.command("sweep")
@click.option("--start", type=float, default=0.0, show_default=True)
@click.option("--stop", type=float, default=1.0, show_default=True)
@click.option("--count", type=int, default=101, show_default=True)
@click.option("--grid", type=int, default=128, show_default=True)
@out_option
def cmd_sweep(start, stop, count, grid, out) -> None:
    """CSV of the worst-case distortion curve over a range of beta."""
    try:
        model.check_beta(start)
        model.check_beta(stop)
        if count < 2 or stop <= start:
            raise ValueError("need count >= 2 and stop > start")
        betas = [start + (stop - start) * k / (count - 1) for k in range(count)]
        rows = worstcase.sweep_beta(betas, grid)
    except ValueError as err:
        _fail_validation(err)
    _emit(worstcase.sweep_csv(rows), out)


@main.command("curve")
@click.option(
    "--beta", "betas", type=float, multiple=True,
    default=(0.0, 0.25, 0.5, 0.75, 1.0), show_default=True,
    help="Repeatable; one curve per value.",
)
@click.option("--zmin", type=float, default=-1.0, show_default=True)
@click.option("--zmax", type=float, default=2.0, show_default=True)
@click.option("--points", type=int, default=301, show_default=True)
@out_option
def cmd_curve(betas, zmin, zmax, points, out) -> None:
    """CSV of the participation probability along the line, per beta."""
    try:
        betas = [model.check_beta(b) for b in betas]
        if points < 2 or zmax <= zmin:
            raise ValueError("need points >= 2 and zmax > zmin")
    except ValueError as err:
        _fail_validation(err)
    lines = ["z,beta,probability"]
    for b in betas:
        for k in range(points):
            z = zmin + (zmax - zmin) * k / (points - 1)
            lines.append(f"{z:.12g},{b:.12g},{model.profile(z, b).participation:.12g}")
    _emit("\n".join(lines) + "\n", out)


@main.command("verify")
@click.option("--seed", type=int, required=True, help="Seed for all random draws.")
@click.option("--trials", type=int, default=200, show_default=True,
              help="Random elections per displacement suite.")
@click.option("--alpha", type=float, default=0.1, show_default=True)
@click.option("--beta", type=float, default=1.0, show_default=True)
@click.option("--bound-count", type=int, default=25, show_default=True,
              help="Gate elections for the expected-distortion bound audit.")
@click.option("--samples", type=int, default=100_000, show_default=True,
              help="Simulation samples per bound check.")
def cmd_verify(seed, trials, alpha, beta, bound_count, samples) -> None:
    """Re-run the certified randomized audits; nonzero exit on any failure."""
    try:
        model.check_beta(beta)
        results = verification.displacement_suites(trials, seed)
        results += verification.canonicalization_suites(max(1, trials // 4), seed + 1)
        results.append(
            verification.bound_suite(alpha, beta, bound_count, samples, seed + 2)
        )
    except ValueError as err:
        _fail_validation(err)
    failed = False
    for r in results:
        status = "ok" if r.ok else "FAIL"
        note = f" {r.note}" if r.note else ""
        click.echo(f"{status:4} {r.name}: {r.trials - r.failures}/{r.trials}{note}")
        failed = failed or not r.ok
    if failed:
        sys.exit(EXIT_PROPERTY)


if __name__ == "__main__":
    main()
