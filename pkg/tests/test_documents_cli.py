import json

import pytest
from click.testing import CliRunner

from votedist.cli import main
from votedist.documents import (
    DocumentError,
    ElectionDocument,
    parse_election,
    serialize_election,
)

from conftest import two_block_election

MINIMAL_LINE = """
{
  "schema": 1,
  "kind": "line",
  "beta": 1.0,
  "voters": [1.5]
}
"""


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestParsing:
    def test_minimal_line_document(self):
        doc = parse_election(MINIMAL_LINE)
        assert doc == ElectionDocument("line", 1.0, (1.5,))
        assert doc.to_line().positions == (1.5,)

    def test_two_block_fixture(self):
        e = two_block_election(0.01)
        doc = ElectionDocument.for_line(e, 0.0, {"title": "two blocks"})
        parsed = parse_election(serialize_election(doc))
        assert len(parsed.voters) == 100
        assert parsed.beta == 0.0

    def test_triangle_violation_named(self):
        text = json.dumps(
            {"schema": 1, "kind": "metric", "beta": 1.0, "voters": [[0.2, 0.3]]}
        )
        with pytest.raises(DocumentError, match="triangle"):
            parse_election(text)

    @pytest.mark.parametrize("beta", [-0.2, 1.5])
    def test_beta_out_of_range(self, beta):
        text = json.dumps({"schema": 1, "kind": "line", "beta": beta, "voters": [1.0]})
        with pytest.raises(DocumentError, match="beta"):
            parse_election(text)

    def test_syntax_error_reports_location(self):
        with pytest.raises(DocumentError, match="line 1"):
            parse_election("{nope}")

    def test_unknown_field_rejected(self):
        text = json.dumps(
            {"schema": 1, "kind": "line", "beta": 1.0, "voters": [1.0], "extra": 3}
        )
        with pytest.raises(DocumentError, match="extra"):
            parse_election(text)

    def test_missing_field_rejected(self):
        with pytest.raises(DocumentError, match="voters"):
            parse_election(json.dumps({"schema": 1, "kind": "line", "beta": 1.0}))

    def test_wrong_schema_version(self):
        text = json.dumps({"schema": 2, "kind": "line", "beta": 1.0, "voters": [1.0]})
        with pytest.raises(DocumentError, match="schema"):
            parse_election(text)

    def test_bad_metric_pair_shape(self):
        text = json.dumps(
            {"schema": 1, "kind": "metric", "beta": 1.0, "voters": [[1.0]]}
        )
        with pytest.raises(DocumentError, match=r"voters\[0\]"):
            parse_election(text)

    def test_metadata_must_be_strings(self):
        text = json.dumps(
            {
                "schema": 1,
                "kind": "line",
                "beta": 1.0,
                "voters": [1.0],
                "metadata": {"n": 3},
            }
        )
        with pytest.raises(DocumentError, match="metadata"):
            parse_election(text)

    @pytest.mark.parametrize(
        "doc",
        [
            ElectionDocument("line", 0.25, (0.0, -1.5, 2.25), {"a": "b"}),
            ElectionDocument("metric", 1.0, ((0.5, 0.5), (3.0, 1.0))),
        ],
    )
    def test_round_trip(self, doc):
        assert parse_election(serialize_election(doc)) == doc


class TestCli:
    def setup_method(self):
        self.runner = CliRunner()

    def test_eval_single_voter(self, tmp_path):
        path = write(tmp_path, "e.json", MINIMAL_LINE)
        result = self.runner.invoke(main, ["eval", path])
        assert result.exit_code == 0
        header, row = result.output.strip().split("\n")
        values = dict(zip(header.split(","), row.split(",")))
        assert values["expected_distortion"] == "1.5"
        assert values["win_prob_left"] == "0.25"

    def test_eval_metric_document(self, tmp_path):
        doc = json.dumps(
            {"schema": 1, "kind": "metric", "beta": 1.0, "voters": [[1.0, 1.0]]}
        )
        path = write(tmp_path, "m.json", doc)
        result = self.runner.invoke(main, ["eval", path, "--format", "report"])
        assert result.exit_code == 0
        assert "expected_distortion" in result.output

    def test_eval_rejects_invalid_document(self, tmp_path):
        path = write(tmp_path, "bad.json", "{broken")
        result = self.runner.invoke(main, ["eval", path])
        assert result.exit_code == 1

    def test_repeat_invocations_are_byte_identical(self, tmp_path):
        path = write(tmp_path, "e.json", MINIMAL_LINE)
        args = ["simulate", path, "--samples", "2000", "--seed", "9"]
        first = self.runner.invoke(main, args)
        second = self.runner.invoke(main, args)
        assert first.exit_code == second.exit_code == 0
        assert first.output == second.output

    def test_simulate_requires_seed(self, tmp_path):
        path = write(tmp_path, "e.json", MINIMAL_LINE)
        result = self.runner.invoke(main, ["simulate", path, "--samples", "10"])
        assert result.exit_code != 0

    def test_worstcase_row(self):
        result = self.runner.invoke(main, ["worstcase", "--beta", "1", "--grid", "64"])
        assert result.exit_code == 0
        header, row = result.output.strip().split("\n")
        assert header == "beta,dstar,q_b,x_b,x_d,attained"
        assert abs(float(row.split(",")[1]) - 1.5224) < 1e-3

    def test_worstcase_margin_flag_shaves_value(self):
        base = self.runner.invoke(main, ["worstcase", "--beta", "1", "--grid", "64"])
        squeezed = self.runner.invoke(
            main, ["worstcase", "--beta", "1", "--grid", "64", "--epsilon", "0.05"]
        )
        assert squeezed.exit_code == 0
        value = float(base.output.strip().split("\n")[1].split(",")[1])
        value_eps = float(squeezed.output.strip().split("\n")[1].split(",")[1])
        assert value_eps < value

    def test_sweep_endpoints(self):
        result = self.runner.invoke(
            main, ["sweep", "--count", "2", "--grid", "64"]
        )
        assert result.exit_code == 0
        lines = result.output.strip().split("\n")
        assert float(lines[1].split(",")[1]) >= 2.99
        assert abs(float(lines[2].split(",")[1]) - 1.5224) < 1e-3

    def test_curve_midpoint_never_votes(self):
        result = self.runner.invoke(
            main,
            ["curve", "--beta", "0.5", "--beta", "1", "--zmin", "0", "--zmax", "1",
             "--points", "3"],
        )
        assert result.exit_code == 0
        rows = [line.split(",") for line in result.output.strip().split("\n")[1:]]
        mid = [r for r in rows if r[0] == "0.5"]
        assert len(mid) == 2
        assert all(r[2] == "0" for r in mid)

    def test_reduce_auto_mode(self, tmp_path):
        doc = json.dumps(
            {"schema": 1, "kind": "line", "beta": 1.0,
             "voters": [-0.5, 0.1, 0.1, 0.8, 2.0, 2.4]}
        )
        path = write(tmp_path, "e.json", doc)
        result = self.runner.invoke(main, ["reduce", path])
        assert result.exit_code == 0
        reduced = parse_election(result.output)
        assert reduced.metadata["applied"] in ("true", "false")
        assert reduced.metadata["reduced"] in ("winner", "distortion")

    def test_reduce_writes_file(self, tmp_path):
        path = write(tmp_path, "e.json", MINIMAL_LINE)
        out = tmp_path / "reduced.json"
        result = self.runner.invoke(main, ["reduce", path, "--out", str(out)])
        assert result.exit_code == 0
        assert parse_election(out.read_text()).kind == "line"

    def test_metric_reduce_round_trips(self, tmp_path):
        doc = json.dumps(
            {"schema": 1, "kind": "metric", "beta": 1.0,
             "voters": [[0.4, 0.8], [1.5, 0.6], [2.0, 1.2]]}
        )
        path = write(tmp_path, "m.json", doc)
        result = self.runner.invoke(main, ["metric-reduce", path])
        assert result.exit_code == 0
        reduced = parse_election(result.output)
        assert reduced.kind == "line"
        assert reduced.metadata["swapped"] in ("true", "false")

    def test_metric_reduce_rejects_line_document(self, tmp_path):
        path = write(tmp_path, "e.json", MINIMAL_LINE)
        result = self.runner.invoke(main, ["metric-reduce", path])
        assert result.exit_code == 1

    def test_verify_small_run_passes(self):
        result = self.runner.invoke(
            main,
            ["verify", "--seed", "3", "--trials", "25", "--bound-count", "2",
             "--samples", "20000"],
        )
        assert result.exit_code == 0, result.output
        assert "FAIL" not in result.output

    def test_verify_reports_failure_with_exit_two(self, monkeypatch):
        from votedist import verification

        def broken(trials, seed):
            return [verification.SuiteResult("A_to_zero", trials, 1)]

        monkeypatch.setattr(verification, "displacement_suites", broken)
        monkeypatch.setattr(
            verification, "canonicalization_suites", lambda trials, seed: []
        )
        monkeypatch.setattr(
            verification,
            "bound_suite",
            lambda *a, **k: verification.SuiteResult("expected_distortion_bound", 1, 0),
        )
        result = self.runner.invoke(main, ["verify", "--seed", "1"])
        assert result.exit_code == 2
        assert "FAIL" in result.output
