"""
Tests for the command-line front and its exit codes
"""

import json

import pytest

from ptampc.cli import build_parser, main
from tests.conftest import LINE2, LINE3


def _path(states):
    return ",".join(states)


class TestValidate:
    def test_bundled_fixture(self, capsys):
        assert main(["validate", "paintshop"]) == 0
        out = capsys.readouterr().out
        assert "paintshop: valid" in out
        assert "26 states" in out

    def test_missing_document(self, capsys):
        assert main(["validate", "no-such-layout"]) == 3
        assert "FixtureNotFoundError" in capsys.readouterr().err

    def test_malformed_json(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text('{"states": [', encoding="utf-8")
        assert main(["validate", str(path)]) == 3
        assert "ParseError" in capsys.readouterr().err

    def test_unknown_field(self, tmp_path, capsys):
        path = tmp_path / "extra.json"
        path.write_text(json.dumps({
            "states": [{"id": "a"}, {"id": "b"}],
            "edges": [{"src": "a", "dst": "b"}],
            "initial": "a",
            "desired_sequence": ["b"],
            "owner": "x",
        }), encoding="utf-8")
        assert main(["validate", str(path)]) == 4
        assert "owner" in capsys.readouterr().err

    def test_invalid_layout(self, tmp_path, capsys):
        path = tmp_path / "invalid.json"
        path.write_text(json.dumps({
            "states": [{"id": "a"}, {"id": "b"}],
            "edges": [{"src": "a", "dst": "b"}],
            "initial": "a",
            "desired_sequence": ["z"],
        }), encoding="utf-8")
        assert main(["validate", str(path)]) == 5
        assert "violations" in capsys.readouterr().out


class TestAnalyze:
    def test_json_output(self, capsys):
        assert main(["analyze", "paintshop", "--path", _path(LINE3), "--json"]) == 0
        record = json.loads(capsys.readouterr().out)
        assert record["kappa"] == "2/7"
        assert record["length"] == 7

    def test_illegal_path(self, capsys):
        assert main(["analyze", "paintshop", "--path", "q1,q8"]) == 1
        assert "IllegalPathError" in capsys.readouterr().err


class TestPlan:
    def test_plain_takes_the_cheapest_line(self, capsys):
        assert main(["plan", "paintshop", "--controller", "plain"]) == 0
        assert f"Path:       {_path(LINE2)}" in capsys.readouterr().out

    def test_unsat_exit_code(self, capsys):
        code = main(["plan", "paintshop", "--start", "q9", "--fail", "q10", "--controller", "plain"])
        assert code == 2
        assert capsys.readouterr().out.startswith("UNSAT")

    def test_rejects_bad_beta(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["plan", "paintshop", "--beta", "abc"])

    def test_negative_beta_is_an_objective_error(self, capsys):
        assert main(["plan", "paintshop", "--controller", "pcm", "--beta", "-1"]) == 1
        err = capsys.readouterr().err
        assert "InvalidObjectiveError" in err
        assert "Traceback" not in err


class TestScenarios:
    @pytest.mark.parametrize("scenario", ["scenario1", "scenario2"])
    def test_csv_is_byte_identical_across_invocations(self, scenario, capsys):
        outputs = []
        for _ in range(5):
            assert main(["compare", scenario, "--format", "csv"]) == 0
            outputs.append(capsys.readouterr().out)
        assert outputs[0]
        assert all(output == outputs[0] for output in outputs)

    def test_negative_beta_override(self, capsys):
        assert main(["compare", "scenario1", "--beta", "-1"]) == 1
        captured = capsys.readouterr()
        assert "InvalidObjectiveError" in captured.err
        assert captured.out == ""

    def test_compare_csv(self, capsys):
        assert main(["compare", "scenario2", "--format", "csv"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "tick,controller,current,action,planned_V,fired_failures"
        assert lines[-1] == "7,pcm,q13,finished:q8,18,"

    def test_compare_writes_output_file(self, tmp_path, capsys):
        output = tmp_path / "scenario1.txt"
        assert main(["compare", "scenario1", "--output", str(output)]) == 0
        assert capsys.readouterr().out == ""
        assert output.read_text(encoding="utf-8").rstrip().endswith("Winner: pcm")

    def test_simulate_without_a_finisher(self, tmp_path, capsys):
        path = tmp_path / "plain_only.json"
        path.write_text(json.dumps({
            "name": "plain_only",
            "fixture": "paintshop",
            "controllers": ["plain"],
            "failures": [{"target": "q10", "when": {"type": "after_exit", "state": "q1"}}],
        }), encoding="utf-8")
        assert main(["simulate", str(path)]) == 2
        assert "Winner: none" in capsys.readouterr().out


class TestCalibrate:
    def test_unreachable_target(self, capsys):
        assert main(["calibrate", "paintshop", "--path", _path(LINE3), "--target", "5/32"]) == 0
        assert "No convention reproduces the target value" in capsys.readouterr().out

    def test_reference_match(self, capsys):
        assert main(["calibrate", "paintshop", "--path", _path(LINE3), "--target", "2/7"]) == 0
        assert "<= match" in capsys.readouterr().out
