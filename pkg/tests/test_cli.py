import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from conftest import scripted_session_lines
from waydirector.cli import main

PAPER_LANDMARK = ("Turn right in the corridor at the sofa. "
                  "Follow the corridor and turn right at the TV.")
PAPER_SKELETAL = "Go right in the corridor. Follow the hallway and turn right."


@pytest.fixture()
def runner():
    return CliRunner()


class TestRouteCommand:
    def test_paper_landmark_default(self, runner):
        result = runner.invoke(main, ["route", "--to", "room 4"])
        assert result.exit_code == 0
        assert result.output == PAPER_LANDMARK + "\n"

    def test_paper_skeletal(self, runner):
        result = runner.invoke(main, ["route", "--to", "room 4", "--style", "skeletal"])
        assert result.exit_code == 0
        assert result.output == PAPER_SKELETAL + "\n"

    def test_json_output(self, runner):
        result = runner.invoke(main, ["route", "--to", "room 4", "--json"])
        assert result.exit_code == 0
        body = json.loads(result.output)
        assert body["sentences"] == [s + "." for s in PAPER_LANDMARK[:-1].split(". ")]
        assert body["route"][0] == "reception" and body["route"][-1] == "room4"
        assert body["segments"][0]["kind"] == "decision"

    def test_arrival_flag(self, runner):
        result = runner.invoke(main, ["route", "--to", "room 4", "--arrival"])
        assert result.exit_code == 0
        assert result.output.startswith(PAPER_LANDMARK[:-1])
        assert len(result.output.strip()) > len(PAPER_LANDMARK)

    def test_unknown_room_fails(self, runner):
        result = runner.invoke(main, ["route", "--to", "room 99"])
        assert result.exit_code != 0

    def test_destination_equals_start(self, runner):
        result = runner.invoke(main, ["route", "--to", "reception"])
        assert result.exit_code == 0
        assert "already there" in result.output


class TestVerifyCommand:
    def test_single_destination(self, runner):
        result = runner.invoke(main, ["verify", "--to", "room 4", "--seeds", "5"])
        assert result.exit_code == 0
        assert "all round trips ok" in result.output

    def test_full_sweep(self, runner):
        result = runner.invoke(main, ["verify", "--all", "--seeds", "3"])
        assert result.exit_code == 0
        assert result.output.count(" ok") >= 22  # 11 rooms x 2 styles

    def test_invalid_map_rejected(self, runner, tmp_path):
        bad = tmp_path / "bad.map"
        bad.write_text("map b\nstart a\nnode a kind=room\nnode b kind=room room=1\n")
        result = runner.invoke(main, ["verify", "--all", "--map", str(bad)])
        assert result.exit_code != 0
        assert "UNREACHABLE" in result.output


class TestReplCommand:
    def test_scripted_session(self, runner, tmp_path):
        out_dir = tmp_path / "sessions"
        result = runner.invoke(
            main,
            ["repl", "--participant", "P07", "--order-seed", "3",
             "--out", str(out_dir)],
            input="\n".join(scripted_session_lines()) + "\n",
        )
        assert result.exit_code == 0, result.output
        data = json.loads((out_dir / "P07.json").read_text())
        assert data["complete"] is True
        assert len(data["nars"]) == 14

    def test_aborted_session_exits_nonzero(self, runner, tmp_path):
        result = runner.invoke(
            main,
            ["repl", "--participant", "P08", "--out", str(tmp_path)],
            input="3\n3\nquit\n",
        )
        assert result.exit_code == 1
        assert json.loads((tmp_path / "P08.json").read_text())["complete"] is False


class TestAnalyzeCommand:
    @pytest.fixture()
    def session_dir(self, tmp_path, office_map, templates):
        from test_dialogue import run_scripted

        out = tmp_path / "sessions"
        for index, pid in enumerate(("P01", "P02", "P03")):
            lines = scripted_session_lines(likert=str(2 + index % 3))
            run_scripted(office_map, templates, lines, participant=pid,
                         order_seed=index, out_dir=out)
        return out

    def test_report_written(self, runner, session_dir, tmp_path):
        report_path = tmp_path / "report.json"
        result = runner.invoke(main, [
            "analyze", "--sessions", str(session_dir), "--out", str(report_path),
        ])
        assert result.exit_code == 0, result.output
        report = json.loads(report_path.read_text())
        assert report["n"] == 3
        assert len(report["measures"]) == 8

    def test_markdown_table(self, runner, session_dir):
        result = runner.invoke(main, [
            "analyze", "--sessions", str(session_dir), "--markdown",
        ])
        assert result.exit_code == 0
        assert "| NARS Score |" in result.output

    def test_incomplete_records_skipped_with_notice(self, runner, session_dir,
                                                    office_map, templates):
        from test_dialogue import run_scripted
        run_scripted(office_map, templates, ["3"] * 4, participant="P99",
                     out_dir=session_dir)
        result = runner.invoke(main, [
            "analyze", "--sessions", str(session_dir), "--markdown",
        ])
        assert result.exit_code == 0
        assert "P99" in result.output


class TestServeCommand:
    def test_help(self, runner):
        result = runner.invoke(main, ["serve", "--help"])
        assert result.exit_code == 0
        assert "--port" in result.output

    def test_version(self, runner):
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0
