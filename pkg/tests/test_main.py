"""Tests for the command line entry point."""

import os

import pytest

from main import build_parser, main

TINY = """
[scenario]
name = tiny
horizon = 31

[jammer]
jnr_min_db = 10
jnr_max_db = 10

[reward]
kind = raw-ser

[algorithm]
holder_l = 1

[run]
seeds = 0-1

[victim.1]
schemes = bpsk
snr_db = 20
n_symbols = 500
"""


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "tiny.ini"
    path.write_text(TINY)
    return str(path)


class TestParser:

    def test_requires_command(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_rejects_unknown_preset(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["sweep", "--preset", "nope"])

    @pytest.mark.parametrize("name", ["fig3", "fig13", "static-bpsk"])
    def test_accepts_figure_and_descriptive_presets(self, name):
        assert build_parser().parse_args(["sweep", "--preset", name]).preset == name


class TestCommands:
    """Exit codes and console output."""

    def test_run_writes_outputs(self, config_path, tmp_path, capsys):
        out = str(tmp_path / "out")
        assert main(["run", "--config", config_path, "--out", out, "--quiet"]) == 0
        assert os.path.exists(os.path.join(out, "summary.json"))
        assert os.path.exists(os.path.join(out, "seed_1", "trace.csv"))
        output = capsys.readouterr().out
        assert "=== Jamming Bandits ===" in output
        assert "tiny (jb-ucb1)" in output

    def test_run_single_seed(self, config_path, tmp_path):
        out = str(tmp_path / "out")
        assert main(["run", "--config", config_path, "--out", out, "--seed", "5", "--quiet"]) == 0
        assert os.listdir(out) and os.path.exists(os.path.join(out, "seed_5"))
        assert not os.path.exists(os.path.join(out, "seed_0"))

    def test_report(self, config_path, tmp_path, capsys):
        out = str(tmp_path / "out")
        main(["run", "--config", config_path, "--out", out, "--quiet"])
        capsys.readouterr()
        assert main(["report", "--out", str(tmp_path)]) == 0
        assert "Latest summary" in capsys.readouterr().out

    def test_report_without_summary(self, tmp_path, capsys):
        assert main(["report", "--out", str(tmp_path)]) == 1
        assert "No summary found" in capsys.readouterr().out

    def test_oracle(self, config_path, capsys):
        assert main(["oracle", "--config", config_path, "--grid-m", "10", "--top", "3"]) == 0
        output = capsys.readouterr().out
        assert "Grid oracle, M=10 (30 arms)" in output
        assert "  3. " in output

    def test_bounds(self, config_path, capsys):
        assert main(["bounds", "--config", config_path, "--round", "1024", "--per", "0.5",
                     "--packets", "10"]) == 0
        output = capsys.readouterr().out
        assert "Bounds at T=1024, M=5" in output
        assert "Budget: 20 packets" in output

    def test_bounds_needs_both_plan_values(self, config_path, capsys):
        assert main(["bounds", "--config", config_path, "--per", "0.5"]) == 1
        assert "--packets" in capsys.readouterr().out

    def test_infeasible_plan(self, config_path):
        assert main(["bounds", "--config", config_path, "--per", "0", "--packets", "10"]) == 1

    def test_invalid_config(self, tmp_path, capsys):
        path = tmp_path / "bad.ini"
        path.write_text(TINY.replace("kind = raw-ser", "kind = bogus").replace("horizon = 31", "horizon = x"))
        assert main(["run", "--config", str(path), "--quiet"]) == 1
        output = capsys.readouterr().out
        assert "invalid configuration" in output
        assert output.count("  - ") == 2

    def test_missing_config(self, tmp_path):
        assert main(["oracle", "--config", str(tmp_path / "missing.ini")]) == 2
