import json

import pytest

from cavity_grover.cli import (
    EXIT_ASSERTION,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    OUTPUT_DIR_ENV,
    RunConfig,
    UsageError,
    main,
    parse_config,
)


class TestParseConfig:
    def test_defaults(self):
        config = parse_config(["figure3"])
        assert config.command == "figure3"
        assert config.n_atoms == 8
        assert config.epsilon == 0.05
        assert config.sweep_n == (2, 8, 32, 128, 512, 2048)

    def test_flags_override_defaults(self):
        config = parse_config(["simulate", "--n", "4", "--epsilon", "0.1",
                               "--level", "collective5", "--initial", "marked"])
        assert config.n_atoms == 4
        assert config.epsilon == 0.1
        assert config.level == "collective5"
        assert config.initial == "marked"

    def test_config_file_then_flags(self, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"command": "design", "n_atoms": 16,
                                   "epsilon": 0.1}))
        config = parse_config(["--config", str(cfg), "design", "--epsilon", "0.02"])
        assert config.n_atoms == 16       # from the file
        assert config.epsilon == 0.02     # flag wins

    def test_command_from_config_file(self, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"command": "design"}))
        assert parse_config(["--config", str(cfg)]).command == "design"

    def test_unknown_config_key_rejected(self, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"command": "design", "bogus": 1}))
        with pytest.raises(UsageError, match="bogus"):
            parse_config(["--config", str(cfg)])

    def test_missing_config_file_is_io_error(self):
        with pytest.raises(OSError):
            parse_config(["--config", "/nonexistent/run.json", "design"])

    def test_no_command_rejected(self):
        with pytest.raises(UsageError, match="no command"):
            parse_config([])

    def test_sweep_list_parsing(self):
        config = parse_config(["sweep", "--n-list", "2,8,32"])
        assert config.sweep_n == (2, 8, 32)
        with pytest.raises(UsageError):
            parse_config(["sweep", "--n-list", "2,eight"])

    def test_validation_messages(self):
        with pytest.raises(UsageError, match="epsilon"):
            parse_config(["design", "--epsilon", "0.5"])
        with pytest.raises(UsageError, match="n_atoms"):
            parse_config(["design", "--n", "1"])
        with pytest.raises(UsageError, match="cutoff_c"):
            parse_config(["design", "--cutoff-c", "2"])

    def test_runconfig_rejects_unknown_command(self):
        with pytest.raises(UsageError):
            RunConfig(command="optimize")

    def test_out_dir_env_fallback(self, monkeypatch, tmp_path):
        monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path / "envout"))
        config = parse_config(["figure3"])
        assert config.out_dir == tmp_path / "envout"
        config = parse_config(["figure3", "--out", str(tmp_path / "flagout")])
        assert config.out_dir == tmp_path / "flagout"


class TestMainExitCodes:
    def test_usage_error_exits_2(self, capsys):
        assert main(["design", "--epsilon", "0.5"]) == EXIT_USAGE
        assert "epsilon" in capsys.readouterr().err

    def test_missing_config_exits_3(self, capsys):
        assert main(["--config", "/nonexistent/run.json", "design"]) == EXIT_IO
        assert "cannot read" in capsys.readouterr().err

    def test_design_writes_schedule(self, tmp_path, capsys):
        code = main(["design", "--n", "4", "--epsilon", "0.1",
                     "--n-samples", "500", "--out", str(tmp_path),
                     "--format", "structured"])
        assert code == EXIT_OK
        assert (tmp_path / "schedule.dat").exists()
        assert (tmp_path / "config.echo.json").exists()
        summary = json.loads((tmp_path / "design_summary.json").read_text())
        assert summary["omega_bar_duration"] == pytest.approx(3**0.5 / 0.1)

    def test_figure3_run(self, tmp_path, capsys):
        code = main(["figure3", "--out", str(tmp_path)])
        assert code == EXIT_OK
        for name in ("schedule.dat", "trajectory.dat", "summary.json",
                     "config.echo.json"):
            assert (tmp_path / name).exists()
        assert "final marked population 0.99" in capsys.readouterr().out

    def test_figure3_reruns_are_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(["figure3", "--n-samples", "500", "--steps", "1000",
                     "--out", str(a)]) == EXIT_OK
        assert main(["figure3", "--n-samples", "500", "--steps", "1000",
                     "--out", str(b)]) == EXIT_OK
        for name in ("schedule.dat", "trajectory.dat", "summary.json"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_sweep_passing_list(self, tmp_path, capsys):
        code = main(["sweep", "--n-list", "8,512,2048", "--n-samples", "500",
                     "--steps", "2000", "--out", str(tmp_path)])
        assert code == EXIT_OK
        assert (tmp_path / "scaling.dat").exists()
        assert (tmp_path / "scaling.json").exists()
        assert "log-log slope 0.5" in capsys.readouterr().out

    def test_sweep_fidelity_assertion_exits_1(self, tmp_path, capsys):
        # N=32 lands near the worst case of the leak-interference oscillation
        code = main(["sweep", "--n-list", "8,32", "--n-samples", "500",
                     "--steps", "2000", "--out", str(tmp_path)])
        assert code == EXIT_ASSERTION
        assert "fidelity below" in capsys.readouterr().err

    def test_simulate_marked_without_second_pulse_is_frozen(self, tmp_path, capsys):
        code = main(["simulate", "--n", "4", "--epsilon", "0.1",
                     "--initial", "marked", "--omega-prime-off",
                     "--n-samples", "500", "--steps", "1000",
                     "--out", str(tmp_path)])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "final marked population 1.000000" in out

    def test_simulate_full_level(self, tmp_path, capsys):
        code = main(["simulate", "--n", "2", "--epsilon", "0.1",
                     "--level", "full", "--g", "5.0",
                     "--n-samples", "500", "--steps", "2000",
                     "--out", str(tmp_path)])
        assert code == EXIT_OK
        assert (tmp_path / "trajectory.dat").exists()

    def test_compare_small_system(self, tmp_path, capsys):
        code = main(["compare", "--n", "2", "--epsilon", "0.1",
                     "--n-samples", "500", "--out", str(tmp_path)])
        assert code == EXIT_OK
        payload = json.loads((tmp_path / "compare.json").read_text())
        assert payload["full_vs_collective"] <= 1e-8
