import json
import subprocess
import sys

import pytest

from grover_optics.cli import main

SMALL_GRID = {"grid_samples": 4096, "grid_pitch_um": 2.0}


def write_config(tmp_path, name="config.json", **entries):
    path = tmp_path / name
    path.write_text(json.dumps(entries))
    return path


def small_search_config(tmp_path, **extra):
    return write_config(
        tmp_path, preset="paper-42um", n_pulses=8, **SMALL_GRID, **extra
    )


def read_summary(out_dir):
    return json.loads((out_dir / "summary.json").read_text())


class TestRunCommand:
    def test_search_run_writes_all_outputs(self, tmp_path):
        cfg = small_search_config(tmp_path)
        out = tmp_path / "out"
        assert main(["run", "--config", str(cfg), "--out", str(out)]) == 0
        assert (out / "profiles.csv").exists()
        assert (out / "peaks.csv").exists()
        summary = read_summary(out)
        assert summary["mode"] == "search"
        assert summary["expected_nm"] == pytest.approx(1.33e-3 / 42e-6, rel=1e-6)
        header = (out / "peaks.csv").read_text().splitlines()[0]
        assert header == "iteration_count,peak_position_m,peak_value"
        n_rows = len((out / "peaks.csv").read_text().splitlines())
        assert n_rows == 1 + 8

    def test_profiles_table_layout(self, tmp_path):
        cfg = write_config(
            tmp_path, preset="paper-42um", n_pulses=2, **SMALL_GRID
        )
        out = tmp_path / "out"
        assert main(["run", "--config", str(cfg), "--out", str(out)]) == 0
        lines = (out / "profiles.csv").read_text().splitlines()
        assert lines[0] == "iteration_count,x_m,intensity,compensated_intensity"
        assert len(lines) == 1 + 2 * 4096
        first = lines[1].split(",")
        assert float(first[0]) == 0.5
        assert float(first[1]) == pytest.approx(-4096e-6)

    def test_runs_are_byte_deterministic(self, tmp_path):
        cfg = small_search_config(tmp_path)
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        assert main(["run", "--config", str(cfg), "--out", str(out_a)]) == 0
        assert main(["run", "--config", str(cfg), "--out", str(out_b)]) == 0
        for name in ("profiles.csv", "peaks.csv", "summary.json"):
            assert (out_a / name).read_bytes() == (out_b / name).read_bytes()

    def test_compensation_flag_changes_peak_values(self, tmp_path):
        cfg = small_search_config(tmp_path)
        out_on, out_off = tmp_path / "on", tmp_path / "off"
        assert main(
            ["run", "--config", str(cfg), "--out", str(out_on),
             "--compensate-loss", "true"]
        ) == 0
        assert main(
            ["run", "--config", str(cfg), "--out", str(out_off),
             "--compensate-loss", "false"]
        ) == 0
        peaks_on = (out_on / "peaks.csv").read_text()
        peaks_off = (out_off / "peaks.csv").read_text()
        assert peaks_on != peaks_off
        assert read_summary(out_off)["config"]["compensate_loss"] is False

    def test_preset_flag_without_config_file(self, tmp_path):
        out = tmp_path / "out"
        # full default grid; analyze mode skips the bulky profile table
        cfg = write_config(tmp_path, mode="analyze")
        assert main(
            ["run", "--config", str(cfg), "--preset", "paper-126um",
             "--out", str(out)]
        ) == 0
        summary = read_summary(out)
        assert summary["config"]["oracle"]["flat_width_um"] == 126.0
        assert not (out / "profiles.csv").exists()


class TestErrorPaths:
    def test_malformed_json_exits_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"n_pulses": ')
        assert main(["run", "--config", str(bad)]) == 2

    def test_invalid_field_exits_2(self, tmp_path):
        cfg = write_config(tmp_path, wavelength_nm=-5.0)
        assert main(["run", "--config", str(cfg)]) == 2

    def test_unknown_preset_flag_exits_2(self, capsys):
        assert main(["run", "--preset", "paper-999um"]) == 2
        capsys.readouterr()  # swallow argparse usage text

    def test_missing_config_file_exits_4(self, tmp_path):
        assert main(["run", "--config", str(tmp_path / "absent.json")]) == 4

    def test_missing_subcommand_exits_2(self, capsys):
        assert main([]) == 2
        capsys.readouterr()


class TestPulseTrainCommand:
    def test_subcommand_forces_mode_and_writes_train(self, tmp_path):
        cfg = write_config(
            tmp_path,
            oracle={"flat_width_um": 42.0, "ramp_width_um": 4.0,
                    "center_um": 150.0, "phase_rad": 0.0},
            iaa={"flat_width_um": 136.0, "ramp_width_um": 8.0,
                 "phase_rad": 0.0},
            n_pulses=6,
            **SMALL_GRID,
        )
        out = tmp_path / "out"
        assert main(["pulse-train", "--config", str(cfg), "--out", str(out)]) == 0
        summary = read_summary(out)
        assert summary["mode"] == "pulse-train"
        # zero-depth plates leave a bare lossy cavity
        for ratio in summary["consecutive_energy_ratios"]:
            assert ratio == pytest.approx(0.75, rel=1e-6)
        lines = (out / "train.csv").read_text().splitlines()
        assert lines[0] == "iteration_count,slit_energy"
        assert len(lines) == 1 + 6


class TestReferenceCommand:
    def test_four_item_search_summary(self, tmp_path):
        cfg = write_config(
            tmp_path,
            reference={"n_items": 4, "n_marked": 1, "n_iterations": 3},
        )
        out = tmp_path / "out"
        assert main(["reference", "--config", str(cfg), "--out", str(out)]) == 0
        summary = read_summary(out)
        assert summary["mode"] == "reference"
        assert summary["max_success_probability"] == pytest.approx(1.0)
        assert summary["argmax_iteration"] == 1
        lines = (out / "reference.csv").read_text().splitlines()
        assert lines[0] == "iteration,success_probability,ideal_closed_form"
        assert len(lines) == 1 + 4


class TestSweepCommand:
    def sweep_config(self, tmp_path, **extra):
        return write_config(
            tmp_path,
            preset="paper-42um",
            n_pulses=8,
            sweep=[{"parameter": "oracle.flat_width_um",
                    "values": [42.0, 84.0, 126.0]}],
            **SMALL_GRID,
            **extra,
        )

    def test_sweep_table_and_point_dirs(self, tmp_path):
        cfg = self.sweep_config(tmp_path)
        out = tmp_path / "out"
        assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
        lines = (out / "sweep.csv").read_text().splitlines()
        assert lines[0] == (
            "point,oracle.flat_width_um,first_maximum,estimate_nm,expected_nm"
        )
        assert len(lines) == 4
        middle = lines[2].split(",")
        assert middle[0] == "1"
        assert float(middle[1]) == 84.0
        assert float(middle[4]) == pytest.approx(1.33e-3 / 84e-6, rel=1e-6)
        for index in range(3):
            assert (out / f"point_{index:03d}" / "summary.json").exists()
        aggregate = json.loads((out / "sweep_summary.json").read_text())
        assert aggregate["n_points"] == 3

    def test_parallel_sweep_is_deterministic(self, tmp_path):
        cfg = self.sweep_config(tmp_path)
        serial, parallel = tmp_path / "serial", tmp_path / "parallel"
        assert main(["sweep", "--config", str(cfg), "--out", str(serial)]) == 0
        assert main(
            ["sweep", "--config", str(cfg), "--out", str(parallel),
             "--workers", "3"]
        ) == 0
        assert (serial / "sweep.csv").read_bytes() == (parallel / "sweep.csv").read_bytes()

    def test_unknown_sweep_parameter_exits_2(self, tmp_path):
        cfg = write_config(
            tmp_path,
            preset="paper-42um",
            sweep=[{"parameter": "oracle.width_um", "values": [1.0]}],
            **SMALL_GRID,
        )
        assert main(["sweep", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 2

    def test_sweep_without_axes_is_a_single_run(self, tmp_path):
        cfg = small_search_config(tmp_path)
        out = tmp_path / "out"
        assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
        assert (out / "summary.json").exists()
        assert not (out / "sweep.csv").exists()


def test_module_entry_point_smoke(tmp_path):
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps({"preset": "paper-42um", "mode": "analyze"}))
    out = tmp_path / "out"
    result = subprocess.run(
        [sys.executable, "-m", "grover_optics", "run",
         "--config", str(cfg), "--out", str(out)],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert result.returncode == 0
    assert "first maximum" in result.stdout
    assert (out / "summary.json").exists()
