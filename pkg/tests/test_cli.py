"""Unit tests for the batch command-line front end."""

import json
import math

import numpy as np
import pytest

from phasesym.cli import PRESETS, main

EVOLVE_MF_TOML = """
[model]
kind = "two-species-cavity"
g = 0.1
eta = 0.12
phi = 0.0

[initial_state]
kind = "preset"
name = "plus-x-product"

[numerics]
t_final = 50.0
sample_count = 256
"""

SPECTRUM_TOML = """
[model]
kind = "spin-only"
g = 0.1
eta = 0.1
N = 2
"""

WEIGHTS_TOML = """
[weights]
N = 4
phi_values = {start = 0.0, stop = 3.141592653589793, count = 9}
"""


def _write(tmp_path, text, name="run.toml"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_evolve_mf_writes_artifacts(tmp_path):
    cfg = _write(tmp_path, EVOLVE_MF_TOML)
    out = tmp_path / "out"
    assert main(["evolve-mf", "--config", cfg, "--out", str(out)]) == 0
    csv_path = out / "trajectory.csv"
    meta_path = out / "meta.json"
    assert csv_path.exists() and meta_path.exists()
    header = csv_path.read_text().splitlines()[0].split(",")
    assert header[0] == "time"
    assert "sAz" in header
    meta = json.loads(meta_path.read_text())
    assert meta["command"] == "evolve-mf"
    assert "units" in meta and "created" in meta
    assert meta["artifacts"] == ["trajectory.csv"]


def test_rerun_is_byte_identical(tmp_path):
    cfg = _write(tmp_path, EVOLVE_MF_TOML)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["evolve-mf", "--config", cfg, "--out", str(out1)]) == 0
    assert main(["evolve-mf", "--config", cfg, "--out", str(out2)]) == 0
    assert (out1 / "trajectory.csv").read_bytes() == (out2 / "trajectory.csv").read_bytes()


def test_spectrum_command(tmp_path):
    cfg = _write(tmp_path, SPECTRUM_TOML)
    out = tmp_path / "spec"
    assert main(["spectrum", "--config", cfg, "--out", str(out)]) == 0
    lines = (out / "spectrum.csv").read_text().splitlines()
    assert lines[0].split(",") == ["index", "eigenvalue_re", "eigenvalue_im"]
    # 4x4 Hilbert space -> 16 Liouvillian eigenvalues
    assert len(lines) == 17


def test_weights_command(tmp_path):
    cfg = _write(tmp_path, WEIGHTS_TOML)
    out = tmp_path / "w"
    assert main(["weights", "--config", cfg, "--out", str(out)]) == 0
    rows = (out / "sweep.csv").read_text().splitlines()
    header = rows[0].split(",")
    assert "w_max" in header and "phi" in header
    first = dict(zip(header, rows[1].split(",")))
    assert abs(float(first["w_max"]) - 1.0) < 1e-9  # phi = 0 keeps full weight


def test_unknown_key_rejected_without_artifacts(tmp_path):
    bad = EVOLVE_MF_TOML + "\n[bogus]\nx = 1\n"
    cfg = _write(tmp_path, bad)
    out = tmp_path / "bad"
    assert main(["evolve-mf", "--config", cfg, "--out", str(out)]) == 2
    assert not out.exists()


def test_unknown_model_key_rejected(tmp_path):
    cfg = _write(tmp_path, SPECTRUM_TOML.replace('N = 2', 'N = 2\nnot_a_knob = 3'))
    assert main(["spectrum", "--config", cfg, "--out", str(tmp_path / "x")]) == 2


def test_missing_config_is_config_error(tmp_path):
    assert main(["spectrum", "--config", str(tmp_path / "nope.toml")]) == 2
    assert main(["spectrum"]) == 2


def test_preset_command_mismatch(tmp_path):
    assert main(["evolve-mf", "--preset", "figS4", "--out", str(tmp_path / "x")]) == 2


def test_preset_registry_well_formed():
    for name, preset in PRESETS.items():
        assert "command" in preset, name
        assert preset["command"] in ("evolve-mf", "evolve-lindblad", "spectrum", "weights", "sweep")


def test_dark_preset_populations_frozen(tmp_path):
    out = tmp_path / "dark"
    assert main(["evolve-lindblad", "--preset", "dark", "--out", str(out)]) == 0
    rows = (out / "trajectory.csv").read_text().splitlines()
    header = rows[0].split(",")
    idx = header.index("N_0")
    values = np.array([float(r.split(",")[idx]) for r in rows[1:]])
    assert np.max(np.abs(values - values[0])) < 1e-8


def test_output_root_env(tmp_path, monkeypatch):
    monkeypatch.setenv("PHASESYM_OUTPUT_ROOT", str(tmp_path / "rooted"))
    cfg = _write(tmp_path, SPECTRUM_TOML)
    assert main(["spectrum", "--config", cfg]) == 0
    assert (tmp_path / "rooted" / "spectrum.csv").exists()


def test_sweep_gap_scaling_small(tmp_path):
    toml = """
[model]
g = 0.1
eta = 0.025

[sweep]
kind = "gap-scaling"
N_values = [1, 2]
delta = %.17g
""" % (0.2 * math.pi)
    cfg = _write(tmp_path, toml)
    out = tmp_path / "gap"
    assert main(["sweep", "--config", cfg, "--out", str(out)]) == 0
    rows = (out / "sweep.csv").read_text().splitlines()
    header = rows[0].split(",")
    gap_idx = header.index("min_re_gap")
    gaps = [float(r.split(",")[gap_idx]) for r in rows[1:]]
    assert gaps[1] < gaps[0]
