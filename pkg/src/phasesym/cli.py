"""Batch front end: parse a TOML run config, dispatch to the evolve /
spectrum / weights / sweep operations, and write CSV + JSON artifacts.

Config files use nested TOML tables ([model], [initial_state], [numerics],
[output], [sweep], [weights]) with a strict schema: unknown tables or keys
are rejected. Exit status: 0 on success, 2 on validation errors (no
artifacts written), 3 on numerical failure (diagnostics in meta.json).

CSV bodies are deterministic: identical configs produce byte-identical
files; timestamps live only in meta.json. Complex quantities are split
into `_re`/`_im` columns.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
from scipy.linalg import expm

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import __version__
from .analysis import SweepResult, sweep as run_sweep
from .lindblad import SpectrumResult, Trajectory, evolve_density_matrix, spectrum
from .meanfield import (
    MeanFieldState2S,
    mf_evolve,
    three_level_initial_expectations,
)
from .models import MODEL_KINDS, LindbladModel, ModelParams, build_model

__all__ = ["main", "run", "PRESETS", "ConfigError", "OUTPUT_ROOT_ENV"]

OUTPUT_ROOT_ENV = "PHASESYM_OUTPUT_ROOT"

COMMANDS = ("evolve-mf", "evolve-lindblad", "spectrum", "weights", "sweep")

FLOAT_FMT = "%.17g"

# units of every config quantity, emitted into meta.json for provenance
UNITS = {
    "g": "kappa",
    "eta": "kappa (eta_values in sweeps: units of g)",
    "kappa": "kappa (fixed scale, 1.0)",
    "delta_c": "kappa",
    "delta_A": "kappa",
    "delta_B": "kappa",
    "phi": "radians",
    "t_final": "1/kappa",
    "gt_window": "g*t (dimensionless)",
    "time": "1/kappa",
    "omega_tilde": "g",
    "eigenvalues": "kappa",
}


class ConfigError(ValueError):
    """Raised for any schema or value problem in a run config (exit 2)."""


# ---------------------------------------------------------------------------
# schema


_MODEL_KEYS = {
    "kind", "spin_basis", "g", "phi", "eta", "kappa", "delta_c",
    "delta_A", "delta_B", "N", "N_A", "N_B", "n_max", "include_lamb_shift",
}
_INITIAL_KEYS = {"kind", "name", "alpha_re", "alpha_im", "sA", "sB",
                 "c_plus", "c_minus", "phi_state"}
_NUMERICS_KEYS = {"integrator", "rtol", "atol", "step", "t_final",
                  "gt_window", "sample_count"}
_OUTPUT_KEYS = {"directory"}
_WEIGHTS_KEYS = {"phi_values", "N"}
_TOP_KEYS = {"model", "initial_state", "numerics", "output", "sweep", "weights"}


def _check_keys(table: dict, allowed: set, where: str) -> None:
    unknown = set(table) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in [{where}]: {sorted(unknown)}")


def _resolve_grid(value, where: str) -> list[float]:
    """A grid is either an explicit list or {start, stop, count}."""
    if isinstance(value, dict):
        _check_keys(value, {"start", "stop", "count"}, where)
        try:
            return np.linspace(float(value["start"]), float(value["stop"]),
                               int(value["count"])).tolist()
        except KeyError as exc:
            raise ConfigError(f"grid {where} missing key {exc}") from None
    if isinstance(value, list):
        return [float(v) for v in value]
    raise ConfigError(f"grid {where} must be a list or a start/stop/count table")


def _model_params(table: dict) -> ModelParams:
    _check_keys(table, _MODEL_KEYS, "model")
    kwargs = {k: v for k, v in table.items() if k not in ("kind", "spin_basis")}
    if float(kwargs.get("kappa", 1.0)) <= 0:
        raise ConfigError(f"kappa must be positive, got {kwargs.get('kappa')}")
    if float(kwargs.get("g", 0.1)) < 0 or float(kwargs.get("eta", 0.0)) < 0:
        raise ConfigError("g and eta must be non-negative")
    try:
        return ModelParams(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid [model] parameters: {exc}") from exc


def _model_kind(table: dict) -> tuple[str, str]:
    kind = table.get("kind")
    if kind not in MODEL_KINDS:
        raise ConfigError(f"[model] kind must be one of {MODEL_KINDS}, got {kind!r}")
    spin_basis = table.get("spin_basis", "collective")
    if spin_basis not in ("collective", "full"):
        raise ConfigError(f"[model] spin_basis must be 'collective' or 'full', got {spin_basis!r}")
    return kind, spin_basis


# ---------------------------------------------------------------------------
# initial states


def _three_level_ket(c_plus: float, c_minus: float, phi_state: float) -> np.ndarray:
    """Single-atom ket c+|+> + c-|-> + c0|0> in the (|A>, |0>, |B>) basis."""
    c0_sq = 1.0 - c_plus**2 - c_minus**2
    if c0_sq < -1e-12:
        raise ConfigError(f"c_plus^2 + c_minus^2 = {c_plus**2 + c_minus**2:g} exceeds 1")
    c0 = math.sqrt(max(c0_sq, 0.0))
    ket0 = np.array([0, 1, 0], dtype=complex)
    ketp = np.array([np.exp(-1j * phi_state), 0, 1], dtype=complex) / np.sqrt(2)
    ketm = np.array([-np.exp(-1j * phi_state), 0, 1], dtype=complex) / np.sqrt(2)
    return c_plus * ketp + c_minus * ketm + c0 * ket0


def _tensor_ket(single: np.ndarray, n: int) -> np.ndarray:
    out = single
    for _ in range(n - 1):
        out = np.kron(out, single)
    return out


def _coherent_spin_ket(dim: int, direction: str) -> np.ndarray:
    """Collective-spin ket: '+x' rotates the top Sz state by pi/2, 'down' is m=-S."""
    from .operators import spin_matrices

    j = (dim - 1) / 2
    mats = spin_matrices(j)
    mz = np.diag(mats["Jz"]).real
    if direction == "down":
        ket = np.zeros(dim, dtype=complex)
        ket[int(np.argmin(mz))] = 1.0
        return ket
    top = np.zeros(dim, dtype=complex)
    top[int(np.argmax(mz))] = 1.0
    return expm(-1j * (np.pi / 2) * mats["Jy"]) @ top


def _atomic_ket(model: LindbladModel, table: dict) -> np.ndarray:
    """Pure atomic ket for the Lindblad initial state (cavity factor added later)."""
    space = model.space.atomic
    kind = table.get("kind")
    if kind == "amplitudes":
        if not space.kind.startswith("three-level"):
            raise ConfigError("initial_state kind 'amplitudes' needs a three-level model")
        single = _three_level_ket(float(table["c_plus"]), float(table["c_minus"]),
                                  float(table.get("phi_state", 0.0)))
        return _tensor_ket(single, model.params.N)
    if kind != "preset":
        raise ConfigError(
            f"initial_state kind for evolve-lindblad must be 'preset' or 'amplitudes', got {kind!r}"
        )
    name = table.get("name")
    phi_state = float(table.get("phi_state", 0.0))
    n = model.params.N
    if space.kind.startswith("three-level"):
        if name == "dark":
            return _tensor_ket(_three_level_ket(0.0, 1.0, phi_state), n)
        if name == "all-down":
            return _tensor_ket(np.array([0, 1, 0], dtype=complex), n)
        if name == "plus-x-product":
            single = np.ones(3, dtype=complex) / np.sqrt(3)
            return _tensor_ket(single, n)
    elif space.kind == "two-species-full":
        if name == "plus-x-product":
            return _tensor_ket(np.array([1, 1], dtype=complex) / np.sqrt(2), n)
        if name == "all-down":
            return _tensor_ket(np.array([0, 1], dtype=complex), n)
    elif space.kind == "two-species-collective":
        d_species = int(round(math.sqrt(space.dimension)))
        direction = {"plus-x-product": "+x", "all-down": "down"}.get(name)
        if direction is not None:
            single = _coherent_spin_ket(d_species, direction)
            return np.kron(single, single)
    raise ConfigError(f"initial-state preset {name!r} is not defined for space {space.kind!r}")


def _lindblad_initial_state(model: LindbladModel, table: dict) -> np.ndarray:
    _check_keys(table, _INITIAL_KEYS, "initial_state")
    ket = _atomic_ket(model, table)
    if model.space.kind == "with-cavity":
        vacuum = np.zeros(model.space.n_max + 1, dtype=complex)
        vacuum[0] = 1.0
        ket = np.kron(ket, vacuum)
    if ket.shape[0] != model.dimension:
        raise ConfigError(
            f"initial state dimension {ket.shape[0]} does not match model dimension {model.dimension}"
        )
    return np.outer(ket, ket.conj())


def _meanfield_initial_state(family: str, table: dict):
    _check_keys(table, _INITIAL_KEYS, "initial_state")
    kind = table.get("kind")
    if family == "two-species":
        if kind == "bloch":
            return MeanFieldState2S(
                alpha=complex(float(table.get("alpha_re", 0.0)), float(table.get("alpha_im", 0.0))),
                sA=np.asarray(table.get("sA", [1.0, 0.0, 0.0]), dtype=float),
                sB=np.asarray(table.get("sB", [1.0, 0.0, 0.0]), dtype=float),
            )
        if kind == "preset":
            name = table.get("name")
            if name == "plus-x-product":
                return MeanFieldState2S(0j, np.array([1.0, 0, 0]), np.array([1.0, 0, 0]))
            if name == "all-down":
                return MeanFieldState2S(0j, np.array([0, 0, -1.0]), np.array([0, 0, -1.0]))
            raise ConfigError(f"unknown two-species initial-state preset {name!r}")
        raise ConfigError(f"two-species mean field needs initial_state kind 'bloch' or 'preset', got {kind!r}")
    # three-level family
    if kind == "amplitudes":
        return three_level_initial_expectations(
            float(table["c_plus"]), float(table["c_minus"]), float(table.get("phi_state", 0.0))
        )
    if kind == "preset":
        name = table.get("name")
        phi_state = float(table.get("phi_state", 0.0))
        if name == "dark":
            return three_level_initial_expectations(0.0, 1.0, phi_state)
        if name == "all-down":
            return three_level_initial_expectations(0.0, 0.0, phi_state)
        raise ConfigError(f"unknown three-level initial-state preset {name!r}")
    raise ConfigError(f"three-level mean field needs initial_state kind 'amplitudes' or 'preset', got {kind!r}")


# ---------------------------------------------------------------------------
# CSV / JSON writers


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return FLOAT_FMT % float(value)


def _write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _trajectory_columns(traj: Trajectory) -> tuple[list[str], list[np.ndarray]]:
    names, cols = ["time"], [traj.times]
    for name, series in traj.observables.items():
        if np.iscomplexobj(series):
            names += [f"{name}_re", f"{name}_im"]
            cols += [series.real, series.imag]
        else:
            names.append(name)
            cols.append(series)
    return names, cols


def write_trajectory_csv(path: Path, traj: Trajectory) -> None:
    names, cols = _trajectory_columns(traj)
    _write_csv(path, names, zip(*cols))


def write_spectrum_csv(path: Path, spec: SpectrumResult) -> None:
    rows = (
        (i, ev.real, ev.imag)
        for i, ev in enumerate(spec.eigenvalues)
    )
    _write_csv(path, ["index", "eigenvalue_re", "eigenvalue_im"], rows)


def write_sweep_csv(path: Path, result: SweepResult) -> None:
    axis_names = list(result.axes)
    grids = np.meshgrid(*[result.axes[n] for n in axis_names], indexing="ij")
    coords = [g.ravel() for g in grids]
    value_names = list(result.values)
    flat_values = [np.asarray(result.values[n]).ravel() for n in value_names]
    rows = zip(*(coords + flat_values))
    _write_csv(path, axis_names + value_names, rows)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def write_meta(out_dir: Path, payload: dict) -> Path:
    path = out_dir / "meta.json"
    path.write_text(json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n")
    return path


# ---------------------------------------------------------------------------
# presets

_MARKER_C_PLUS = (1 + math.sqrt(2)) / (2 * math.sqrt(2))
_MARKER_C_MINUS = (1 - math.sqrt(2)) / (2 * math.sqrt(2))

PRESETS: dict[str, dict] = {
    # mean-field stationarity map over (phi, eta/g) for the two-species model
    "fig2a": {
        "command": "sweep",
        "model": {"g": 0.1},
        "sweep": {
            "kind": "eta-phi-map",
            "phi_values": {"start": -math.pi, "stop": math.pi, "count": 41},
            "eta_values": {"start": 0.0, "stop": 1.5, "count": 41},
            "gt_window": 2.0e4,
            "sample_count": 4096,
        },
    },
    # desk-scale 21x21 version of the same map
    "fig2a-coarse": {
        "command": "sweep",
        "model": {"g": 0.1},
        "sweep": {
            "kind": "eta-phi-map",
            "phi_values": {"start": -math.pi, "stop": math.pi, "count": 21},
            "eta_values": {"start": 0.0, "stop": 1.5, "count": 21},
            "gt_window": 2.0e3,
            "sample_count": 2048,
        },
    },
    # dominant-sector weight of |+x>^N versus phi
    "fig2b": {
        "command": "weights",
        "weights": {"phi_values": {"start": -math.pi, "stop": math.pi, "count": 81}, "N": 8},
    },
    # finite-size collective-spin dynamics at a driven point above threshold
    "fig2cd": {
        "command": "evolve-lindblad",
        "model": {"kind": "spin-only", "spin_basis": "collective",
                  "g": 0.1, "eta": 0.12, "phi": 0.0, "N": 20},
        "initial_state": {"kind": "preset", "name": "plus-x-product"},
        "numerics": {"t_final": 200.0, "sample_count": 512},
    },
    # three-level mean-field trajectory at the marker initial state
    "fig3a": {
        "command": "evolve-mf",
        "model": {"kind": "three-level-effective", "g": 0.1, "eta": 0.05,
                  "phi": 2 * math.pi / 3},
        "initial_state": {"kind": "amplitudes", "c_plus": _MARKER_C_PLUS,
                          "c_minus": _MARKER_C_MINUS, "phi_state": 0.0},
        "numerics": {"gt_window": 2.0e4, "sample_count": 4096},
    },
    # stationarity classification over the (c+, c-) initial-state plane
    "fig3ce": {
        "command": "sweep",
        "model": {"g": 0.1, "eta": 0.05, "phi": 2 * math.pi / 3},
        "sweep": {
            "kind": "initial-state-map",
            "c_plus_values": {"start": 0.0, "stop": 0.95, "count": 21},
            "c_minus_values": {"start": 0.0, "stop": 0.95, "count": 21},
            "phi_state": 0.0,
            "gt_window": 2.0e4,
            "sample_count": 4096,
        },
    },
    # Liouvillian gap closing with system size at opposite detunings
    "figS3c": {
        "command": "sweep",
        "model": {"g": 0.1, "eta": 0.025},
        "sweep": {"kind": "gap-scaling", "N_values": [1, 2, 3, 4],
                  "delta": 0.2 * math.pi},
    },
    # full-space Liouvillian spectrum of the driven spin-only model
    "figS4": {
        "command": "spectrum",
        "model": {"kind": "spin-only", "spin_basis": "full", "g": 0.1,
                  "eta": 0.025, "delta_A": 0.01, "delta_B": 0.01,
                  "N_A": 3, "N_B": 3},
    },
    # undriven dark product state: populations stay frozen
    "dark": {
        "command": "evolve-lindblad",
        "model": {"kind": "three-level-effective", "g": 0.1, "eta": 0.0,
                  "phi": 0.0, "N": 2},
        "initial_state": {"kind": "preset", "name": "dark", "phi_state": 0.0},
        "numerics": {"t_final": 50.0, "sample_count": 256},
    },
}


# ---------------------------------------------------------------------------
# command execution


def _numerics(table: dict, g: float, default_t: float = 100.0) -> dict:
    _check_keys(table, _NUMERICS_KEYS, "numerics")
    out = dict(table)
    if "t_final" in out and "gt_window" in out:
        raise ConfigError("[numerics] t_final and gt_window are mutually exclusive")
    if "gt_window" in out:
        if g <= 0:
            raise ConfigError("gt_window needs g > 0")
        out["t_final"] = float(out.pop("gt_window")) / g
    out.setdefault("t_final", default_t)
    if float(out["t_final"]) <= 0:
        raise ConfigError(f"t_final must be positive, got {out['t_final']}")
    out["sample_count"] = int(out.get("sample_count", 512))
    if out["sample_count"] < 2:
        raise ConfigError("sample_count must be at least 2")
    return out


def _run_evolve_mf(config: dict) -> tuple[str, Trajectory, dict]:
    kind, _ = _model_kind(config.get("model", {}))
    params = _model_params(config.get("model", {}))
    family = "three-level" if kind.startswith("three-level") else "two-species"
    init = _meanfield_initial_state(family, config.get("initial_state", {}))
    num = _numerics(config.get("numerics", {}), params.g)
    traj = mf_evolve(
        family, init, params,
        t_final=float(num["t_final"]),
        sample_count=num["sample_count"],
        rtol=float(num.get("rtol", 1e-9)),
        atol=float(num.get("atol", 1e-12)),
    )
    return "trajectory.csv", traj, dict(traj.diagnostics)


def _run_evolve_lindblad(config: dict) -> tuple[str, Trajectory, dict]:
    kind, spin_basis = _model_kind(config.get("model", {}))
    params = _model_params(config.get("model", {}))
    model = build_model(kind, params, spin_basis=spin_basis)
    rho0 = _lindblad_initial_state(model, config.get("initial_state", {}))
    num = _numerics(config.get("numerics", {}), params.g)
    traj = evolve_density_matrix(
        model, rho0,
        t_final=float(num["t_final"]),
        sample_count=num["sample_count"],
        integrator=num.get("integrator", "rk45-adaptive"),
        rtol=float(num.get("rtol", 1e-8)),
        atol=float(num.get("atol", 1e-10)),
        step=num.get("step"),
    )
    return "trajectory.csv", traj, dict(traj.diagnostics)


def _run_spectrum(config: dict) -> tuple[str, SpectrumResult, dict]:
    kind, spin_basis = _model_kind(config.get("model", {}))
    params = _model_params(config.get("model", {}))
    model = build_model(kind, params, spin_basis=spin_basis)
    result = spectrum(model)
    diags = {"dimension": model.dimension,
             "kernel_dimension": int(len(result.zero_modes()))}
    return "spectrum.csv", result, diags


def _run_weights(config: dict) -> tuple[str, SweepResult, dict]:
    table = config.get("weights", {})
    _check_keys(table, _WEIGHTS_KEYS, "weights")
    if "phi_values" not in table:
        raise ConfigError("[weights] needs phi_values")
    spec = {
        "kind": "weight-vs-phi",
        "phi_values": _resolve_grid(table["phi_values"], "weights.phi_values"),
        "N": int(table.get("N", 4)),
    }
    result = run_sweep(spec)
    return "sweep.csv", result, {"points": int(np.size(result.values["w_max"]))}


_GRID_KEYS = ("phi_values", "eta_values", "c_plus_values", "c_minus_values")


def _run_sweep_cmd(config: dict, jobs: int) -> tuple[str, SweepResult, dict]:
    table = dict(config.get("sweep", {}))
    if "kind" not in table:
        raise ConfigError("[sweep] needs a kind")
    for key in _GRID_KEYS:
        if key in table:
            table[key] = _resolve_grid(table[key], f"sweep.{key}")
    if "model" in config:
        table["params"] = _model_params(config["model"])
    try:
        result = run_sweep(table, jobs=jobs)
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"invalid [sweep] spec: {exc}") from exc
    n_failed = int(np.sum(~np.asarray(result.values.get("ok", np.array([True])), dtype=bool)))
    return "sweep.csv", result, {"failed_points": n_failed}


def run(command: str, config: dict, out_dir: Path, jobs: int = 1,
        preset: str | None = None) -> int:
    """Execute one command; returns the process exit status (0 / 2 / 3)."""
    started = time.monotonic()
    meta: dict = {
        "tool": "phasesym",
        "version": __version__,
        "command": command,
        "preset": preset,
        "config": config,
        "units": UNITS,
        "created": datetime.now(timezone.utc).isoformat(),
    }
    try:
        _check_keys(config, _TOP_KEYS, "config")
        if command == "evolve-mf":
            artifact, payload, diags = _run_evolve_mf(config)
        elif command == "evolve-lindblad":
            artifact, payload, diags = _run_evolve_lindblad(config)
        elif command == "spectrum":
            artifact, payload, diags = _run_spectrum(config)
        elif command == "weights":
            artifact, payload, diags = _run_weights(config)
        elif command == "sweep":
            artifact, payload, diags = _run_sweep_cmd(config, jobs)
        else:
            raise ConfigError(f"unknown command {command!r}")
    except ConfigError as exc:
        print(f"phasesym: config error: {exc}", file=sys.stderr)
        return 2
    except (RuntimeError, FloatingPointError, MemoryError, np.linalg.LinAlgError) as exc:
        out_dir.mkdir(parents=True, exist_ok=True)
        meta["error"] = str(exc)
        meta["timings"] = {"wall_seconds": time.monotonic() - started}
        write_meta(out_dir, meta)
        print(f"phasesym: numerical failure: {exc}", file=sys.stderr)
        return 3

    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / artifact
    if isinstance(payload, Trajectory):
        write_trajectory_csv(path, payload)
    elif isinstance(payload, SpectrumResult):
        write_spectrum_csv(path, payload)
    else:
        write_sweep_csv(path, payload)
        meta["sweep_config"] = payload.config
    meta["diagnostics"] = diags
    meta["artifacts"] = [artifact]
    meta["timings"] = {"wall_seconds": time.monotonic() - started}
    write_meta(out_dir, meta)
    return 0


# ---------------------------------------------------------------------------
# entry point


def _load_config(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config is not valid TOML: {exc}") from exc


def _resolve_out_dir(arg_out: str | None, config: dict) -> Path:
    if arg_out:
        return Path(arg_out)
    directory = config.get("output", {}).get("directory")
    if directory:
        return Path(directory)
    root = os.environ.get(OUTPUT_ROOT_ENV)
    return Path(root) if root else Path.cwd()


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="phasesym",
        description="Driven-dissipative phase-symmetry toolkit: batch runs to CSV/JSON.",
    )
    parser.add_argument("command", choices=COMMANDS)
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--config", help="TOML run configuration")
    group.add_argument("--preset", choices=sorted(PRESETS), help="built-in named configuration")
    parser.add_argument("--out", help="output directory (default: $%s or cwd)" % OUTPUT_ROOT_ENV)
    parser.add_argument("--jobs", type=int, default=1, help="parallel sweep workers")
    args = parser.parse_args(argv)

    try:
        if args.preset:
            preset = {k: v for k, v in PRESETS[args.preset].items()}
            expected = preset.pop("command")
            if args.command != expected:
                raise ConfigError(
                    f"preset {args.preset!r} is a {expected!r} configuration, not {args.command!r}"
                )
            config = preset
        elif args.config:
            config = _load_config(args.config)
        else:
            raise ConfigError("one of --config or --preset is required")
        if args.jobs < 1:
            raise ConfigError(f"--jobs must be >= 1, got {args.jobs}")
    except ConfigError as exc:
        print(f"phasesym: config error: {exc}", file=sys.stderr)
        return 2

    out_dir = _resolve_out_dir(args.out, config)
    return run(args.command, config, out_dir, jobs=args.jobs, preset=args.preset)


if __name__ == "__main__":
    raise SystemExit(main())
