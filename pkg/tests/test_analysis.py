"""Unit tests for frequency extraction, classification, and sweeps."""

import math

import numpy as np
import pytest

from phasesym.analysis import (
    FrequencyEstimate,
    classify_stationarity,
    dfs_detect,
    dominant_frequency,
    mode_amplitude,
    sweep,
)
from phasesym.lindblad import SpectrumResult, spectrum
from phasesym.meanfield import MeanFieldState2S, three_level_initial_expectations
from phasesym.models import ModelParams, build_model

RNG = np.random.default_rng(5)


def test_dominant_frequency_recovers_synthetic_sine():
    dt = 0.05
    t = np.arange(8192) * dt
    omega = 1.37
    series = 0.4 + 0.2 * np.sin(omega * t + 0.3)
    est = dominant_frequency(series, dt)
    assert abs(est.omega_tilde - omega) <= est.resolution
    assert not est.stationary


def test_dominant_frequency_flat_series_is_stationary():
    series = np.full(4096, 0.7) + 1e-9 * RNG.normal(size=4096)
    est = dominant_frequency(series, dt=0.1)
    assert est.stationary
    assert est.omega_tilde == 0.0


def test_dominant_frequency_transient_discard():
    """A decaying transient followed by a clean tone must lock to the tone."""
    dt = 0.05
    t = np.arange(8192) * dt
    omega = 0.9
    series = np.exp(-t / 20.0) * 3.0 + 0.1 * np.sin(omega * t)
    est = dominant_frequency(series, dt, transient_fraction=0.5)
    assert abs(est.omega_tilde - omega) <= est.resolution


def test_dominant_frequency_input_validation():
    with pytest.raises(ValueError):
        dominant_frequency(np.zeros((4, 4)), 0.1)
    with pytest.raises(ValueError):
        dominant_frequency(np.zeros(4096), -1.0)
    with pytest.raises(ValueError):
        dominant_frequency(np.zeros(100), 0.1)  # too short after discard
    with pytest.raises(ValueError):
        dominant_frequency(np.zeros(4096), 0.1, transient_fraction=1.0)


def test_classify_stationarity_two_species_threshold():
    init = MeanFieldState2S(alpha=0j, sA=np.array([1.0, 0, 0]), sB=np.array([1.0, 0, 0]))
    below = classify_stationarity(ModelParams(g=0.1, eta=0.05), init)
    above = classify_stationarity(ModelParams(g=0.1, eta=0.12), init)
    assert below.stationary
    assert above.omega_tilde >= 0.01  # in g units


def test_dfs_detect_classification():
    delta = 0.01
    evals = np.array(
        [
            0.0,
            -1e-12 + 1j * delta,  # exact dark coherence
            -1e-12 - 1j * delta,
            -1e-10 + 1j * (delta + 5e-4),  # near-miss: emergent candidate
            -0.3 + 1j * (delta + 0.5),  # far off the +-i*delta line
        ]
    )
    res = SpectrumResult(eigenvalues=evals, right_modes=None, left_modes=None, metadata={})
    tags = dict(dfs_detect(res, delta))
    assert tags[evals[1]] == "dfs"
    assert tags[evals[2]] == "dfs"
    assert tags[evals[3]] == "edfs-candidate"
    assert evals[4] not in tags
    assert evals[0] not in tags  # the steady state never classifies
    assert dfs_detect(res, 0.0) == []


def test_mode_amplitude_steady_state_reproduces_long_time_value():
    p = ModelParams(N_A=1, N_B=0, g=0.1, eta=0.3)
    m = build_model("spin-only", p, spin_basis="full")
    res = spectrum(m, want_modes=True)
    k = int(np.argmin(np.abs(res.eigenvalues)))
    d = m.dimension
    rho0 = np.zeros((d, d), dtype=complex)
    rho0[0, 0] = 1.0
    obs = m.observables["SzA"]
    amp = mode_amplitude(res, rho0, obs, k)
    # oracle: sum over all modes at t -> infinity leaves only the kernel term
    from phasesym.lindblad import evolve_density_matrix

    traj = evolve_density_matrix(m, rho0, t_final=2000.0, sample_count=64)
    assert abs(amp - traj.observables["SzA"][-1]) < 1e-6
    # completeness: mode amplitudes at t=0 resum to the initial expectation
    total = sum(mode_amplitude(res, rho0, obs, i) for i in range(len(res.eigenvalues)))
    assert abs(total - np.trace(obs @ rho0)) < 1e-8


def test_sweep_rejects_unknown_fields():
    with pytest.raises((KeyError, ValueError)):
        sweep({"kind": "eta-phi-map", "phi_values": [0.0], "eta_values": [0.1], "bogus": 1})


def test_sweep_weight_vs_phi():
    res = sweep({"kind": "weight-vs-phi", "phi_values": np.linspace(0, math.pi, 5).tolist(), "N": 4})
    w = res.values["w_max"]
    assert abs(w[0] - 1.0) < 1e-10
    assert np.all(np.diff(w) < 1e-12)  # monotone non-increasing toward phi = pi
    assert np.allclose(res.values["complement"], 1.0 - w, atol=1e-12)


def test_sweep_initial_state_map_marks_invalid_corner():
    res = sweep(
        {
            "kind": "initial-state-map",
            "c_plus_values": [0.0, 0.9],
            "c_minus_values": [0.0, 0.9],
            "params": ModelParams(g=0.1, eta=0.05, phi=0.0, N=2, N_A=2, N_B=0),
            "gt_window": 2000.0,
        }
    )
    ok = res.values["ok"]
    # (0.9, 0.9) violates c+^2 + c-^2 <= 1 and must be flagged, not raised
    assert not ok[1, 1]
    assert ok[0, 0]


def test_classify_three_level_dark_initial_state_is_stationary():
    init = three_level_initial_expectations(0.0, 1.0, 0.0)
    est = classify_stationarity(
        ModelParams(g=0.1, eta=0.05, phi=0.0, N=2, N_A=2, N_B=0), init
    )
    assert est.stationary
