"""Unit tests for the exact Lindblad solver and Liouvillian spectra."""

import math

import numpy as np
import pytest

from phasesym.lindblad import (
    apply_generator,
    evolve_density_matrix,
    liouvillian_matrix,
    spectrum,
    steady_state,
)
from phasesym.models import ModelParams, build_model

RNG = np.random.default_rng(7)


def _random_density(d: int) -> np.ndarray:
    a = RNG.normal(size=(d, d)) + 1j * RNG.normal(size=(d, d))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def _qubit_decay_model(gamma_target: float = 0.04):
    # one atom of species A, no drive: pure collective decay at rate Gamma
    g = math.sqrt(gamma_target / 4)
    p = ModelParams(N_A=1, N_B=0, g=g, eta=0.0)
    return build_model("spin-only", p, spin_basis="full"), gamma_target


def test_generator_preserves_trace_and_hermiticity():
    m = build_model("spin-only", ModelParams(N=4, eta=0.3, phi=0.9, delta_A=0.1, delta_B=0.1))
    rho = _random_density(m.dimension)
    drho = apply_generator(m, rho)
    assert abs(np.trace(drho)) < 1e-12
    assert np.max(np.abs(drho - drho.conj().T)) < 1e-12


def test_liouvillian_matrix_consistent_with_generator():
    m = build_model("spin-only", ModelParams(N=2, eta=0.2, phi=0.5))
    d = m.dimension
    lio = liouvillian_matrix(m)
    rho = _random_density(d)
    direct = apply_generator(m, rho)
    via_matrix = (lio @ rho.reshape(-1, order="F")).reshape((d, d), order="F")
    assert np.max(np.abs(direct - via_matrix)) < 1e-12


def test_qubit_decay_analytic_oracle():
    """Undriven single two-level atom: P_excited(t) = exp(-Gamma t)."""
    m, gamma = _qubit_decay_model()
    d = m.dimension
    rho0 = np.zeros((d, d), dtype=complex)
    excited = int(np.argmax(np.real(np.diag(m.observables["SzA"]))))
    rho0[excited, excited] = 1.0
    traj = evolve_density_matrix(m, rho0, t_final=60.0, sample_count=61)
    sz = np.real(traj.observables["SzA"])
    p_excited = sz + 0.5
    expected = np.exp(-gamma * traj.times)
    assert np.max(np.abs(p_excited - expected)) < 1e-6


def test_qubit_decay_spectrum_oracle():
    """Eigenvalues of the undriven qubit Liouvillian: {0, -G/2 (x2), -G}."""
    m, gamma = _qubit_decay_model()
    res = spectrum(m)
    evals = np.sort(res.eigenvalues.real)
    assert np.allclose(np.sort(res.eigenvalues.imag), 0.0, atol=1e-12)
    assert np.allclose(evals, [-gamma, -gamma / 2, -gamma / 2, 0.0], atol=1e-12)
    assert len(res.zero_modes()) == 1


def test_spectrum_modes_biorthonormal():
    m = build_model("spin-only", ModelParams(N=2, eta=0.2, phi=0.7, delta_A=0.05, delta_B=0.05))
    res = spectrum(m, want_modes=True)
    n = len(res.eigenvalues)
    gram = np.array(
        [
            [np.trace(res.left_modes[i].conj().T @ res.right_modes[j]) for j in range(n)]
            for i in range(n)
        ]
    )
    assert np.max(np.abs(gram - np.eye(n))) < 1e-8


def _driven_qubit_model():
    # single driven two-level atom: unique steady state (resonance fluorescence)
    p = ModelParams(N_A=1, N_B=0, g=0.1, eta=0.3)
    return build_model("spin-only", p, spin_basis="full")


def test_steady_state_properties():
    m = _driven_qubit_model()
    rho_ss, report = steady_state(m)
    assert report["kernel_dimension"] == 1
    assert not report["degenerate"]
    assert abs(np.trace(rho_ss) - 1.0) < 1e-10
    assert np.max(np.abs(rho_ss - rho_ss.conj().T)) < 1e-10
    assert np.max(np.abs(apply_generator(m, rho_ss))) < 1e-10
    # physical state: non-negative populations
    assert np.min(np.linalg.eigvalsh(rho_ss)) > -1e-10


def test_evolution_reaches_steady_state():
    m = _driven_qubit_model()
    rho_ss, _ = steady_state(m)
    d = m.dimension
    rho0 = np.eye(d, dtype=complex) / d
    traj = evolve_density_matrix(m, rho0, t_final=2000.0, sample_count=64, snapshot_times=[2000.0])
    rho_end = traj.snapshots[2000.0]
    assert np.max(np.abs(rho_end - rho_ss)) < 1e-6


def test_fixed_step_integrator_matches_adaptive():
    m = build_model("spin-only", ModelParams(N=2, eta=0.4, phi=1.0))
    d = m.dimension
    rho0 = np.zeros((d, d), dtype=complex)
    rho0[-1, -1] = 1.0
    kw = dict(t_final=20.0, sample_count=41, snapshot_times=[20.0])
    adaptive = evolve_density_matrix(m, rho0, **kw)
    fixed = evolve_density_matrix(m, rho0, integrator="rk4-fixed", step=0.005, **kw)
    assert np.max(np.abs(adaptive.snapshots[20.0] - fixed.snapshots[20.0])) < 1e-8


def test_dimension_budget_guard():
    m = build_model("spin-only", ModelParams(N=40), spin_basis="collective")
    with pytest.raises(Exception):
        liouvillian_matrix(m, dim_budget=10)


def test_invalid_integrator_rejected():
    m = build_model("spin-only", ModelParams(N=2))
    rho0 = np.eye(m.dimension, dtype=complex) / m.dimension
    with pytest.raises(ValueError):
        evolve_density_matrix(m, rho0, t_final=1.0, integrator="euler")
