"""Exact GKSL dynamics and spectral analysis.

Vectorization convention is column-major throughout: vec stacks matrix
columns, so vec(A rho B) = (B^T kron A) vec(rho). Reshapes therefore always
use order='F'.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .models import LindbladModel
from .operators import herm_defect, max_abs

__all__ = [
    "Trajectory",
    "SpectrumResult",
    "apply_generator",
    "evolve_density_matrix",
    "liouvillian_matrix",
    "spectrum",
    "steady_state",
]

DEFAULT_SUPEROP_DIM_BUDGET = 90  # refuse liouvillian_matrix above this d

ZERO_EIGENVALUE_TOL = 1e-8


@dataclass
class Trajectory:
    """Uniformly sampled times plus named observable series.

    Times are in 1/kappa units. Diagnostics record the worst trace and
    Hermiticity drift seen before the per-sample renormalization, plus the
    photon-truncation leakage flag for cavity spaces.
    """

    times: np.ndarray
    observables: dict[str, np.ndarray]
    snapshots: dict[float, np.ndarray] = field(default_factory=dict)
    diagnostics: dict[str, float | bool] = field(default_factory=dict)

    def series(self, name: str) -> np.ndarray:
        return self.observables[name]


@dataclass
class SpectrumResult:
    """Liouvillian eigenvalues (kappa units), optionally with eigenmatrices.

    right_modes[i] and left_modes[i] satisfy Tr(left_modes[i]^dag
    right_modes[j]) = delta_ij when modes are requested.
    """

    eigenvalues: np.ndarray
    right_modes: list[np.ndarray] | None = None
    left_modes: list[np.ndarray] | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return int(round(np.sqrt(len(self.eigenvalues))))

    def zero_modes(self, tol: float = ZERO_EIGENVALUE_TOL) -> np.ndarray:
        """Indices of eigenvalues with |lambda| < tol (stationary kernel)."""
        return np.flatnonzero(np.abs(self.eigenvalues) < tol)


def apply_generator(model: LindbladModel, rho: np.ndarray) -> np.ndarray:
    """One application of the GKSL generator: -i[H, rho] + sum_k gamma_k D[L_k]rho."""
    d = model.dimension
    if rho.shape != (d, d):
        raise ValueError(f"rho shape {rho.shape} does not match model dimension {d}")
    out = -1j * (model.H @ rho - rho @ model.H)
    for rate, L in model.jumps:
        Ld = L.conj().T
        LdL = Ld @ L
        out = out + rate * (L @ rho @ Ld - 0.5 * (LdL @ rho + rho @ LdL))
    return out


def liouvillian_matrix(model: LindbladModel, dim_budget: int = DEFAULT_SUPEROP_DIM_BUDGET) -> np.ndarray:
    """Dense d^2 x d^2 matrix of the generator in column-major vectorization."""
    d = model.dimension
    if d > dim_budget:
        raise MemoryError(
            f"superoperator for dimension {d} exceeds budget d <= {dim_budget}; "
            "pass dim_budget explicitly if intended"
        )
    eye = np.eye(d, dtype=complex)
    H = model.H
    L_total = -1j * (np.kron(eye, H) - np.kron(H.T, eye))
    for rate, L in model.jumps:
        LdL = L.conj().T @ L
        L_total += rate * (
            np.kron(L.conj(), L) - 0.5 * np.kron(eye, LdL) - 0.5 * np.kron(LdL.T, eye)
        )
    return L_total


def _vec(rho: np.ndarray) -> np.ndarray:
    return rho.ravel(order="F")


def _unvec(v: np.ndarray) -> np.ndarray:
    d = int(round(np.sqrt(v.size)))
    return v.reshape((d, d), order="F")


def _check_initial_state(rho0: np.ndarray, tol: float = 1e-10) -> None:
    if herm_defect(rho0) > tol:
        raise ValueError("initial state is not Hermitian within tolerance")
    if abs(np.trace(rho0) - 1.0) > tol:
        raise ValueError("initial state is not trace-normalized")
    evals = np.linalg.eigvalsh((rho0 + rho0.conj().T) / 2)
    if evals.min() < -tol:
        raise ValueError(f"initial state is not positive semidefinite (min eig {evals.min():.2e})")


def evolve_density_matrix(
    model: LindbladModel,
    rho0: np.ndarray,
    t_final: float,
    sample_count: int = 512,
    integrator: str = "rk45-adaptive",
    rtol: float = 1e-8,
    atol: float = 1e-10,
    step: float | None = None,
    snapshot_times: list[float] | None = None,
) -> Trajectory:
    """Integrate rho(t) on a uniform sample grid, recording all model observables.

    integrator: 'rk45-adaptive' (scipy RK45 with rtol/atol) or 'rk4-fixed'
    (classical RK4 with fixed step ``step``). The state is Hermitized and
    trace-renormalized at every sample; drifts are recorded in diagnostics.
    """
    d = model.dimension
    rho0 = np.asarray(rho0, dtype=complex)
    _check_initial_state(rho0)
    times = np.linspace(0.0, t_final, sample_count)

    def rhs(t, y):
        return _vec(apply_generator(model, _unvec(y)))

    series: dict[str, list[float]] = {name: [] for name in model.observables}
    snapshots: dict[float, np.ndarray] = {}
    snap_wanted = sorted(snapshot_times or [])
    trace_drift = 0.0
    herm_drift = 0.0
    leak_max = 0.0

    rho = rho0.copy()
    t_prev = 0.0
    for i, t in enumerate(times):
        if i > 0:
            if integrator == "rk45-adaptive":
                sol = solve_ivp(
                    rhs, (t_prev, t), _vec(rho), method="RK45", rtol=rtol, atol=atol, dense_output=False
                )
                if not sol.success:
                    raise RuntimeError(f"integrator failed at t={t:g}: {sol.message}")
                rho = _unvec(sol.y[:, -1])
            elif integrator == "rk4-fixed":
                if step is None or step <= 0:
                    raise ValueError("rk4-fixed requires a positive step")
                rho = _rk4_span(model, rho, t_prev, t, step)
            else:
                raise ValueError(f"unknown integrator {integrator!r}")
        # enforce physicality every sample, recording how much was corrected
        trace_drift = max(trace_drift, abs(np.trace(rho).real - 1.0) + abs(np.trace(rho).imag))
        herm_drift = max(herm_drift, herm_defect(rho))
        rho = (rho + rho.conj().T) / 2
        rho = rho / np.trace(rho).real
        for name, op in model.observables.items():
            series[name].append(complex(np.trace(op @ rho)))
        if "leak" in model.observables:
            leak_max = max(leak_max, float(np.trace(model.observables["leak"] @ rho).real))
        while snap_wanted and snap_wanted[0] <= t + 1e-12:
            snapshots[snap_wanted.pop(0)] = rho.copy()
        t_prev = t

    diags: dict[str, float | bool] = {
        "trace_drift": float(trace_drift),
        "hermiticity_drift": float(herm_drift),
    }
    if "leak" in model.observables:
        diags["truncation_leakage"] = float(leak_max)
        diags["truncation_flagged"] = bool(leak_max > 1e-6)
    observables = {}
    for name, vals in series.items():
        arr = np.array(vals, dtype=complex)
        observables[name] = arr.real if np.max(np.abs(arr.imag), initial=0.0) < 1e-9 else arr
    return Trajectory(times=times, observables=observables, snapshots=snapshots, diagnostics=diags)


def _rk4_span(model: LindbladModel, rho: np.ndarray, t0: float, t1: float, h: float) -> np.ndarray:
    n_steps = max(1, int(np.ceil((t1 - t0) / h)))
    dt = (t1 - t0) / n_steps
    for _ in range(n_steps):
        k1 = apply_generator(model, rho)
        k2 = apply_generator(model, rho + dt / 2 * k1)
        k3 = apply_generator(model, rho + dt / 2 * k2)
        k4 = apply_generator(model, rho + dt * k3)
        rho = rho + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return rho


def spectrum(
    model: LindbladModel,
    want_modes: bool = False,
    dim_budget: int = DEFAULT_SUPEROP_DIM_BUDGET,
) -> SpectrumResult:
    """Full dense Liouvillian eigendecomposition.

    Eigenvalues are sorted by descending real part, then by |Im|. With
    ``want_modes`` the right eigenvectors are reshaped to matrices and the
    left eigenmatrices are obtained from the inverse eigenvector matrix, which
    makes the pair biorthonormal by construction.
    """
    L = liouvillian_matrix(model, dim_budget=dim_budget)
    meta = {"model": model.fingerprint(), "dimension": model.dimension, "kind": model.kind}
    try:
        if want_modes:
            evals, vr = np.linalg.eig(L)
        else:
            evals = np.linalg.eigvals(L)
            vr = None
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure path
        raise RuntimeError(f"eigensolver failed for model {meta['model']}: {exc}") from exc
    order = np.lexsort((np.abs(evals.imag), -evals.real))
    evals = evals[order]
    right = left = None
    if vr is not None:
        vr = vr[:, order]
        vl = np.linalg.inv(vr).conj().T  # columns satisfy vl^dag vr = I
        right = [_unvec(vr[:, k]) for k in range(vr.shape[1])]
        left = [_unvec(vl[:, k]) for k in range(vl.shape[1])]
    return SpectrumResult(eigenvalues=evals, right_modes=right, left_modes=left, metadata=meta)


def steady_state(model: LindbladModel, dim_budget: int = DEFAULT_SUPEROP_DIM_BUDGET):
    """Stationary state plus a degeneracy report.

    Returns (rho_ss, report) where report lists every |lambda| < 1e-8 mode.
    With a degenerate kernel (strong-symmetry sectors) the returned state is
    one element of the stationary family, never an average.
    """
    spec = spectrum(model, want_modes=True, dim_budget=dim_budget)
    idx_zero = spec.zero_modes()
    nearest = int(np.argmin(np.abs(spec.eigenvalues)))
    rho = spec.right_modes[nearest]
    rho = (rho + rho.conj().T) / 2
    tr = np.trace(rho).real
    if abs(tr) < 1e-14:
        raise RuntimeError(f"steady-state candidate is traceless for model {spec.metadata['model']}")
    rho = rho / tr
    report = {
        "kernel_dimension": int(len(idx_zero)),
        "kernel_eigenvalues": spec.eigenvalues[idx_zero].tolist(),
        "degenerate": bool(len(idx_zero) > 1),
    }
    return rho, report
