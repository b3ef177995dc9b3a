"""Order parameters and phase-diagram sweeps.

Dominant-frequency extraction from trajectories, stationarity
classification, critical-drive bisection, grid sweeps over (phi, eta) and
initial-state space, decoherence-free-subspace detection, and Liouvillian
gap scaling.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .lindblad import SpectrumResult, spectrum
from .meanfield import MeanFieldState2S, MeanFieldState3L, mf_evolve, three_level_initial_expectations
from .models import ModelParams, build_model
from .operators import HilbertSpace
from .symmetry import casimir_sectors, sector_weights

__all__ = [
    "FrequencyEstimate",
    "SweepResult",
    "dominant_frequency",
    "classify_stationarity",
    "critical_drive",
    "sweep",
    "dfs_detect",
    "mode_amplitude",
]

NONSTATIONARY_THRESHOLD = 0.01  # omega_tilde in g units

DFS_RE_TOL = 1e-8
DFS_IM_TOL = 1e-6
EDFS_IM_TOL = 1e-3

DEFAULT_GT_WINDOW = 2e3  # CI-scale window; figure-class presets use 2e4


@dataclass
class FrequencyEstimate:
    """Dominant angular frequency of a real time series.

    ``omega_tilde`` is 2*pi*f_peak in radians per unit time of the input
    (zero when the peak amplitude falls below the DC-relative gate);
    ``peak_amplitude`` is the windowed peak magnitude relative to the
    pre-subtraction DC level; ``resolution`` is one FFT bin, 2*pi / window.
    """

    omega_tilde: float
    peak_amplitude: float
    resolution: float

    @property
    def stationary(self) -> bool:
        return self.omega_tilde == 0.0


@dataclass
class SweepResult:
    """Named coordinate grids plus scalar fields evaluated on them.

    ``axes`` maps axis names to 1-d coordinate arrays; every array in
    ``values`` has the shape of the coordinate outer product (or the single
    axis for 1-d sweeps). ``values['ok']`` flags per-point success.
    """

    axes: dict[str, np.ndarray]
    values: dict[str, np.ndarray]
    config: dict = field(default_factory=dict)


def dominant_frequency(
    series: np.ndarray,
    dt: float,
    transient_fraction: float = 0.5,
    dc_threshold: float = 1e-3,
) -> FrequencyEstimate:
    """Peak angular frequency of ``series`` after transient discard.

    Discards the leading ``transient_fraction`` of samples, subtracts the
    mean, applies a Hann window and locates the maximal nonzero-frequency
    bin of the DFT. Returns omega = 0 when the peak is smaller than
    ``dc_threshold`` relative to the pre-subtraction DC level, so flat or
    noise-floor series classify as stationary.
    """
    series = np.asarray(series, dtype=float)
    if series.ndim != 1:
        raise ValueError(f"series must be 1-d, got shape {series.shape}")
    if not 0.0 <= transient_fraction < 1.0:
        raise ValueError(f"transient_fraction must be in [0, 1), got {transient_fraction}")
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    start = int(round(len(series) * transient_fraction))
    x = series[start:]
    if len(x) < 256:
        raise ValueError(f"need >= 256 samples after transient discard, got {len(x)}")
    window = np.hanning(len(x))
    dc_level = abs(float(np.mean(x)))
    spectrum_mag = np.abs(np.fft.rfft(window * (x - np.mean(x))))
    freqs = np.fft.rfftfreq(len(x), d=dt)
    k = 1 + int(np.argmax(spectrum_mag[1:]))
    # normalize the windowed peak against the same-windowed DC level
    dc_norm = max(dc_level * float(np.sum(window)), 1e-300)
    peak_rel = float(spectrum_mag[k] / dc_norm)
    resolution = 2 * np.pi / (len(x) * dt)
    omega = 2 * np.pi * float(freqs[k]) if peak_rel >= dc_threshold else 0.0
    return FrequencyEstimate(omega_tilde=omega, peak_amplitude=peak_rel, resolution=resolution)


def _mf_kind(init) -> str:
    if isinstance(init, MeanFieldState2S):
        return "two-species"
    if isinstance(init, MeanFieldState3L):
        return "three-level"
    raise TypeError(f"unrecognized mean-field initial state {type(init).__name__}")


def _order_parameter_series(kind: str) -> str:
    return "sAz" if kind == "two-species" else "N_B"


def classify_stationarity(
    p: ModelParams,
    init,
    gt_window: float = DEFAULT_GT_WINDOW,
    sample_count: int = 4096,
    observable: str | None = None,
) -> FrequencyEstimate:
    """Mean-field evolution + dominant frequency, in units of g.

    Evolves to t = gt_window / g and extracts the dominant frequency of the
    stationarity order parameter (s^z_A for two-species, N_B population for
    three-level unless ``observable`` overrides). The returned estimate is
    converted to g units, so nonstationarity is omega_tilde >= 0.01.
    """
    kind = _mf_kind(init)
    t_final = gt_window / p.g
    traj = mf_evolve(kind, init, p, t_final=t_final, sample_count=sample_count)
    name = observable or _order_parameter_series(kind)
    est = dominant_frequency(traj.series(name), dt=traj.times[1] - traj.times[0])
    return FrequencyEstimate(
        omega_tilde=est.omega_tilde / p.g,
        peak_amplitude=est.peak_amplitude,
        resolution=est.resolution / p.g,
    )


def critical_drive(
    phi: float,
    p: ModelParams,
    init,
    eta_bracket: tuple[float, float],
    tol: float | None = None,
    gt_window: float = DEFAULT_GT_WINDOW,
) -> float:
    """Bisect the drive strength separating stationary from oscillating.

    ``eta_bracket`` endpoints must classify differently; the returned value
    is the bracket midpoint once its width drops below ``tol`` (default
    0.01 g).
    """
    if tol is None:
        tol = 1e-2 * p.g
    p = replace(p, phi=phi)
    lo, hi = float(eta_bracket[0]), float(eta_bracket[1])

    def nonstat(eta: float) -> bool:
        est = classify_stationarity(replace(p, eta=eta), init, gt_window=gt_window)
        return est.omega_tilde >= NONSTATIONARY_THRESHOLD

    lo_ns, hi_ns = nonstat(lo), nonstat(hi)
    if lo_ns == hi_ns:
        raise ValueError(
            f"bracket ({lo:g}, {hi:g}) does not straddle the transition: "
            f"both classify {'non-stationary' if lo_ns else 'stationary'}"
        )
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if nonstat(mid) == lo_ns:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def _two_species_default_init() -> MeanFieldState2S:
    return MeanFieldState2S(alpha=0.0 + 0.0j, sA=np.array([1.0, 0.0, 0.0]), sB=np.array([1.0, 0.0, 0.0]))


def _eval_eta_phi_point(args) -> dict:
    phi, eta, base, gt_window, sample_count = args
    p = replace(base, phi=phi, eta=eta)
    try:
        traj = mf_evolve(
            "two-species", _two_species_default_init(), p, t_final=gt_window / p.g, sample_count=sample_count
        )
        dt = traj.times[1] - traj.times[0]
        est_a = dominant_frequency(traj.series("sAz"), dt)
        est_b = dominant_frequency(traj.series("sBz"), dt)
        tail = slice(3 * len(traj.times) // 4, None)
        return {
            "omega_tilde": est_a.omega_tilde / p.g,
            "omega_tilde_B": est_b.omega_tilde / p.g,
            "sz_total": float(np.mean(traj.series("sz_total")[tail])),
            "ok": True,
        }
    except Exception as exc:  # per-point failures recorded, sweep continues
        warnings.warn(f"sweep point (phi={phi:g}, eta={eta:g}) failed: {exc}", stacklevel=2)
        return {"omega_tilde": np.nan, "omega_tilde_B": np.nan, "sz_total": np.nan, "ok": False}


def _eval_initial_state_point(args) -> dict:
    c_plus, c_minus, base, phi_state, gt_window, sample_count = args
    if c_plus**2 + c_minus**2 > 1.0 + 1e-12:
        return {"omega_tilde_NB": np.nan, "nonstationary": False, "ok": False}
    try:
        init = three_level_initial_expectations(c_plus, c_minus, phi_state)
        est = classify_stationarity(base, init, gt_window=gt_window, sample_count=sample_count)
        return {
            "omega_tilde_NB": est.omega_tilde,
            "nonstationary": bool(est.omega_tilde >= NONSTATIONARY_THRESHOLD),
            "ok": True,
        }
    except Exception as exc:
        warnings.warn(f"sweep point (c+={c_plus:g}, c-={c_minus:g}) failed: {exc}", stacklevel=2)
        return {"omega_tilde_NB": np.nan, "nonstationary": False, "ok": False}


def _map_points(fn, payloads, jobs: int):
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, payloads))
    return [fn(a) for a in payloads]


def _collect(results: list[dict], shape: tuple[int, ...]) -> dict[str, np.ndarray]:
    fields = results[0].keys()
    return {
        name: np.array([r[name] for r in results]).reshape(shape)
        for name in fields
    }


def sweep(spec: dict, jobs: int = 1) -> SweepResult:
    """Evaluate a named grid sweep; see the per-kind helpers for fields.

    ``spec`` carries ``kind`` plus the grid and model parameters:

    - ``eta-phi-map``: phi_values, eta_values (units of g), params ->
      omega_tilde (g units), sz_total tail average.
    - ``weight-vs-phi``: phi_values, N -> w_max, complement of |+x>^N.
    - ``initial-state-map``: c_plus_values, c_minus_values, params
      (eta, phi fixed), phi_state -> omega_tilde_NB, nonstationary flags.
    - ``dfs-map``: phi_values, eta_values, params -> dfs pair count and
      minimal |Re| among near-(+-i Delta) modes of the spin-only model.
    - ``gap-scaling``: N_values, delta, params (delta_A = -delta_B = delta)
      -> min_re_gap per N for the three-level model.

    Failed points are flagged in values['ok'] and the sweep continues.
    """
    spec = dict(spec)
    kind = spec.pop("kind", None)
    base: ModelParams = spec.pop("params", ModelParams())
    gt_window = float(spec.pop("gt_window", DEFAULT_GT_WINDOW))
    sample_count = int(spec.pop("sample_count", 4096))
    config = {"kind": kind, "gt_window": gt_window, "sample_count": sample_count}

    if kind == "eta-phi-map":
        phis = np.asarray(spec.pop("phi_values"), dtype=float)
        etas_g = np.asarray(spec.pop("eta_values"), dtype=float)  # in units of g
        _reject_unknown(spec, kind)
        payloads = [
            (phi, eta_g * base.g, base, gt_window, sample_count) for phi in phis for eta_g in etas_g
        ]
        results = _map_points(_eval_eta_phi_point, payloads, jobs)
        values = _collect(results, (len(phis), len(etas_g)))
        return SweepResult(axes={"phi": phis, "eta_over_g": etas_g}, values=values, config=config)

    if kind == "weight-vs-phi":
        phis = np.asarray(spec.pop("phi_values"), dtype=float)
        n_atoms = int(spec.pop("N", base.N))
        _reject_unknown(spec, kind)
        space = HilbertSpace(kind="two-species-full", N=n_atoms)
        plus_x = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)
        psi = plus_x
        for _ in range(n_atoms - 1):
            psi = np.kron(psi, plus_x)
        w_max = np.empty(len(phis))
        ok = np.ones(len(phis), dtype=bool)
        for i, phi in enumerate(phis):
            try:
                w_max[i] = sector_weights(psi, casimir_sectors(space, phi)).w_max
            except Exception as exc:
                warnings.warn(f"weight point phi={phi:g} failed: {exc}", stacklevel=2)
                w_max[i], ok[i] = np.nan, False
        values = {"w_max": w_max, "complement": 1.0 - w_max, "ok": ok}
        config["N"] = n_atoms
        return SweepResult(axes={"phi": phis}, values=values, config=config)

    if kind == "initial-state-map":
        cps = np.asarray(spec.pop("c_plus_values"), dtype=float)
        cms = np.asarray(spec.pop("c_minus_values"), dtype=float)
        phi_state = float(spec.pop("phi_state", 0.0))
        _reject_unknown(spec, kind)
        payloads = [(cp, cm, base, phi_state, gt_window, sample_count) for cp in cps for cm in cms]
        results = _map_points(_eval_initial_state_point, payloads, jobs)
        values = _collect(results, (len(cps), len(cms)))
        config["phi_state"] = phi_state
        return SweepResult(axes={"c_plus": cps, "c_minus": cms}, values=values, config=config)

    if kind == "dfs-map":
        phis = np.asarray(spec.pop("phi_values"), dtype=float)
        etas_g = np.asarray(spec.pop("eta_values"), dtype=float)
        model_kind = spec.pop("model_kind", "spin-only")
        spin_basis = spec.pop("spin_basis", "full")
        _reject_unknown(spec, kind)
        n_dfs = np.zeros((len(phis), len(etas_g)), dtype=int)
        min_re = np.full((len(phis), len(etas_g)), np.nan)
        ok = np.ones((len(phis), len(etas_g)), dtype=bool)
        for i, phi in enumerate(phis):
            for j, eta_g in enumerate(etas_g):
                p = replace(base, phi=phi, eta=eta_g * base.g)
                try:
                    sp = spectrum(build_model(model_kind, p, spin_basis=spin_basis))
                    found = dfs_detect(sp, p.delta)
                    dfs = [ev for ev, cls in found if cls == "dfs"]
                    cands = [ev for ev, cls in found]
                    n_dfs[i, j] = len(dfs)
                    if cands:
                        min_re[i, j] = min(abs(ev.real) for ev in cands)
                except Exception as exc:
                    warnings.warn(f"dfs point (phi={phi:g}, eta={eta_g:g}g) failed: {exc}", stacklevel=2)
                    ok[i, j] = False
        values = {"n_dfs": n_dfs, "min_re_gap": min_re, "ok": ok}
        return SweepResult(axes={"phi": phis, "eta_over_g": etas_g}, values=values, config=config)

    if kind == "gap-scaling":
        n_values = [int(n) for n in spec.pop("N_values")]
        delta = float(spec.pop("delta", base.delta_A))
        im_resolution = float(spec.pop("im_resolution", EDFS_IM_TOL))
        _reject_unknown(spec, kind)
        min_re = np.full(len(n_values), np.nan)
        ok = np.ones(len(n_values), dtype=bool)
        for i, n in enumerate(n_values):
            p = replace(base, delta_A=delta, delta_B=-delta, N=n, N_A=n, N_B=0)
            try:
                sp = spectrum(build_model("three-level-effective", p))
                near = np.abs(np.abs(sp.eigenvalues.imag) - abs(delta)) < im_resolution
                if not np.any(near):
                    raise RuntimeError(f"no modes within {im_resolution:g} of Im = +-{delta:g}")
                min_re[i] = float(np.min(np.abs(sp.eigenvalues.real[near])))
            except Exception as exc:
                warnings.warn(f"gap point N={n} failed: {exc}", stacklevel=2)
                ok[i] = False
        values = {"min_re_gap": min_re, "ok": ok}
        config["delta"] = delta
        return SweepResult(axes={"N": np.array(n_values)}, values=values, config=config)

    raise ValueError(f"unknown sweep kind {kind!r}")


def _reject_unknown(rest: dict, kind: str) -> None:
    if rest:
        raise ValueError(f"unknown sweep keys for {kind!r}: {sorted(rest)}")


def dfs_detect(spec: SpectrumResult, delta: float) -> list[tuple[complex, str]]:
    """Classify eigenvalues near +-i*delta.

    'dfs' when |Re| < 1e-8 and |Im -+ delta| < 1e-6 (a decoherence-free
    pair); 'edfs-candidate' when only |Im -+ delta| < 1e-3 holds, with the
    finite real part retained for gap-scaling analysis. With delta = 0 no
    classification is possible (the steady state itself sits at zero).
    """
    out: list[tuple[complex, str]] = []
    if delta == 0:
        return out
    for ev in spec.eigenvalues:
        im_dist = abs(abs(ev.imag) - abs(delta))
        if im_dist < DFS_IM_TOL and abs(ev.real) < DFS_RE_TOL:
            out.append((complex(ev), "dfs"))
        elif im_dist < EDFS_IM_TOL:
            out.append((complex(ev), "edfs-candidate"))
    return out


def mode_amplitude(spec: SpectrumResult, rho0: np.ndarray, observable: np.ndarray, mode_index: int) -> complex:
    """Contribution coefficient of one Liouvillian mode to <O>(t).

    Returns Tr(mu_a^dag rho0) * Tr(O nu_a) for the biorthonormal
    left/right eigenmatrix pair; the time-domain term is this value times
    exp(lambda_a t).
    """
    if spec.right_modes is None or spec.left_modes is None:
        raise ValueError("spectrum was computed without modes; rerun with want_modes=True")
    if not 0 <= mode_index < len(spec.eigenvalues):
        raise IndexError(f"mode index {mode_index} out of range for {len(spec.eigenvalues)} modes")
    mu = spec.left_modes[mode_index]
    nu = spec.right_modes[mode_index]
    c = complex(np.trace(mu.conj().T @ rho0))
    return c * complex(np.trace(np.asarray(observable, dtype=complex) @ nu))
