"""Concrete Lindblad models: full cavity models for both atomic species
layouts, the effective spin-only model, the effective three-level model, and
the adiabatic-elimination parameters connecting them.

All rates are expressed in units of kappa (kappa = 1 by default); time is in
units of 1/kappa.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .operators import HilbertSpace, collective_operators, herm_defect

__all__ = ["ModelParams", "AdiabaticParams", "LindbladModel", "adiabatic_parameters", "build_model"]

MODEL_KINDS = ("two-species-cavity", "spin-only", "three-level-effective", "three-level-cavity")


def _normalize_phase(phi: float) -> float:
    """Map phi into [-pi, pi]."""
    return float((phi + math.pi) % (2 * math.pi) - math.pi)


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters, all rates in units of kappa.

    ``delta_A``/``delta_B`` are the atomic detunings; for the common
    equal-detuning case set both to the same value. ``N`` is the total atom
    count (split evenly across species unless N_A, N_B given).
    """

    g: float = 0.1
    phi: float = 0.0
    eta: float = 0.0
    kappa: float = 1.0
    delta_c: float = 0.0
    delta_A: float = 0.0
    delta_B: float = 0.0
    N: int = 2
    N_A: int | None = None
    N_B: int | None = None
    n_max: int = 10
    include_lamb_shift: bool | None = None

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        object.__setattr__(self, "phi", _normalize_phase(self.phi))
        if self.N_A is None and self.N_B is None:
            if self.N % 2:
                raise ValueError("two-species N must be even unless N_A, N_B given explicitly")
            object.__setattr__(self, "N_A", self.N // 2)
            object.__setattr__(self, "N_B", self.N // 2)
        elif self.N_A is not None and self.N_B is not None:
            object.__setattr__(self, "N", self.N_A + self.N_B)
        else:
            raise ValueError("give both N_A and N_B or neither")

    @property
    def delta(self) -> float:
        """Common atomic detuning; only meaningful when delta_A == delta_B."""
        return self.delta_A

    def with_lamb_shift_resolved(self) -> bool:
        if self.include_lamb_shift is None:
            return self.delta_c != 0.0
        return self.include_lamb_shift


@dataclass(frozen=True)
class AdiabaticParams:
    """Cavity-eliminated effective parameters (units of kappa)."""

    chi_bar: complex
    Gamma: float
    drive_amp: complex
    lamb_coeff: float

    @property
    def Omega(self) -> float:
        """Real drive amplitude 2*eta*g/kappa; equals drive_amp at delta_c = 0."""
        return float(self.drive_amp.real)


def adiabatic_parameters(p: ModelParams) -> AdiabaticParams:
    """Effective parameters from adiabatic elimination of the cavity.

    chi_bar = 1/(kappa/2 + i delta_c), Gamma = g^2 kappa |chi_bar|^2 (equal to
    4 g^2/kappa on resonance), drive_amp = g eta chi_bar, and the Lamb-shift
    coefficient -(g^2/N) delta_c |chi_bar|^2. Emits a validity warning when the
    induced atomic rates are not slow compared to the eliminated cavity.
    """
    chi_bar = 1.0 / (p.kappa / 2 + 1j * p.delta_c)
    abs2 = abs(chi_bar) ** 2
    gamma = p.g**2 * p.kappa * abs2
    drive_amp = p.g * p.eta * chi_bar
    lamb_coeff = -(p.g**2 / p.N) * p.delta_c * abs2
    fast = max(p.kappa, abs(p.delta_c))
    if max(abs(drive_amp), gamma, abs(lamb_coeff) * p.N) >= 0.1 * fast:
        warnings.warn(
            "adiabatic elimination marginal: induced atomic rates are not small "
            f"compared to max(kappa, |delta_c|) = {fast:g}",
            stacklevel=2,
        )
    return AdiabaticParams(chi_bar=chi_bar, Gamma=gamma, drive_amp=drive_amp, lamb_coeff=lamb_coeff)


@dataclass
class LindbladModel:
    """Hamiltonian + weighted jump operators + space descriptor."""

    space: HilbertSpace
    H: np.ndarray
    jumps: list[tuple[float, np.ndarray]]
    observables: dict[str, np.ndarray]
    kind: str
    params: ModelParams

    def __post_init__(self):
        d = self.space.dimension
        if self.H.shape != (d, d):
            raise ValueError(f"H shape {self.H.shape} does not match space dimension {d}")
        if herm_defect(self.H) > 1e-12 * max(1.0, float(np.max(np.abs(self.H)))):
            raise ValueError("Hamiltonian is not Hermitian within tolerance")
        for rate, L in self.jumps:
            if rate < 0:
                raise ValueError(f"negative jump rate {rate}")
            if L.shape != (d, d):
                raise ValueError(f"jump operator shape {L.shape} does not match dimension {d}")
        for name, op in self.observables.items():
            if op.shape != (d, d):
                raise ValueError(f"observable {name!r} shape {op.shape} does not match dimension {d}")

    @property
    def dimension(self) -> int:
        return self.space.dimension

    def fingerprint(self) -> str:
        """Short stable hash of the model contents, for error reporting."""
        import hashlib

        h = hashlib.sha256()
        h.update(self.H.tobytes())
        for rate, L in self.jumps:
            h.update(np.float64(rate).tobytes())
            h.update(L.tobytes())
        return h.hexdigest()[:12]


def _atomic_space(kind: str, p: ModelParams, spin_basis: str) -> HilbertSpace:
    if kind.startswith("two-species") or kind == "spin-only":
        skind = "two-species-collective" if spin_basis == "collective" else "two-species-full"
        return HilbertSpace(kind=skind, N_A=p.N_A, N_B=p.N_B)
    return HilbertSpace(kind="three-level-full", N=p.N)


def build_model(kind: str, p: ModelParams, spin_basis: str = "collective") -> LindbladModel:
    """Assemble a LindbladModel of the requested kind.

    ``spin_basis`` selects the atomic representation of two-species models:
    'collective' (product of two maximal collective spins) or 'full'
    (2^N tensor space, needed for singlet-containing spectra).
    """
    if kind not in MODEL_KINDS:
        raise ValueError(f"unknown model kind {kind!r}; expected one of {MODEL_KINDS}")
    ap = adiabatic_parameters(p)

    if kind == "two-species-cavity":
        atomic = _atomic_space(kind, p, spin_basis)
        space = HilbertSpace(
            kind="with-cavity", N_A=p.N_A, N_B=p.N_B, N=p.N, n_max=p.n_max, base_kind=atomic.kind
        )
        ops = collective_operators(space, p.phi)
        a, ad = ops["a"], ops["a_dag"]
        H = (
            p.delta_c * (ad @ a)
            + 1j * p.eta * math.sqrt(p.N) * (ad - a)
            + p.delta_A * ops["SzA"]
            + p.delta_B * ops["SzB"]
            + (p.g / math.sqrt(p.N)) * (ad @ ops["S_phi"] + a @ ops["S_phi_dag"])
        )
        obs = {
            "SzA": ops["SzA"],
            "SzB": ops["SzB"],
            "n_photon": ops["n_photon"],
            "leak": ops["leak"],
        }
        return LindbladModel(space, H, [(p.kappa, a)], obs, kind, p)

    if kind == "spin-only":
        space = _atomic_space(kind, p, spin_basis)
        ops = collective_operators(space, p.phi)
        s_phi, s_phi_dag = ops["S_phi"], ops["S_phi_dag"]
        H = (
            p.delta_A * ops["SzA"]
            + p.delta_B * ops["SzB"]
            + ap.drive_amp * s_phi
            + np.conj(ap.drive_amp) * s_phi_dag
        )
        if p.with_lamb_shift_resolved():
            H = H + ap.lamb_coeff * (s_phi_dag @ s_phi)
        S = p.N / 2
        obs = {
            "SzA": ops["SzA"],
            "SzB": ops["SzB"],
            "Sz_phi": ops["Sz_phi"],
            "S2_phi": ops["S2_phi"],
        }
        return LindbladModel(space, H, [(ap.Gamma / (2 * S), s_phi)], obs, kind, p)

    if kind == "three-level-effective":
        space = HilbertSpace(kind="three-level-full", N=p.N)
        ops = collective_operators(space, p.phi)
        lam_phi, lam_phi_dag = ops["Lambda_phi"], ops["Lambda_phi_dag"]
        # detunings are single-atom energies: sum_j Delta_k |k><k|_j, never the
        # collective product Lambda_k^dag Lambda_k (equal only at N = 1)
        H = (
            p.delta_A * ops["N_A"]
            + p.delta_B * ops["N_B"]
            + ap.drive_amp * lam_phi
            + np.conj(ap.drive_amp) * lam_phi_dag
        )
        if p.with_lamb_shift_resolved():
            H = H + ap.lamb_coeff * (lam_phi_dag @ lam_phi)
        obs = {"N_A": ops["N_A"], "N_B": ops["N_B"], "N_0": ops["N_0"], "T_phi": ops["T_phi"]}
        return LindbladModel(space, H, [(ap.Gamma / p.N, lam_phi)], obs, kind, p)

    # three-level-cavity
    space = HilbertSpace(kind="with-cavity", N=p.N, n_max=p.n_max, base_kind="three-level-full")
    ops = collective_operators(space, p.phi)
    a, ad = ops["a"], ops["a_dag"]
    H = (
        p.delta_c * (ad @ a)
        + 1j * p.eta * math.sqrt(p.N) * (ad - a)
        + p.delta_A * ops["N_A"]
        + p.delta_B * ops["N_B"]
        + (p.g / math.sqrt(p.N)) * (ad @ ops["Lambda_phi"] + a @ ops["Lambda_phi_dag"])
    )
    obs = {
        "N_A": ops["N_A"],
        "N_B": ops["N_B"],
        "N_0": ops["N_0"],
        "n_photon": ops["n_photon"],
        "leak": ops["leak"],
    }
    return LindbladModel(space, H, [(p.kappa, a)], obs, kind, p)
