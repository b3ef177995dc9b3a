"""Phase-dependent strong-symmetry structure.

Sector decompositions of the total-spin operator S^2_phi, the three-level
bright/dark splitting of tau^phi, conserved sector weights, singlet overlap,
and commutation-residual certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .models import LindbladModel
from .operators import HilbertSpace, collective_operators, max_abs

__all__ = [
    "SectorDecomposition",
    "WeightReport",
    "casimir_sectors",
    "sector_weights",
    "tau_eigensystem",
    "bright_dark_weights",
    "singlet_overlap",
    "symmetry_residuals",
]

CLUSTER_TOL = 1e-8

EXACT_TENSOR_MAX_N = 6


@dataclass
class SectorDecomposition:
    """Eigenvalue sectors of a Hermitian symmetry generator.

    ``labels[k]`` is the (clustered) eigenvalue of sector k, ``projectors[k]``
    the orthogonal projector onto its eigenspace, ``multiplicities[k]`` its
    dimension. Projectors resolve the identity and are mutually orthogonal.
    """

    labels: list[float]
    projectors: list[np.ndarray]
    multiplicities: list[int]

    @property
    def dimension(self) -> int:
        return self.projectors[0].shape[0] if self.projectors else 0

    def completeness_defect(self) -> float:
        """max-norm distance of sum of projectors from the identity."""
        total = sum(self.projectors)
        return max_abs(total - np.eye(self.dimension))


@dataclass
class WeightReport:
    """Conserved sector weights w_label = Tr[P_label rho] of a state."""

    weights: dict[float, float]
    w_max: float
    complement: float

    def total(self) -> float:
        return float(sum(self.weights.values()))


def _cluster_eigenvalues(evals: np.ndarray, tol: float = CLUSTER_TOL) -> list[np.ndarray]:
    """Group sorted indices of ``evals`` into clusters separated by > tol.

    Raises when a gap falls in the ambiguous band (tol, 100 tol): neighboring
    sectors cannot then be told apart reliably.
    """
    order = np.argsort(evals)
    groups: list[list[int]] = [[order[0]]]
    for idx in order[1:]:
        gap = evals[idx] - evals[groups[-1][-1]]
        if gap <= tol:
            groups[-1].append(idx)
        elif gap < 100 * tol:
            raise ValueError(
                f"ambiguous sector clustering: eigenvalue gap {gap:.3e} is between "
                f"tol and 100*tol; eigenvalues = {np.sort(evals).tolist()}"
            )
        else:
            groups.append([idx])
    return [np.array(g) for g in groups]


def casimir_sectors(space: HilbertSpace, phi: float) -> SectorDecomposition:
    """Eigenspace decomposition of the phase-dependent total-spin operator.

    Diagonalizes S^2_phi on a two-species space and clusters the S(S+1)
    eigenvalues; the resulting projectors block-diagonalize every model whose
    Hamiltonian and jump operators commute with S^2_phi.
    """
    if space.kind not in ("two-species-collective", "two-species-full"):
        raise ValueError(f"casimir_sectors requires a two-species space, got {space.kind!r}")
    s2 = collective_operators(space, phi)["S2_phi"]
    evals, vecs = np.linalg.eigh(s2)
    labels, projectors, mults = [], [], []
    for group in _cluster_eigenvalues(evals):
        v = vecs[:, group]
        labels.append(float(np.mean(evals[group])))
        projectors.append(v @ v.conj().T)
        mults.append(len(group))
    return SectorDecomposition(labels=labels, projectors=projectors, multiplicities=mults)


def sector_weights(state: np.ndarray, sectors: SectorDecomposition) -> WeightReport:
    """Weights w_label = Tr[P_label rho] (or <psi|P_label|psi> for a vector)."""
    state = np.asarray(state, dtype=complex)
    d = sectors.dimension
    if state.ndim == 1:
        if state.shape != (d,):
            raise ValueError(f"state vector length {state.shape[0]} does not match dimension {d}")
        weights = {
            label: float(np.real(state.conj() @ (proj @ state)))
            for label, proj in zip(sectors.labels, sectors.projectors)
        }
    elif state.shape == (d, d):
        weights = {
            label: float(np.trace(proj @ state).real)
            for label, proj in zip(sectors.labels, sectors.projectors)
        }
    else:
        raise ValueError(f"state shape {state.shape} does not match sector dimension {d}")
    label_max = max(sectors.labels)
    w_max = weights[label_max]
    return WeightReport(weights=weights, w_max=w_max, complement=1.0 - w_max)


def _tau_kets(phi: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(|0>, |+>, |->) in the (|A>, |0>, |B>) basis for phase ``phi``."""
    ket0 = np.array([0, 1, 0], dtype=complex)
    ketp = np.array([np.exp(-1j * phi), 0, 1], dtype=complex) / np.sqrt(2)
    ketm = np.array([-np.exp(-1j * phi), 0, 1], dtype=complex) / np.sqrt(2)
    return ket0, ketp, ketm


def tau_eigensystem(phi: float) -> SectorDecomposition:
    """Bright/dark splitting of the single-atom symmetry operator tau^phi.

    The +1 eigenspace (bright) is span{|0>, |+>} with |+-> = (|B> +-
    e^{-i phi}|A>)/sqrt(2); the -1 eigenspace (dark) is |->, annihilated by
    the collective jump operator.
    """
    ket0, ketp, ketm = _tau_kets(phi)
    proj_plus = np.outer(ket0, ket0.conj()) + np.outer(ketp, ketp.conj())
    proj_minus = np.outer(ketm, ketm.conj())
    return SectorDecomposition(
        labels=[1.0, -1.0], projectors=[proj_plus, proj_minus], multiplicities=[2, 1]
    )


def _tensor_power(m: np.ndarray, n: int) -> np.ndarray:
    return reduce(np.kron, [m] * n)


def bright_dark_weights(
    c_plus: float,
    c_minus: float,
    N: int,
    phi_state: float,
    phi_projector: float,
) -> tuple[float, float]:
    """Weights of the N-atom superposition family on the bright/dark sectors.

    The state is psi = c+ |+>^N + c- |->^N + c0 |0>^N with kets at phase
    ``phi_state``; the product projectors P_+- = (|v_+-><v_+-|)^{tensor N}
    are built at ``phi_projector``. When the phases match, the closed form
    w_- = c-^2, w_+ = c+^2 + c0^2 applies at every N; otherwise the weights
    are computed by an exact 3^N tensor contraction (N <= 6).
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    c0_sq = 1.0 - c_plus**2 - c_minus**2
    if c0_sq < -1e-12:
        raise ValueError(f"c+^2 + c-^2 = {c_plus ** 2 + c_minus ** 2:g} exceeds 1")
    c0 = np.sqrt(max(c0_sq, 0.0))
    if abs((phi_state - phi_projector + np.pi) % (2 * np.pi) - np.pi) < 1e-14:
        return float(c_plus**2 + c0**2), float(c_minus**2)
    if N > EXACT_TENSOR_MAX_N:
        raise ValueError(
            f"exact bright/dark weights need N <= {EXACT_TENSOR_MAX_N} for "
            f"mismatched phases, got N = {N}"
        )
    ket0_s, ketp_s, ketm_s = _tau_kets(phi_state)
    psi = (
        c_plus * _tensor_power(ketp_s.reshape(-1, 1), N).ravel()
        + c_minus * _tensor_power(ketm_s.reshape(-1, 1), N).ravel()
        + c0 * _tensor_power(ket0_s.reshape(-1, 1), N).ravel()
    )
    sectors = tau_eigensystem(phi_projector)
    proj_plus = _tensor_power(sectors.projectors[0], N)
    proj_minus = _tensor_power(sectors.projectors[1], N)
    w_plus = float(np.real(psi.conj() @ (proj_plus @ psi)))
    w_minus = float(np.real(psi.conj() @ (proj_minus @ psi)))
    return w_plus, w_minus


def singlet_overlap(phi: float) -> complex:
    """Overlap of |+x> = (|ud> + |du>)/sqrt(2) with the phase-dependent singlet.

    Closed form (1 - e^{-i phi})/2, cross-checked against the explicit
    two-atom vectors; the singlet ket is (|ud> - e^{i phi}|du>)/sqrt(2), the
    unique state annihilated by both S_phi and S_phi^dagger.
    """
    closed = (1.0 - np.exp(-1j * phi)) / 2.0
    # explicit two-atom check in the (|dd>, |du>, |ud>, |uu>) product basis
    up_down = np.zeros(4, dtype=complex)
    up_down[2] = 1.0
    down_up = np.zeros(4, dtype=complex)
    down_up[1] = 1.0
    plus_x = (up_down + down_up) / np.sqrt(2)
    singlet = (up_down - np.exp(1j * phi) * down_up) / np.sqrt(2)
    explicit = complex(singlet.conj() @ plus_x)
    if abs(explicit - closed) > 1e-12:
        raise AssertionError(
            f"singlet overlap cross-check failed: closed {closed}, explicit {explicit}"
        )
    return closed


def symmetry_residuals(model: LindbladModel, A: np.ndarray) -> dict:
    """Commutator residuals certifying (or refuting) a strong symmetry.

    Returns max-norms of [A, H] and of [A, L_k] for every jump operator; all
    below 1e-10 certifies that A generates a strong symmetry of the model.
    """
    A = np.asarray(A, dtype=complex)
    d = model.dimension
    if A.shape != (d, d):
        raise ValueError(f"symmetry generator shape {A.shape} does not match dimension {d}")
    h_residual = max_abs(A @ model.H - model.H @ A)
    jump_residuals = [max_abs(A @ L - L @ A) for _, L in model.jumps]
    return {"h_residual": h_residual, "jump_residuals": jump_residuals}
