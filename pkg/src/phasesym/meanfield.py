"""Semiclassical (thermodynamic-limit) dynamics.

Two-species model: Bloch vectors s_A, s_B plus the rescaled cavity field
alpha = <a>/sqrt(N). Three-level model: the eight single-atom Gell-Mann
expectations plus alpha, with operator products factorized as products of
expectations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .lindblad import Trajectory
from .models import ModelParams
from .operators import gell_mann_basis

__all__ = [
    "MeanFieldState2S",
    "MeanFieldState3L",
    "mf_rhs",
    "mf_jacobian",
    "mf_evolve",
    "three_level_initial_expectations",
    "casimir_c2",
    "casimir_c3",
    "symmetric_structure_constants",
]


@dataclass
class MeanFieldState2S:
    """Rescaled field alpha = <a>/sqrt(N) and per-species Bloch vectors."""

    alpha: complex
    sA: np.ndarray
    sB: np.ndarray

    def pack(self) -> np.ndarray:
        return np.concatenate(([self.alpha.real, self.alpha.imag], self.sA, self.sB))

    @staticmethod
    def unpack(y: np.ndarray) -> "MeanFieldState2S":
        return MeanFieldState2S(alpha=complex(y[0], y[1]), sA=np.array(y[2:5]), sB=np.array(y[5:8]))


@dataclass
class MeanFieldState3L:
    """Rescaled field alpha plus the single-atom Gell-Mann expectation vector."""

    alpha: complex
    lambda_exp: np.ndarray

    def pack(self) -> np.ndarray:
        return np.concatenate(([self.alpha.real, self.alpha.imag], self.lambda_exp))

    @staticmethod
    def unpack(y: np.ndarray) -> "MeanFieldState3L":
        return MeanFieldState3L(alpha=complex(y[0], y[1]), lambda_exp=np.array(y[2:10]))


def _rhs_two_species(y: np.ndarray, p: ModelParams) -> np.ndarray:
    al = complex(y[0], y[1])
    sAx, sAy, sAz, sBx, sBy, sBz = y[2:8]
    g, phi, dA, dB = p.g, p.phi, p.delta_A, p.delta_B
    eip = np.exp(1j * phi)
    eim = np.exp(-1j * phi)
    # field combinations entering the Bloch equations
    u = 1j * (al - al.conjugate())  # i(alpha - alpha*)
    v = al + al.conjugate()
    uB = 1j * (eip * al - eim * al.conjugate())
    vB = eim * al.conjugate() + eip * al
    dsAx = -dA * sAy + g * sAz * u
    dsBx = -dB * sBy + g * sBz * uB.real
    dsAy = dA * sAx - g * sAz * v
    dsBy = dB * sBx - g * sBz * vB.real
    dsAz = -g * sAx * u + g * sAy * v
    dsBz = -g * sBx * uB.real + g * sBy * vB.real
    dal = (
        -(1j * p.delta_c + p.kappa / 2) * al
        - (g / 2) * (1j * (sAx + eim * sBx) + (sAy + eim * sBy))
        + p.eta
    )
    return np.array([dal.real, dal.imag, dsAx.real, dsAy.real, dsAz.real, dsBx, dsBy, dsBz])


def _three_level_tensors(phi: float, delta_A: float, delta_B: float):
    """Coefficient tensors of the factorized three-level equations.

    With rho = I/3 + 2 sum_b <l_b> l_b and h = g(alpha L^dag + alpha* L)
    + Delta_A N_A + Delta_B N_B (L the collective lowering operator per atom,
    L = |0><A| + e^{-i phi}|0><B|), the Gell-Mann derivatives are
    d<l>/dt = (g alpha A + g alpha* B + C) <l>; the field source vector is
    v_b = 2 Tr(l_b L), so <L> = v . <l>.
    """
    lam = _GELL_MANN
    L = np.zeros((3, 3), dtype=complex)
    L[1, 0] = 1.0  # |0><A| in the (A, 0, B) basis
    L[1, 2] = np.exp(-1j * phi)  # e^{-i phi} |0><B|
    n_a = np.diag([1.0, 0.0, 0.0]).astype(complex)
    n_b = np.diag([0.0, 0.0, 1.0]).astype(complex)
    h_det = delta_A * n_a + delta_B * n_b
    Ld = L.conj().T
    A = np.empty((8, 8), dtype=complex)
    B = np.empty((8, 8), dtype=complex)
    C = np.empty((8, 8), dtype=complex)
    v = np.empty(8, dtype=complex)
    for a in range(8):
        for b in range(8):
            A[a, b] = 2j * np.trace(lam[b] @ (Ld @ lam[a] - lam[a] @ Ld))
            B[a, b] = 2j * np.trace(lam[b] @ (L @ lam[a] - lam[a] @ L))
            C[a, b] = 2j * np.trace(lam[b] @ (h_det @ lam[a] - lam[a] @ h_det))
        v[a] = 2 * np.trace(lam[a] @ L)
    return A, B, C, v


_TENSOR_CACHE: dict[tuple[float, float, float], tuple] = {}


def _rhs_three_level(y: np.ndarray, p: ModelParams) -> np.ndarray:
    al = complex(y[0], y[1])
    lv = y[2:10]
    key = (p.phi, p.delta_A, p.delta_B)
    tensors = _TENSOR_CACHE.get(key)
    if tensors is None:
        tensors = _TENSOR_CACHE[key] = _three_level_tensors(*key)
        if len(_TENSOR_CACHE) > 256:
            _TENSOR_CACHE.clear()
    A, B, C, v = tensors
    dlam = (p.g * al * A + p.g * al.conjugate() * B + C) @ lv
    dal = -(1j * p.delta_c + p.kappa / 2) * al - 1j * p.g * np.dot(v, lv) + p.eta
    return np.concatenate(([dal.real, dal.imag], dlam.real))


def mf_rhs(kind: str, state, p: ModelParams):
    """Time derivative of a mean-field state; kind is 'two-species' or 'three-level'."""
    y = state.pack() if not isinstance(state, np.ndarray) else state
    if not np.all(np.isfinite(y)):
        raise ValueError("non-finite mean-field state")
    if kind == "two-species":
        dy = _rhs_two_species(y, p)
        return MeanFieldState2S.unpack(dy) if not isinstance(state, np.ndarray) else dy
    if kind == "three-level":
        dy = _rhs_three_level(y, p)
        return MeanFieldState3L.unpack(dy) if not isinstance(state, np.ndarray) else dy
    raise ValueError(f"unknown mean-field kind {kind!r}")


def mf_jacobian(kind: str, state, p: ModelParams) -> np.ndarray:
    """Analytic Jacobian of the packed mean-field right-hand side.

    Derived independently of the RHS code (partial derivatives of the
    equations of motion), so agreement with finite differences of
    ``mf_rhs`` cross-checks every transcribed term.
    """
    y = state.pack() if not isinstance(state, np.ndarray) else np.asarray(state, dtype=float)
    if kind == "two-species":
        ar, ai, sAx, sAy, sAz, sBx, sBy, sBz = y
        g, c, s = p.g, np.cos(p.phi), np.sin(p.phi)
        dA, dB = p.delta_A, p.delta_B
        # field quadratures: u_A = -2 ai, v_A = 2 ar,
        # u_B = -2(ar s + ai c), v_B = 2(ar c - ai s)
        uA, vA = -2 * ai, 2 * ar
        uB, vB = -2 * (ar * s + ai * c), 2 * (ar * c - ai * s)
        J = np.zeros((8, 8))
        J[0, 0], J[0, 1] = -p.kappa / 2, p.delta_c
        J[0, 3], J[0, 5], J[0, 6] = -g / 2, -(g / 2) * s, -(g / 2) * c
        J[1, 0], J[1, 1] = -p.delta_c, -p.kappa / 2
        J[1, 2], J[1, 5], J[1, 6] = -g / 2, -(g / 2) * c, (g / 2) * s
        J[2, 1], J[2, 3], J[2, 4] = -2 * g * sAz, -dA, g * uA
        J[3, 0], J[3, 2], J[3, 4] = -2 * g * sAz, dA, -g * vA
        J[4, 0], J[4, 1] = 2 * g * sAy, 2 * g * sAx
        J[4, 2], J[4, 3] = -g * uA, g * vA
        J[5, 0], J[5, 1] = -2 * g * sBz * s, -2 * g * sBz * c
        J[5, 6], J[5, 7] = -dB, g * uB
        J[6, 0], J[6, 1] = -2 * g * sBz * c, 2 * g * sBz * s
        J[6, 5], J[6, 7] = dB, -g * vB
        J[7, 0] = 2 * g * (sBx * s + sBy * c)
        J[7, 1] = 2 * g * (sBx * c - sBy * s)
        J[7, 5], J[7, 6] = -g * uB, g * vB
        return J
    if kind == "three-level":
        ar, ai = y[0], y[1]
        lv = y[2:10]
        al = complex(ar, ai)
        A, B, C, v = _three_level_tensors(p.phi, p.delta_A, p.delta_B)
        J = np.zeros((10, 10))
        J[0, 0], J[0, 1] = -p.kappa / 2, p.delta_c
        J[1, 0], J[1, 1] = -p.delta_c, -p.kappa / 2
        J[0, 2:] = p.g * v.imag  # Re(-i g v_b)
        J[1, 2:] = -p.g * v.real  # Im(-i g v_b)
        M = p.g * al * A + p.g * al.conjugate() * B + C
        J[2:, 2:] = M.real
        J[2:, 0] = (p.g * (A + B) @ lv).real
        J[2:, 1] = (1j * p.g * (A - B) @ lv).real
        return J
    raise ValueError(f"unknown mean-field kind {kind!r}")


_GELL_MANN = gell_mann_basis()


def symmetric_structure_constants() -> np.ndarray:
    """d_abc = Tr({l_a, l_b} l_c)/4 computed from the matrices (no tables)."""
    d = np.zeros((8, 8, 8))
    for a in range(8):
        for b in range(8):
            anti = _GELL_MANN[a] @ _GELL_MANN[b] + _GELL_MANN[b] @ _GELL_MANN[a]
            for c in range(8):
                d[a, b, c] = np.trace(anti @ _GELL_MANN[c]).real / 4
    return d


_D_ABC = symmetric_structure_constants()


def casimir_c2(lambda_exp: np.ndarray) -> float:
    """Squared Gell-Mann expectation vector length (pure-state maximum 1/3)."""
    return float(np.dot(lambda_exp, lambda_exp))


def casimir_c3(lambda_exp: np.ndarray) -> float:
    """Cubic invariant sum_abc d_abc <l_a><l_b><l_c>."""
    return float(np.einsum("abc,a,b,c->", _D_ABC, lambda_exp, lambda_exp, lambda_exp))


def three_level_initial_expectations(
    c_plus: float, c_minus: float, phi_state: float
) -> MeanFieldState3L:
    """Gell-Mann expectations of the bright/dark superposition family.

    The single-atom state is psi = c+|+> + c-|-> + c0|0>
    with |+-> = (|B> +- e^{-i phi_state}|A>)/sqrt(2) and
    c0 = sqrt(1 - c+^2 - c-^2); the expectations retain the bright-dark
    coherences of the superposition. ``phi_state`` is the phase at which the
    bright/dark kets are defined and is independent of the dynamics phase.
    """
    c0_sq = 1.0 - c_plus**2 - c_minus**2
    if c0_sq < -1e-12:
        raise ValueError(f"c+^2 + c-^2 = {c_plus ** 2 + c_minus ** 2:g} exceeds 1")
    c0 = np.sqrt(max(c0_sq, 0.0))
    # basis (|A>, |0>, |B>)
    ket0 = np.array([0, 1, 0], dtype=complex)
    ketp = np.array([np.exp(-1j * phi_state), 0, 1], dtype=complex) / np.sqrt(2)
    ketm = np.array([-np.exp(-1j * phi_state), 0, 1], dtype=complex) / np.sqrt(2)
    psi = c_plus * ketp + c_minus * ketm + c0 * ket0
    rho1 = np.outer(psi, psi.conj())
    lam = np.array([np.trace(rho1 @ l).real for l in _GELL_MANN])
    return MeanFieldState3L(alpha=0.0 + 0.0j, lambda_exp=lam)


def _populations(lam: np.ndarray) -> tuple[float, float, float]:
    s3 = np.sqrt(3.0)
    n_a = 1 / 3 + lam[2] + lam[7] / s3
    n_0 = 1 / 3 - lam[2] + lam[7] / s3
    n_b = 1 / 3 - 2 * lam[7] / s3
    return n_a, n_0, n_b


def mf_evolve(
    kind: str,
    init,
    p: ModelParams,
    t_final: float,
    sample_count: int = 4096,
    rtol: float = 1e-9,
    atol: float = 1e-12,
    method: str = "RK45",
    conservation_abort: float = 1e-4,
) -> Trajectory:
    """Integrate the mean-field equations, sampling uniformly in t (1/kappa units).

    Records the raw state series plus derived populations, and conservation
    diagnostics (spin lengths for two-species; c2 and c3 for three-level).
    Aborts when a conserved quantity drifts beyond ``conservation_abort``.
    """
    y0 = init.pack()
    times = np.linspace(0.0, t_final, sample_count)
    if kind == "two-species":
        rhs = lambda t, y: _rhs_two_species(y, p)
    elif kind == "three-level":
        rhs = lambda t, y: _rhs_three_level(y, p)
    else:
        raise ValueError(f"unknown mean-field kind {kind!r}")
    sol = solve_ivp(rhs, (0.0, t_final), y0, t_eval=times, method=method, rtol=rtol, atol=atol)
    if not sol.success:
        raise RuntimeError(f"mean-field integration failed: {sol.message}")
    y = sol.y
    obs: dict[str, np.ndarray] = {
        "alpha_re": y[0],
        "alpha_im": y[1],
    }
    diagnostics: dict[str, float | bool] = {}
    if kind == "two-species":
        obs.update(
            sAx=y[2], sAy=y[3], sAz=y[4], sBx=y[5], sBy=y[6], sBz=y[7], sz_total=y[4] + y[7]
        )
        lenA = y[2] ** 2 + y[3] ** 2 + y[4] ** 2
        lenB = y[5] ** 2 + y[6] ** 2 + y[7] ** 2
        driftA = float(np.max(np.abs(lenA - lenA[0])))
        driftB = float(np.max(np.abs(lenB - lenB[0])))
        diagnostics["spin_length_drift"] = max(driftA, driftB)
        if diagnostics["spin_length_drift"] > conservation_abort:
            raise RuntimeError(
                f"spin-length conservation violated (drift {diagnostics['spin_length_drift']:.2e}); "
                "tighten integrator tolerances"
            )
    else:
        for a in range(8):
            obs[f"lam{a + 1}"] = y[2 + a]
        lam_t = y[2:10]
        n_a, n_0, n_b = _populations(lam_t)
        obs.update(N_A=n_a, N_0=n_0, N_B=n_b)
        c2 = np.einsum("at,at->t", lam_t, lam_t)
        c3 = np.einsum("abc,at,bt,ct->t", _D_ABC, lam_t, lam_t, lam_t)
        diagnostics["c2_drift"] = float(np.max(np.abs(c2 - c2[0])))
        diagnostics["c3_drift"] = float(np.max(np.abs(c3 - c3[0])))
        if max(diagnostics["c2_drift"], diagnostics["c3_drift"]) > conservation_abort:
            raise RuntimeError(
                f"Casimir conservation violated (c2 drift {diagnostics['c2_drift']:.2e}, "
                f"c3 drift {diagnostics['c3_drift']:.2e}); tighten integrator tolerances"
            )
    return Trajectory(times=times, observables=obs, diagnostics=diagnostics)
