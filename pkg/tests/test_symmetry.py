"""Unit tests for sector decompositions, conserved weights, and certificates."""

import math

import numpy as np
import pytest

from phasesym.models import ModelParams, build_model
from phasesym.operators import HilbertSpace, collective_operators, kron
from phasesym.symmetry import (
    bright_dark_weights,
    casimir_sectors,
    sector_weights,
    singlet_overlap,
    symmetry_residuals,
    tau_eigensystem,
)

RNG = np.random.default_rng(11)


def _plus_x_product(n_per_species: int) -> np.ndarray:
    """|+x>^N in the collective two-species product basis."""
    from phasesym.operators import spin_matrices

    j = n_per_species / 2
    m = spin_matrices(j)
    vals, vecs = np.linalg.eigh(m["Jx"])
    ket = vecs[:, np.argmax(vals)]
    ket = ket * np.exp(-1j * np.angle(ket[np.argmax(np.abs(ket))]))
    return kron(ket, ket)


def test_projectors_resolve_identity():
    space = HilbertSpace(kind="two-species-collective", N_A=2, N_B=2)
    for phi in (0.0, 0.8, math.pi):
        sec = casimir_sectors(space, phi)
        total = sum(sec.projectors)
        assert np.allclose(total, np.eye(space.dimension), atol=1e-10)
        for i, pi in enumerate(sec.projectors):
            assert np.allclose(pi @ pi, pi, atol=1e-10)
            for pj in sec.projectors[i + 1 :]:
                assert np.max(np.abs(pi @ pj)) < 1e-10
        # two maximal species spins j = 1 couple to S in {0, 1, 2}
        assert np.allclose(sorted(sec.labels), [s * (s + 1) for s in range(3)], atol=1e-9)


def test_sector_weights_sum_to_one():
    space = HilbertSpace(kind="two-species-collective", N_A=2, N_B=2)
    sec = casimir_sectors(space, 0.6)
    psi = RNG.normal(size=space.dimension) + 1j * RNG.normal(size=space.dimension)
    psi /= np.linalg.norm(psi)
    rep = sector_weights(psi, sec)
    assert abs(sum(rep.weights.values()) - 1.0) < 1e-10
    assert 0.0 <= rep.w_max <= 1.0
    assert abs(rep.complement - (1.0 - rep.w_max)) < 1e-12


def test_plus_x_product_is_maximal_sector_at_zero_phase():
    for n in (4, 8):
        space = HilbertSpace(kind="two-species-collective", N_A=n // 2, N_B=n // 2)
        sec = casimir_sectors(space, 0.0)
        rep = sector_weights(_plus_x_product(n // 2), sec)
        s_max = n / 2
        label_max = max(sec.labels)
        assert abs(label_max - s_max * (s_max + 1)) < 1e-9
        assert abs(rep.weights[label_max] - 1.0) < 1e-10


def test_two_atom_weights_brute_force_oracle():
    """N=2: w_max(phi) against an explicit 4x4 construction."""
    space = HilbertSpace(kind="two-species-collective", N_A=1, N_B=1)
    up = np.array([1.0, 1.0]) / math.sqrt(2)  # |+x> for one spin-1/2, basis (down, up)
    psi = kron(up, up)
    for phi in (0.0, math.pi / 2, math.pi):
        sec = casimir_sectors(space, phi)
        rep = sector_weights(psi, sec)
        # oracle: triplet weight 1 - |<singlet|psi>|^2 with the phi-twisted singlet
        sm = np.array([[0, 1], [0, 0]], dtype=complex)
        eye = np.eye(2)
        s_phi = kron(sm, eye) + np.exp(-1j * phi) * kron(eye, sm)
        # singlet = the state annihilated by both S_phi and S_phi^dag
        ops = [s_phi, s_phi.conj().T]
        stack = np.vstack(ops)
        _, sv, vh = np.linalg.svd(stack)
        null = vh.conj().T[:, -1]
        w_singlet = abs(np.vdot(null, psi)) ** 2
        assert abs(rep.w_max - (1.0 - w_singlet)) < 1e-10
    # the printed special values
    rep0 = sector_weights(psi, casimir_sectors(space, 0.0))
    assert abs(rep0.w_max - 1.0) < 1e-10
    rep_pi = sector_weights(psi, casimir_sectors(space, math.pi))
    assert abs(rep_pi.w_max - 0.5) < 1e-10


def test_singlet_overlap_formula():
    for phi in (0.0, 0.7, math.pi / 2, math.pi):
        val = singlet_overlap(phi)
        assert abs(val - (1 - np.exp(-1j * phi)) / 2) < 1e-12


def test_tau_eigensystem_bright_dark_split():
    for phi in (0.0, 2 * math.pi / 3):
        sec = tau_eigensystem(phi)
        assert sorted(sec.labels) == [-1.0, 1.0]
        total = sum(sec.projectors)
        assert np.allclose(total, np.eye(3), atol=1e-12)
        # dark single-atom state lives in the -1 eigenspace
        dark = np.array([-np.exp(-1j * phi), 0.0, 1.0]) / math.sqrt(2)
        p_minus = sec.projectors[sec.labels.index(-1.0)]
        assert np.linalg.norm(p_minus @ dark - dark) < 1e-12


def test_bright_dark_weights_match_exact_tensor():
    """Closed form against explicit 3^N tensor projection for small N."""
    phi_s, phi_p = 0.3, 1.9
    for n in (1, 2, 3):
        for cp, cm in ((0.5, 0.5), (0.8, 0.1), (0.0, 1.0)):
            wb, wd = bright_dark_weights(cp, cm, n, phi_s, phi_p)
            # exact: psi = c+ |+>^N + c- |->^N + c0 |0>^N with kets at phi_s,
            # projected onto tensor powers of the tau^{phi_p} eigenprojectors
            c0 = math.sqrt(max(0.0, 1 - cp**2 - cm**2))
            bright_s = np.array([np.exp(-1j * phi_s), 0, 1]) / math.sqrt(2)
            dark_s = np.array([-np.exp(-1j * phi_s), 0, 1]) / math.sqrt(2)
            zero = np.array([0.0, 1.0, 0.0], dtype=complex)

            def tensor_power(v, k):
                out = v
                for _ in range(k - 1):
                    out = kron(out, v)
                return out

            psi = (
                cp * tensor_power(bright_s, n)
                + cm * tensor_power(dark_s, n)
                + c0 * tensor_power(zero, n)
            )
            sec = tau_eigensystem(phi_p)
            pb = tensor_power(sec.projectors[sec.labels.index(1.0)], n)
            pd = tensor_power(sec.projectors[sec.labels.index(-1.0)], n)
            assert abs(wb - np.real(np.vdot(psi, pb @ psi))) < 1e-10
            assert abs(wd - np.real(np.vdot(psi, pd @ psi))) < 1e-10


def test_symmetry_residuals_detect_breaking():
    p_sym = ModelParams(N=2, N_A=2, N_B=0, delta_A=0.2, delta_B=0.2, eta=0.1, phi=0.7)
    m = build_model("three-level-effective", p_sym)
    r = symmetry_residuals(m, m.observables["T_phi"])
    assert r["h_residual"] < 1e-10
    assert max(r["jump_residuals"]) < 1e-10
    p_broken = ModelParams(N=2, N_A=2, N_B=0, delta_A=0.2, delta_B=-0.2, eta=0.1, phi=0.7)
    mb = build_model("three-level-effective", p_broken)
    rb = symmetry_residuals(mb, mb.observables["T_phi"])
    assert rb["h_residual"] > 1e-6


def test_spin_casimir_is_strong_symmetry_of_spin_model():
    p = ModelParams(N=4, eta=0.3, phi=1.1, delta_A=0.05, delta_B=0.05)
    m = build_model("spin-only", p)
    ops = collective_operators(m.space, p.phi)
    r = symmetry_residuals(m, ops["S2_phi"])
    assert r["h_residual"] < 1e-10
    assert max(r["jump_residuals"]) < 1e-10
