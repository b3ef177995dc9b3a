"""Unit tests for Hilbert-space descriptors and collective operators."""

import math

import numpy as np
import pytest

from phasesym.operators import (
    HilbertSpace,
    collective_operators,
    commutator,
    dagger,
    gell_mann_basis,
    herm_defect,
    kron,
    spin_matrices,
)

RNG = np.random.default_rng(20260823)


def test_spin_matrices_su2_algebra():
    for j in (0.5, 1.0, 1.5, 4.0):
        m = spin_matrices(j)
        dim = int(round(2 * j + 1))
        assert m["Jz"].shape == (dim, dim)
        # [Jx, Jy] = i Jz and cyclic
        assert np.allclose(commutator(m["Jx"], m["Jy"]), 1j * m["Jz"], atol=1e-12)
        assert np.allclose(commutator(m["Jy"], m["Jz"]), 1j * m["Jx"], atol=1e-12)
        # Casimir J^2 = j(j+1) I
        j2 = m["Jx"] @ m["Jx"] + m["Jy"] @ m["Jy"] + m["Jz"] @ m["Jz"]
        assert np.allclose(j2, j * (j + 1) * np.eye(dim), atol=1e-12)
        # ladder operators
        assert np.allclose(m["Jplus"], m["Jx"] + 1j * m["Jy"], atol=1e-12)
        assert np.allclose(m["Jminus"], dagger(m["Jplus"]), atol=1e-12)
        # basis ordered from m = -j upward
        assert np.allclose(np.diag(m["Jz"]), np.arange(-j, j + 1), atol=1e-12)


def test_gell_mann_basis_orthonormality():
    basis = gell_mann_basis()
    assert len(basis) == 8
    for a, la in enumerate(basis):
        assert herm_defect(la) < 1e-15
        assert abs(np.trace(la)) < 1e-15
        for b, lb in enumerate(basis):
            expected = 0.5 if a == b else 0.0
            assert abs(np.trace(la @ lb) - expected) < 1e-14


def test_two_species_collective_structure():
    phi = 0.7
    space = HilbertSpace(kind="two-species-collective", N_A=2, N_B=2)
    ops = collective_operators(space, phi)
    assert space.dimension == 9
    # the phase-twisted lowering operator is S^-_A + e^{-i phi} S^-_B
    assert np.allclose(
        ops["S_phi"], ops["SminusA"] + np.exp(-1j * phi) * ops["SminusB"], atol=1e-14
    )
    assert np.allclose(ops["S_phi_dag"], dagger(ops["S_phi"]), atol=1e-14)
    # SU(2) algebra of the twisted collective spin
    assert np.allclose(
        commutator(ops["Sz_phi"], ops["S_phi"]), -ops["S_phi"], atol=1e-12
    )
    assert np.allclose(
        commutator(ops["S_phi"], ops["S_phi_dag"]), -2 * ops["Sz_phi"], atol=1e-12
    )
    # Casimir commutes with all three generators
    for name in ("S_phi", "S_phi_dag", "Sz_phi"):
        assert np.max(np.abs(commutator(ops["S2_phi"], ops[name]))) < 1e-12


def test_two_species_full_matches_pauli_tensor_oracle():
    """One atom per species: compare against hand-built Pauli tensors."""
    phi = 1.3
    space = HilbertSpace(kind="two-species-full", N_A=1, N_B=1)
    ops = collective_operators(space, phi)
    sm = np.array([[0, 1], [0, 0]], dtype=complex)  # lowering, basis (down, up)
    sz = np.diag([-0.5, 0.5]).astype(complex)
    eye = np.eye(2)
    s_phi = kron(sm, eye) + np.exp(-1j * phi) * kron(eye, sm)
    assert np.allclose(ops["S_phi"], s_phi, atol=1e-14)
    assert np.allclose(ops["SzA"], kron(sz, eye), atol=1e-14)
    assert np.allclose(ops["SzB"], kron(eye, sz), atol=1e-14)


def test_three_level_dark_state_annihilated():
    phi = 2 * math.pi / 3
    space = HilbertSpace(kind="three-level-full", N=1)
    ops = collective_operators(space, phi)
    # basis (|A>, |0>, |B>); dark single-atom state (|B> - e^{-i phi}|A>)/sqrt(2)
    dark = np.array([-np.exp(-1j * phi), 0.0, 1.0]) / math.sqrt(2)
    assert np.max(np.abs(ops["Lambda_phi"] @ dark)) < 1e-14
    bright = np.array([np.exp(-1j * phi), 0.0, 1.0]) / math.sqrt(2)
    assert np.max(np.abs(ops["Lambda_phi"] @ bright)) > 0.5


def test_three_level_exchange_unitary():
    phi = 0.9
    space = HilbertSpace(kind="three-level-full", N=2)
    ops = collective_operators(space, phi)
    t = ops["T_phi"]
    d = space.dimension
    # summed single-site generator: Hermitian with integer spectrum in [-N, N]
    assert herm_defect(t) < 1e-13
    vals = np.linalg.eigvalsh(t)
    assert np.allclose(vals, np.round(vals), atol=1e-12)
    assert np.all(np.abs(vals) <= 2 + 1e-12)
    # single-site building block is a Hermitian involution
    tau = collective_operators(HilbertSpace(kind="three-level-full", N=1), phi)["T_phi"]
    assert np.allclose(tau @ tau, np.eye(3), atol=1e-14)
    assert herm_defect(tau) < 1e-15
    # exchange symmetry commutes with the twisted jump operator
    assert np.max(np.abs(commutator(t, ops["Lambda_phi"]))) < 1e-12
    # species populations sum to atom number
    n_total = ops["N_A"] + ops["N_0"] + ops["N_B"]
    assert np.allclose(n_total, 2 * np.eye(d), atol=1e-13)


def test_cavity_space_bosonic_operators():
    space = HilbertSpace(
        kind="with-cavity", N_A=1, N_B=1, N=2, n_max=6, base_kind="two-species-collective"
    )
    ops = collective_operators(space, 0.0)
    a, ad = ops["a"], ops["a_dag"]
    comm = commutator(a, ad)
    d = space.dimension
    # canonical commutator holds except at the truncated photon level
    # (photon index is the fast tensor factor)
    diag = np.real(np.diag(comm))
    keep = np.array([i % 7 != 6 for i in range(d)])
    assert np.allclose(diag[keep], 1.0, atol=1e-13)
    assert np.allclose(diag[~keep], -6.0, atol=1e-13)
    assert np.allclose(ops["n_photon"], ad @ a, atol=1e-13)
    # atomic operators act trivially on the photon factor
    assert np.max(np.abs(commutator(ops["SzA"], ops["n_photon"]))) < 1e-13


def test_dimension_budget_enforced():
    space = HilbertSpace(kind="three-level-full", N=12)
    with pytest.raises(MemoryError):
        collective_operators(space, 0.0, entry_budget=1000)


def test_herm_defect():
    h = RNG.normal(size=(5, 5)) + 1j * RNG.normal(size=(5, 5))
    h = h + dagger(h)
    assert herm_defect(h) < 1e-15
    h[0, 1] += 1e-3
    assert herm_defect(h) > 1e-4
