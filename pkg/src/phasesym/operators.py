"""Dense operator construction: spin matrices, Gell-Mann matrices, tensor
algebra, and the collective phase-dependent operators of both models.

All operators are plain ``numpy.ndarray`` objects with ``complex128`` entries.
The three-level single-atom basis is ordered ``(|A>, |0>, |B>)`` so that the
population combinations N_A = I/3 + l3 + l8/sqrt(3), N_0 = I/3 - l3 + l8/sqrt(3)
and N_B = I/3 - 2 l8/sqrt(3) come out diagonal in the natural order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

__all__ = [
    "DimensionError",
    "HilbertSpace",
    "kron",
    "dagger",
    "commutator",
    "anticommutator",
    "tensor_algebra",
    "spin_matrices",
    "gell_mann_basis",
    "collective_operators",
    "herm_defect",
    "max_abs",
]

# Refuse to allocate operator sets whose largest matrix exceeds this many
# entries (dense complex128); keeps accidental N blowups from taking the
# machine down.
DEFAULT_ENTRY_BUDGET = 64_000_000


class DimensionError(ValueError):
    """Raised when operator shapes are not conformable for the requested op."""


def max_abs(m: np.ndarray) -> float:
    """Largest absolute entry of a matrix (max-norm used in all certificates)."""
    return 0.0 if m.size == 0 else float(np.max(np.abs(m)))


def herm_defect(m: np.ndarray) -> float:
    """max-norm of M - M^dagger."""
    return max_abs(m - m.conj().T)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def dagger(a: np.ndarray) -> np.ndarray:
    return np.asarray(a, dtype=complex).conj().T


def _check_square_pair(a: np.ndarray, b: np.ndarray, op: str) -> None:
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimensionError(
            f"{op} requires two square matrices of equal shape, got {a.shape} and {b.shape}"
        )


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    _check_square_pair(a, b, "commutator")
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    _check_square_pair(a, b, "anticommutator")
    return a @ b + b @ a


def tensor_algebra(op: str, a: np.ndarray, b: np.ndarray | None = None) -> np.ndarray:
    """Dispatch form of the elementary operator algebra.

    ``op`` is one of ``kron``, ``dagger``, ``commutator``, ``anticommutator``.
    ``dagger`` is unary; the rest are binary.
    """
    a = np.asarray(a, dtype=complex)
    if op == "dagger":
        return dagger(a)
    if b is None:
        raise DimensionError(f"{op} needs a second operand")
    b = np.asarray(b, dtype=complex)
    if op == "kron":
        return kron(a, b)
    if op == "commutator":
        return commutator(a, b)
    if op == "anticommutator":
        return anticommutator(a, b)
    raise ValueError(f"unknown tensor_algebra op {op!r}")


def spin_matrices(j: float) -> dict[str, np.ndarray]:
    """Spin-j matrices in the Jz eigenbasis ordered from m = -j to +j.

    Returns Jx, Jy, Jz, Jplus, Jminus of dimension 2j+1 with
    Jplus[m+1, m] = sqrt(j(j+1) - m(m+1)).
    """
    twoj = 2 * j
    if j < 0 or abs(twoj - round(twoj)) > 1e-12:
        raise ValueError(f"j must be a non-negative half-integer, got {j}")
    dim = int(round(twoj)) + 1
    m = -j + np.arange(dim)
    jz = np.diag(m).astype(complex)
    jp = np.zeros((dim, dim), dtype=complex)
    for k in range(dim - 1):
        jp[k + 1, k] = np.sqrt(j * (j + 1) - m[k] * (m[k] + 1))
    jm = jp.conj().T
    return {
        "Jx": (jp + jm) / 2,
        "Jy": (jp - jm) / (2 * 1j),
        "Jz": jz,
        "Jplus": jp,
        "Jminus": jm,
    }


def gell_mann_basis() -> list[np.ndarray]:
    """The eight SU(3) generators, normalized to Tr(l_a l_b) = delta_ab / 2.

    This carries an overall factor 1/2 relative to the textbook Gell-Mann
    matrices. Basis ordering of the 3-dim space is (|A>, |0>, |B>).
    """
    l = np.zeros((8, 3, 3), dtype=complex)
    l[0] = [[0, 1, 0], [1, 0, 0], [0, 0, 0]]
    l[1] = [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]]
    l[2] = [[1, 0, 0], [0, -1, 0], [0, 0, 0]]
    l[3] = [[0, 0, 1], [0, 0, 0], [1, 0, 0]]
    l[4] = [[0, 0, -1j], [0, 0, 0], [1j, 0, 0]]
    l[5] = [[0, 0, 0], [0, 0, 1], [0, 1, 0]]
    l[6] = [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]]
    l[7] = np.diag([1, 1, -2]) / np.sqrt(3)
    return [li / 2 for li in l]


@dataclass(frozen=True)
class HilbertSpace:
    """Descriptor of the finite-dimensional spaces used throughout.

    kind: one of 'two-species-collective', 'two-species-full',
    'three-level-full', 'with-cavity'. For 'with-cavity', ``base_kind`` names
    the atomic factor and ``n_max`` the photon truncation.
    """

    kind: str
    N_A: int = 0
    N_B: int = 0
    N: int = 0
    n_max: int | None = None
    base_kind: str | None = None

    def __post_init__(self):
        if self.kind in ("two-species-collective", "two-species-full"):
            if self.N and not (self.N_A or self.N_B):
                if self.N % 2:
                    raise ValueError("two-species N must be even when N_A, N_B not given")
                object.__setattr__(self, "N_A", self.N // 2)
                object.__setattr__(self, "N_B", self.N // 2)
            elif not self.N:
                object.__setattr__(self, "N", self.N_A + self.N_B)
            if self.kind == "two-species-collective" and self.N_A != self.N_B:
                raise ValueError("collective two-species space requires N_A == N_B")
        elif self.kind == "three-level-full":
            if self.N < 1:
                raise ValueError("three-level space needs N >= 1")
        elif self.kind == "with-cavity":
            if self.n_max is None or self.n_max < 0:
                raise ValueError("with-cavity space needs n_max >= 0")
            if self.base_kind not in (
                "two-species-collective",
                "two-species-full",
                "three-level-full",
            ):
                raise ValueError(f"unknown base_kind {self.base_kind!r}")
        else:
            raise ValueError(f"unknown Hilbert space kind {self.kind!r}")

    @property
    def atomic(self) -> "HilbertSpace":
        """The atomic factor (self unless kind == 'with-cavity')."""
        if self.kind != "with-cavity":
            return self
        return HilbertSpace(kind=self.base_kind, N_A=self.N_A, N_B=self.N_B, N=self.N)

    @property
    def dimension(self) -> int:
        if self.kind == "two-species-collective":
            return (self.N // 2 + 1) ** 2
        if self.kind == "two-species-full":
            return 2 ** (self.N_A + self.N_B)
        if self.kind == "three-level-full":
            return 3**self.N
        return self.atomic.dimension * (self.n_max + 1)


def _site_embed(local_ops: list[np.ndarray], site: int, n_sites: int, d: int) -> np.ndarray:
    """Embed a product of local operators (all identity except ``site``)."""
    eye = np.eye(d, dtype=complex)
    factors = [local_ops[0] if k == site else eye for k in range(n_sites)]
    return reduce(np.kron, factors)


def _sum_single_site(local: np.ndarray, n_sites: int) -> np.ndarray:
    d = local.shape[0]
    total = np.zeros((d**n_sites, d**n_sites), dtype=complex)
    for site in range(n_sites):
        total += _site_embed([local], site, n_sites, d)
    return total


def _phase_spin_set(s_minus_A: np.ndarray, s_minus_B: np.ndarray, phi: float) -> dict[str, np.ndarray]:
    s_phi = s_minus_A + np.exp(-1j * phi) * s_minus_B
    s_phi_dag = s_phi.conj().T
    sz_phi = (s_phi_dag @ s_phi - s_phi @ s_phi_dag) / 2
    s2_phi = (s_phi @ s_phi_dag + s_phi_dag @ s_phi) / 2 + sz_phi @ sz_phi
    return {"S_phi": s_phi, "S_phi_dag": s_phi_dag, "Sz_phi": sz_phi, "S2_phi": s2_phi}


def collective_operators(
    space: HilbertSpace, phi: float, entry_budget: int = DEFAULT_ENTRY_BUDGET
) -> dict[str, np.ndarray]:
    """Named collective operators on ``space`` for coupling phase ``phi``.

    two-species spaces get S{x,y,z,plus,minus}{A,B}, S_phi, S_phi_dag, Sz_phi,
    S2_phi; three-level spaces get Lambda_{A,B}, Lambda_phi, N_{A,0,B} and the
    symmetry generator T_phi.
    """
    dim = space.dimension
    if dim * dim > entry_budget:
        raise MemoryError(
            f"space {space.kind} dimension {dim} exceeds entry budget "
            f"({dim * dim} > {entry_budget}); raise entry_budget explicitly if intended"
        )
    if space.kind == "two-species-collective":
        s = space.N / 4  # each species carries a maximal collective spin N/4
        jm = spin_matrices(s)
        eye = np.eye(int(round(2 * s)) + 1, dtype=complex)
        ops: dict[str, np.ndarray] = {}
        for name, mat in jm.items():
            suffix = {"Jx": "x", "Jy": "y", "Jz": "z", "Jplus": "plus", "Jminus": "minus"}[name]
            ops[f"S{suffix}A"] = np.kron(mat, eye)
            ops[f"S{suffix}B"] = np.kron(eye, mat)
        ops.update(_phase_spin_set(ops["SminusA"], ops["SminusB"], phi))
        return ops
    if space.kind == "two-species-full":
        n_sites = space.N_A + space.N_B
        sm = np.array([[0, 1], [0, 0]], dtype=complex)  # site basis (|down>, |up>)
        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
        sz = np.array([[-1, 0], [0, 1]], dtype=complex)
        ops = {}
        for species, sites in (("A", range(space.N_A)), ("B", range(space.N_A, n_sites))):
            for suffix, local in (("x", sx / 2), ("y", sy / 2), ("z", sz / 2), ("minus", sm), ("plus", sm.conj().T)):
                total = np.zeros((dim, dim), dtype=complex)
                for site in sites:
                    total += _site_embed([local], site, n_sites, 2)
                ops[f"S{suffix}{species}"] = total
        ops.update(_phase_spin_set(ops["SminusA"], ops["SminusB"], phi))
        return ops
    if space.kind == "three-level-full":
        n = space.N
        # single-atom basis (|A>, |0>, |B>)
        lam_a = np.zeros((3, 3), dtype=complex)
        lam_a[1, 0] = 1.0  # |0><A|
        lam_b = np.zeros((3, 3), dtype=complex)
        lam_b[1, 2] = 1.0  # |0><B|
        tau = np.zeros((3, 3), dtype=complex)
        tau[1, 1] = 1.0
        tau[0, 2] = np.exp(-1j * phi)  # |A><B|
        tau[2, 0] = np.exp(1j * phi)  # |B><A|
        proj = {
            "N_A": np.diag([1, 0, 0]).astype(complex),
            "N_0": np.diag([0, 1, 0]).astype(complex),
            "N_B": np.diag([0, 0, 1]).astype(complex),
        }
        ops = {
            "Lambda_A": _sum_single_site(lam_a, n),
            "Lambda_B": _sum_single_site(lam_b, n),
            "T_phi": _sum_single_site(tau, n),
        }
        for name, p in proj.items():
            ops[name] = _sum_single_site(p, n)
        ops["Lambda_phi"] = ops["Lambda_A"] + np.exp(-1j * phi) * ops["Lambda_B"]
        ops["Lambda_phi_dag"] = ops["Lambda_phi"].conj().T
        return ops
    if space.kind == "with-cavity":
        at = collective_operators(space.atomic, phi, entry_budget=entry_budget)
        nph = space.n_max + 1
        eye_ph = np.eye(nph, dtype=complex)
        a = np.diag(np.sqrt(np.arange(1, nph)), k=1).astype(complex)
        ops = {name: np.kron(op, eye_ph) for name, op in at.items()}
        eye_at = np.eye(space.atomic.dimension, dtype=complex)
        ops["a"] = np.kron(eye_at, a)
        ops["a_dag"] = ops["a"].conj().T
        ops["n_photon"] = ops["a_dag"] @ ops["a"]
        leak = np.zeros((nph, nph), dtype=complex)
        leak[-1, -1] = 1.0
        ops["leak"] = np.kron(eye_at, leak)
        return ops
    raise ValueError(f"unknown Hilbert space kind {space.kind!r}")
