"""Heisenberg spin networks and their single-excitation walk equivalence.

A network of n spin-1/2 particles on a signed weighted graph, with XYZ
couplings per edge and local z-fields, is built as a dense 2^n matrix in the
z-product basis.  With couplings J_x = J_y = gamma * e_ij and
J_z = (1 - alpha) * gamma * e_ij, the single-excitation block equals
-gamma * (A + (alpha - 1) D) up to an identity multiple, and adding a field
h_a = -1/2 at one site turns that block into the search Hamiltonian with a
rank-1 oracle at a.  Equivalence is always asserted modulo the best-fit
identity multiple, since identity terms only contribute a global phase.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graphs import SignedWeightedGraph
from .linalg import HermitianOperator, QuantumState

SPIN_CAP = 14
BLOCK_TOL = 1e-12

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
IDENTITY2 = np.eye(2)


@dataclass(frozen=True)
class SpinSystem:
    """n spins with per-edge (Jx, Jy, Jz) couplings and per-site z-fields.

    Basis convention: spin 0 is the most significant qubit; within each spin,
    index 0 is up and index 1 is down.
    """

    n: int
    couplings: dict = field(default_factory=dict)  # (i, j) -> (Jx, Jy, Jz)
    fields: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("spin system needs at least one site")
        if self.n > SPIN_CAP:
            raise ValueError(f"spin count {self.n} exceeds cap {SPIN_CAP}")
        norm = {}
        for (i, j), jxyz in self.couplings.items():
            if i == j or not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"bad coupling pair ({i},{j})")
            key = (min(i, j), max(i, j))
            if key in norm:
                raise ValueError(f"duplicate coupling pair {key}")
            norm[key] = tuple(float(x) for x in jxyz)
        object.__setattr__(self, "couplings", norm)
        h = tuple(float(x) for x in self.fields) if self.fields else (0.0,) * self.n
        if len(h) != self.n:
            raise ValueError("fields length must equal spin count")
        object.__setattr__(self, "fields", h)


def _site_operator(op: np.ndarray, site: int, n: int) -> np.ndarray:
    out = np.eye(1)
    for k in range(n):
        out = np.kron(out, op if k == site else IDENTITY2)
    return out


def heisenberg_hamiltonian(sys: SpinSystem) -> HermitianOperator:
    """Dense 2^n Heisenberg Hamiltonian in the z-product basis.

    H = -1/2 sum_{edges} (Jx XX + Jy YY + Jz ZZ) + sum_i h_i Z_i.
    Real symmetric: the YY product is real.
    """
    dim = 2 ** sys.n
    h = np.zeros((dim, dim), dtype=complex)
    for (i, j), (jx, jy, jz) in sys.couplings.items():
        xi, xj = _site_operator(PAULI_X, i, sys.n), _site_operator(PAULI_X, j, sys.n)
        yi, yj = _site_operator(PAULI_Y, i, sys.n), _site_operator(PAULI_Y, j, sys.n)
        zi, zj = _site_operator(PAULI_Z, i, sys.n), _site_operator(PAULI_Z, j, sys.n)
        h -= 0.5 * (jx * xi @ xj + jy * yi @ yj + jz * zi @ zj)
    for i, hi in enumerate(sys.fields):
        if hi != 0.0:
            h += hi * _site_operator(PAULI_Z, i, sys.n)
    if np.abs(h.imag).max() > 0.0:
        raise ArithmeticError("Heisenberg Hamiltonian came out non-real")
    return HermitianOperator(h.real)


def single_excitation_indices(n: int) -> np.ndarray:
    """Full-space basis index of "up at site k, down elsewhere" for each k."""
    all_down = 2 ** n - 1
    return np.array([all_down - 2 ** (n - 1 - k) for k in range(n)])


def project_single_excitation(h_full: HermitianOperator, n: int) -> HermitianOperator:
    """The n x n single-excitation block; errors if the sector couples out."""
    if h_full.dim != 2 ** n:
        raise ValueError(f"operator dim {h_full.dim} is not 2^{n}")
    idx = single_excitation_indices(n)
    m = h_full.matrix
    mask = np.ones(h_full.dim, dtype=bool)
    mask[idx] = False
    leak = np.abs(m[np.ix_(idx, np.nonzero(mask)[0])]).max()
    if leak > BLOCK_TOL:
        raise ArithmeticError(
            f"single-excitation sector couples to other sectors (max {leak:.3e}); "
            "coupling construction is broken"
        )
    return HermitianOperator(m[np.ix_(idx, idx)])


def embed_single_excitation(state: QuantumState, n: int) -> QuantumState:
    """Lift an n-dim walk state into the 2^n spin space."""
    if state.dim != n:
        raise ValueError("walk state dimension must equal spin count")
    amps = np.zeros(2 ** n, dtype=complex)
    amps[single_excitation_indices(n)] = state.amplitudes
    return QuantumState(amps)


def walk_spin_system(graph: SignedWeightedGraph, alpha: float, gamma: float,
                     marked: int | None = None) -> SpinSystem:
    """Couplings and fields that realize the generalized-Laplacian walk."""
    couplings = {
        (i, j): (gamma * w, gamma * w, (1.0 - alpha) * gamma * w)
        for i, j, w in graph.edges
    }
    fields = [0.0] * graph.n
    if marked is not None:
        fields[marked] = -0.5
    return SpinSystem(graph.n, couplings, tuple(fields))


@dataclass(frozen=True)
class EquivalenceReport:
    max_deviation: float
    identity_offset: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= BLOCK_TOL


def verify_walk_equivalence(graph: SignedWeightedGraph, alpha: float, gamma: float,
                            marked: int | None = None,
                            perturb: float = 0.0) -> EquivalenceReport:
    """Compare the projected spin Hamiltonian to the walk Hamiltonian.

    Reports max |projected - target - s I| minimized over the scalar s, where
    the target is -gamma * (A + (alpha-1) D), minus |a><a| when a vertex is
    marked.  `perturb` adds a deliberate error to one coupling (negative
    control for tests and the CLI).
    """
    sys = walk_spin_system(graph, alpha, gamma, marked)
    if perturb != 0.0 and sys.couplings:
        key = next(iter(sys.couplings))
        jx, jy, jz = sys.couplings[key]
        # perturb x and y together so excitation number stays conserved and
        # the failure shows up as a deviation, not a sector-leak error
        sys.couplings[key] = (jx + perturb, jy + perturb, jz)
    projected = project_single_excitation(heisenberg_hamiltonian(sys), graph.n).matrix

    target = -gamma * graph.generalized_laplacian(alpha).matrix
    if marked is not None:
        target = target.copy()
        target[marked, marked] -= 1.0

    diff = projected - target
    diag = np.diag(diff)
    s = 0.5 * (diag.max() + diag.min())
    off = diff - np.diag(diag)
    deviation = max(np.abs(off).max(), np.abs(diag - s).max())
    return EquivalenceReport(float(deviation), float(s))
