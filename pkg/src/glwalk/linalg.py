"""Dense real-symmetric operators and exact spectral time evolution.

Every Hamiltonian in this package is real symmetric and at most a few
thousand dimensional, so evolution is done by diagonalizing once and
applying exp(-iHt) exactly through the spectral decomposition.
"""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from .config import tolerance

RECONSTRUCTION_TOL = 1e-10


class HermitianOperator:
    """A real-symmetric matrix with a write-once cached eigendecomposition.

    Immutable after construction: the entries are never modified and the
    spectrum cache is filled at most once, so instances are safe to share
    across concurrent workers.
    """

    def __init__(self, matrix):
        m = np.array(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"operator must be square, got shape {m.shape}")
        if m.shape[0] < 1:
            raise ValueError("operator dimension must be >= 1")
        if not np.array_equal(m, m.T):
            raise ValueError("operator must be symmetric entry-for-entry")
        m.setflags(write=False)
        self._matrix = m
        self._eigenvalues = None
        self._eigenvectors = None

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    def eigendecompose(self):
        """Eigenvalues (ascending) and orthonormal eigenvectors (columns).

        Cached after the first call.  Raises ArithmeticError if the solver
        fails to converge or the reconstruction check fails.
        """
        if self._eigenvalues is None:
            try:
                vals, vecs = np.linalg.eigh(self._matrix)
            except np.linalg.LinAlgError as exc:
                raise ArithmeticError(
                    f"eigendecomposition failed for {self.dim}x{self.dim} "
                    f"operator: {exc}"
                ) from exc
            scale = max(1.0, np.abs(self._matrix).max())
            residual = np.abs(vecs @ np.diag(vals) @ vecs.T - self._matrix).max()
            if residual > RECONSTRUCTION_TOL * scale:
                raise ArithmeticError(
                    f"spectral reconstruction residual {residual:.3e} exceeds "
                    f"{RECONSTRUCTION_TOL * scale:.3e} for {self.dim}x{self.dim} operator"
                )
            ortho = np.abs(vecs.T @ vecs - np.eye(self.dim)).max()
            if ortho > RECONSTRUCTION_TOL:
                raise ArithmeticError(
                    f"eigenvector orthonormality defect {ortho:.3e} for "
                    f"{self.dim}x{self.dim} operator"
                )
            vals.setflags(write=False)
            vecs.setflags(write=False)
            self._eigenvalues = vals
            self._eigenvectors = vecs
        return self._eigenvalues, self._eigenvectors

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.eigendecompose()[0]

    @property
    def eigenvectors(self) -> np.ndarray:
        return self.eigendecompose()[1]

    def evolve(self, state: "QuantumState", t: float) -> "QuantumState":
        """Apply exp(-i H t) to a state."""
        if state.dim != self.dim:
            raise ValueError(
                f"dimension mismatch: operator is {self.dim}, state is {state.dim}"
            )
        vals, vecs = self.eigendecompose()
        coeff = vecs.T @ state.amplitudes
        amps = vecs @ (np.exp(-1j * vals * t) * coeff)
        return QuantumState(amps, state.labels, check_norm=True)

    def evolve_many(self, state: "QuantumState", times) -> np.ndarray:
        """Amplitudes at several times, as a (len(times), dim) array."""
        if state.dim != self.dim:
            raise ValueError(
                f"dimension mismatch: operator is {self.dim}, state is {state.dim}"
            )
        vals, vecs = self.eigendecompose()
        coeff = vecs.T @ state.amplitudes
        times = np.asarray(times, dtype=float)
        out = np.empty((times.size, self.dim), dtype=complex)
        # chunked so the phase matrix stays small for large operators
        step = max(1, int(4e6 // max(1, self.dim)))
        for lo in range(0, times.size, step):
            hi = min(times.size, lo + step)
            phases = np.exp(-1j * np.outer(vals, times[lo:hi])) * coeff[:, None]
            out[lo:hi] = (vecs @ phases).T
        return out


class QuantumState:
    """Complex amplitudes over a labeled basis; immutable, unit norm."""

    def __init__(self, amplitudes, labels: Sequence[str] | None = None,
                 check_norm: bool = True):
        amps = np.array(amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size < 1:
            raise ValueError("amplitudes must be a nonempty 1-D vector")
        if labels is None:
            labels = tuple(str(i) for i in range(amps.size))
        else:
            labels = tuple(labels)
        if len(labels) != amps.size:
            raise ValueError("label count does not match amplitude count")
        if check_norm:
            norm = np.linalg.norm(amps)
            if abs(norm - 1.0) > tolerance():
                raise ValueError(f"state norm {norm!r} deviates from 1 beyond tolerance")
        amps.setflags(write=False)
        self._amps = amps
        self._labels = labels

    @property
    def dim(self) -> int:
        return self._amps.size

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amps

    @property
    def labels(self) -> tuple:
        return self._labels

    def norm(self) -> float:
        return float(np.linalg.norm(self._amps))

    def probabilities(self) -> Mapping[str, float]:
        """Per-label probabilities |amplitude|^2."""
        return dict(zip(self._labels, np.abs(self._amps) ** 2))


def eigendecompose(op: HermitianOperator):
    return op.eigendecompose()


def evolve(op: HermitianOperator, state: QuantumState, t: float) -> QuantumState:
    return op.evolve(state, t)


def probabilities(state: QuantumState) -> Mapping[str, float]:
    return state.probabilities()
