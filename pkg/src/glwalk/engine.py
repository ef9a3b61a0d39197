"""Search Hamiltonians, piecewise-constant schedules, and probability series.

Two interchangeable models of the weighted barbell:

* FullBarbellModel: the N-dimensional vertex space, probabilities aggregated
  into the five symmetry classes a, b, c, d, e.
* ReducedBarbellModel: the exact 5-dimensional symmetry-reduced space, with
  the identity part of the degree matrix already dropped (it only shifts the
  global phase).

Both expose hamiltonian(w), initial_state(), and class_probabilities(), so
the engine runs either one identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import BarbellSpec, build_barbell
from .linalg import HermitianOperator, QuantumState

CLASS_LABELS = ("a", "b", "c", "d", "e")


class ReducedBarbellModel:
    """The 5D {a, b, c, d, e} representation of the weighted barbell."""

    def __init__(self, n: int, alpha: float, gamma: float | None = None):
        BarbellSpec(n, 1.0)  # validates n
        self.n = n
        self.alpha = float(alpha)
        self.gamma = 2.0 / n if gamma is None else float(gamma)
        self.multiplicities = np.array([1, n // 2 - 2, 1, 1, n // 2 - 1])

    @property
    def labels(self):
        return CLASS_LABELS

    def adjacency(self, w: float) -> np.ndarray:
        n = self.n
        rb = math.sqrt(n / 2 - 2)
        re = math.sqrt(n / 2 - 1)
        return np.array([
            [0.0, rb, 1.0, 0.0, 0.0],
            [rb, n / 2 - 3, rb, 0.0, 0.0],
            [1.0, rb, 0.0, w, 0.0],
            [0.0, 0.0, w, 0.0, re],
            [0.0, 0.0, 0.0, re, n / 2 - 2],
        ])

    def degree(self, w: float) -> np.ndarray:
        # identity part (N/2 - 1) I already dropped
        return np.diag([0.0, 0.0, w, w, 0.0])

    def hamiltonian(self, w: float) -> HermitianOperator:
        la = self.adjacency(w) + (self.alpha - 1.0) * self.degree(w)
        h = -self.gamma * la
        h[0, 0] -= 1.0  # oracle |a><a|
        return HermitianOperator(h)

    def initial_state(self) -> QuantumState:
        n = self.n
        amps = np.array([1.0, math.sqrt(n / 2 - 2), 1.0, 1.0,
                         math.sqrt(n / 2 - 1)]) / math.sqrt(n)
        return QuantumState(amps, CLASS_LABELS)

    def class_probabilities(self, amplitudes: np.ndarray) -> np.ndarray:
        return np.abs(amplitudes) ** 2


class FullBarbellModel:
    """The N-dimensional vertex-space model of the weighted barbell."""

    def __init__(self, n: int, alpha: float, gamma: float | None = None):
        BarbellSpec(n, 1.0)
        self.n = n
        self.alpha = float(alpha)
        self.gamma = 2.0 / n if gamma is None else float(gamma)
        half = n // 2
        # vertex ordering [a, b..., c, d, e...]
        self._slices = {
            "a": slice(0, 1),
            "b": slice(1, half - 1),
            "c": slice(half - 1, half),
            "d": slice(half, half + 1),
            "e": slice(half + 1, n),
        }

    @property
    def labels(self):
        return CLASS_LABELS

    def hamiltonian(self, w: float) -> HermitianOperator:
        graph = build_barbell(BarbellSpec(self.n, w))
        h = -self.gamma * graph.generalized_laplacian(self.alpha).matrix
        h[0, 0] -= 1.0
        return HermitianOperator(h)

    def initial_state(self) -> QuantumState:
        amps = np.full(self.n, 1.0 / math.sqrt(self.n))
        return QuantumState(amps, [str(i) for i in range(self.n)])

    def class_probabilities(self, amplitudes: np.ndarray) -> np.ndarray:
        p = np.abs(amplitudes) ** 2
        return np.array([p[self._slices[c]].sum() for c in CLASS_LABELS])


@dataclass(frozen=True)
class Segment:
    weight: float
    duration: float

    def __post_init__(self):
        if self.duration < 0:
            raise ValueError("segment duration must be nonnegative")


@dataclass(frozen=True)
class Schedule:
    """Piecewise-constant bridge weights; the last segment is open-ended."""

    segments: tuple

    def __post_init__(self):
        segs = tuple(self.segments)
        if not segs:
            raise ValueError("schedule needs at least one segment")
        object.__setattr__(self, "segments", segs)

    @staticmethod
    def single(weight: float) -> "Schedule":
        return Schedule((Segment(weight, math.inf),))

    @staticmethod
    def two_stage(w1: float, t1: float, w2: float) -> "Schedule":
        return Schedule((Segment(w1, t1), Segment(w2, math.inf)))


class ProbabilitySeries:
    """Per-class probabilities sampled on a time grid."""

    def __init__(self, times: np.ndarray, class_probs: np.ndarray):
        self.times = times
        self._p = class_probs  # shape (len(times), 5)

    def probability(self, key: str) -> np.ndarray:
        if key in CLASS_LABELS:
            return self._p[:, CLASS_LABELS.index(key)]
        if key == "p_abc":
            return self._p[:, 0:3].sum(axis=1)
        if key == "p_ab":
            return self._p[:, 0:2].sum(axis=1)
        if key.startswith("p_") and key[2:] in CLASS_LABELS:
            return self._p[:, CLASS_LABELS.index(key[2:])]
        raise KeyError(f"unknown observable {key!r}")

    @property
    def totals(self) -> np.ndarray:
        return self._p.sum(axis=1)

    def columns(self) -> dict:
        return {
            "time": self.times,
            "p_a": self.probability("a"),
            "p_b": self.probability("b"),
            "p_c": self.probability("c"),
            "p_d": self.probability("d"),
            "p_e": self.probability("e"),
            "p_abc": self.probability("p_abc"),
            "p_ab": self.probability("p_ab"),
        }

    def peak(self, observable: str = "p_a", window=None):
        return peak(self, observable, window)


def default_time_grid(n: int, t_max: float | None = None,
                      dt: float | None = None) -> np.ndarray:
    """Grid dense enough to localize peaks to well under 1%: 2000 samples
    per sqrt(N) unit of time, out to 8 sqrt(N) by default."""
    root = math.sqrt(n)
    if t_max is None:
        t_max = 8.0 * root
    if dt is None:
        dt = root / 2000.0
    count = int(math.floor(t_max / dt + 1e-9)) + 1
    return np.arange(count) * dt


def run_schedule(model, schedule: Schedule, times) -> ProbabilitySeries:
    """Evolve through the schedule, sampling class probabilities on the grid.

    The state is continuous across segment boundaries.  The grid must be
    strictly increasing and start at 0.
    """
    times = np.asarray(times, dtype=float)
    if times.size == 0 or times[0] < 0 or np.any(np.diff(times) <= 0):
        raise ValueError("time grid must be strictly increasing from 0")

    probs = np.empty((times.size, 5))
    state = model.initial_state()
    t_start = 0.0
    cursor = 0
    segments = schedule.segments
    for k, seg in enumerate(segments):
        last = k == len(segments) - 1
        t_end = math.inf if last else t_start + seg.duration
        h = model.hamiltonian(seg.weight)
        stop = times.size if last else int(np.searchsorted(times, t_end, "left"))
        if stop > cursor:
            amps = h.evolve_many(state, times[cursor:stop] - t_start)
            norms = np.linalg.norm(amps, axis=1)
            if np.abs(norms - 1.0).max() > 1e-9:
                raise ArithmeticError("evolution lost unitarity beyond 1e-9")
            for row, a in enumerate(amps):
                probs[cursor + row] = model.class_probabilities(a)
            cursor = stop
        if not last:
            state = h.evolve(state, seg.duration)
            t_start = t_end
    return ProbabilitySeries(times, probs)


def peak(series: ProbabilitySeries, observable: str = "p_a", window=None):
    """(t_peak, value): grid argmax refined by a local quadratic fit."""
    t = series.times
    y = series.probability(observable)
    if window is not None:
        lo, hi = window
        mask = (t >= lo) & (t <= hi)
        if not mask.any():
            raise ValueError(f"window {window} contains no grid points")
        t, y = t[mask], y[mask]
    i = int(np.argmax(y))
    if 0 < i < t.size - 1:
        y0, y1, y2 = y[i - 1], y[i], y[i + 1]
        denom = y0 - 2 * y1 + y2
        if denom < 0:
            shift = 0.5 * (y0 - y2) / denom
            dt = t[i + 1] - t[i]
            return float(t[i] + shift * dt), float(y1 - 0.25 * (y0 - y2) * shift)
    return float(t[i]), float(y[i])
