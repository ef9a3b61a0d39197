"""Analytic predictions for search on the weighted barbell graph.

Critical parameters, the leading-order and degenerate-perturbation
eigensystems, closed-form probability curves at the critical bridge weights,
and the single- and two-stage runtime/probability constants.  Every
transcendental constant is computed here by maximization or root bracketing,
never hard-coded; the literature's three-digit values live only in the tests.

Times are handled in units of sqrt(N): theta = t / sqrt(N).  In these units
the critical-weight dynamics oscillate with frequencies
sqrt(2 + sqrt(2)) and sqrt(2 - sqrt(2)), and the noncritical dynamics with
frequency sqrt(2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

SQRT2 = math.sqrt(2.0)
FREQ_FAST = math.sqrt(2.0 + SQRT2)
FREQ_SLOW = math.sqrt(2.0 - SQRT2)

SCAN_WINDOW = 8.0  # theta window for peak branch selection
_SCAN_POINTS = 160_001


@dataclass(frozen=True)
class CriticalParams:
    """gamma_c = 2/N and the two critical bridge weights (when defined)."""

    gamma_c: float
    w_plus: Optional[object]   # N / (2 alpha); None when alpha == 0
    w_minus: Optional[object]  # N / (2 (alpha - 2)); None when alpha == 2


def critical_params(n: int, alpha) -> CriticalParams:
    """Critical jumping rate and bridge weights.

    With integral (or rational) inputs the weights come back as exact
    Fractions; otherwise as floats.  Absent entries are None, not errors.
    """
    if n % 2 != 0 or n < 6:
        raise ValueError("barbell needs even n >= 6")
    exact = isinstance(alpha, Rational)
    if exact:
        alpha = Fraction(alpha)
        w_plus = None if alpha == 0 else Fraction(n, 1) / (2 * alpha)
        w_minus = None if alpha == 2 else Fraction(n, 1) / (2 * (alpha - 2))
    else:
        alpha = float(alpha)
        w_plus = None if alpha == 0.0 else n / (2.0 * alpha)
        w_minus = None if alpha == 2.0 else n / (2.0 * (alpha - 2.0))
    return CriticalParams(2.0 / n, w_plus, w_minus)


def classify_weight(n: int, alpha: float, w: float, rel_tol: float = 1e-9) -> str:
    """"plus", "minus", or "noncritical" for a given bridge weight."""
    params = critical_params(n, alpha)
    for name, crit in (("plus", params.w_plus), ("minus", params.w_minus)):
        if crit is None:
            continue
        crit = float(crit)
        if math.isclose(w, crit, rel_tol=rel_tol, abs_tol=0.0):
            return name
    return "noncritical"


def leading_order_eigensystem(n: int, alpha: float, w: float, gamma: float):
    """Eigenpairs of the leading-order 5D search Hamiltonian.

    Returns five (label, vector over (a, b, c, d, e), eigenvalue) triples:
    |a> -> -1, |b> and |e> -> -gamma N / 2, (|c> +- |d>)/sqrt(2) ->
    -alpha gamma w and -(alpha - 2) gamma w.
    """
    s = 1.0 / SQRT2
    return [
        ("a", np.array([1.0, 0, 0, 0, 0]), -1.0),
        ("b", np.array([0, 1.0, 0, 0, 0]), -gamma * n / 2.0),
        ("cd+", np.array([0, 0, s, s, 0]), -alpha * gamma * w),
        ("cd-", np.array([0, 0, s, -s, 0]), -(alpha - 2.0) * gamma * w),
        ("e", np.array([0, 0, 0, 0, 1.0]), -gamma * n / 2.0),
    ]


# ---------------------------------------------------------------------------
# Degenerate-perturbation eigensystem at the critical weights.
#
# In the (a, b, cd, e) degenerate subspace, with sign +1 for the w_+ case and
# -1 for the w_- case, the four corrected eigenvectors are
#   (+A, 1+sqrt2, +A, s), (-B, 1-sqrt2, +B, s),
#   (+B, 1-sqrt2, -B, s), (-A, 1+sqrt2, -A, s),
# with A = sqrt(2+sqrt2), B = sqrt(2-sqrt2), and eigenvalues
# -1 -+ A/sqrt(N), -1 -+ B/sqrt(N) pairwise.
# ---------------------------------------------------------------------------

def critical_eigensystem(variant: str):
    """Normalized (a, b, cd, e) eigenvectors and frequency offsets.

    Returns (vectors, offsets) where vectors is a 4x4 array (rows are
    eigenvectors) and the eigenvalue of row k is -1 + offsets[k] / sqrt(N).
    """
    s = _variant_sign(variant)
    a, b = FREQ_FAST, FREQ_SLOW
    raw = np.array([
        [a, 1 + SQRT2, a, s],
        [-b, 1 - SQRT2, b, s],
        [b, 1 - SQRT2, -b, s],
        [-a, 1 + SQRT2, -a, s],
    ])
    vectors = raw / np.linalg.norm(raw, axis=1, keepdims=True)
    offsets = np.array([-a, -b, b, a])
    return vectors, offsets


def _variant_sign(variant: str) -> float:
    if variant == "plus":
        return 1.0
    if variant == "minus":
        return -1.0
    raise ValueError(f"variant must be 'plus' or 'minus', got {variant!r}")


def critical_amplitudes(variant: str, theta) -> np.ndarray:
    """Asymptotic class amplitudes (a, b, c, d, e) at theta = t / sqrt(N).

    The initial state is the large-N uniform state (|b> + |e>)/sqrt(2),
    expanded over the critical eigensystem; the global phase e^{it} is
    dropped.  theta may be a scalar or an array; the result has shape
    (..., 5).
    """
    vectors, offsets = critical_eigensystem(variant)
    s = _variant_sign(variant)
    psi0 = np.array([0.0, 1.0 / SQRT2, 0.0, 1.0 / SQRT2])
    coeff = vectors @ psi0
    theta = np.asarray(theta, dtype=float)
    phases = np.exp(-1j * np.multiply.outer(theta, offsets))
    abcd = (phases * coeff) @ vectors  # (..., 4) over (a, b, cd, e)
    out = np.empty(theta.shape + (5,), dtype=complex)
    out[..., 0] = abcd[..., 0]
    out[..., 1] = abcd[..., 1]
    out[..., 2] = abcd[..., 2] / SQRT2
    out[..., 3] = s * abcd[..., 2] / SQRT2
    out[..., 4] = abcd[..., 3]
    return out


def noncritical_probabilities(n: int, t) -> np.ndarray:
    """Closed-form class probabilities at a noncritical weight (gamma_c).

    p_a = sin^2(sqrt(2/N) t)/2, p_b = cos^2(...)/2, p_c = p_d = 0,
    p_e = 1/2.  Shape (..., 5).
    """
    t = np.asarray(t, dtype=float)
    x = math.sqrt(2.0 / n) * t
    out = np.empty(t.shape + (5,))
    out[..., 0] = 0.5 * np.sin(x) ** 2
    out[..., 1] = 0.5 * np.cos(x) ** 2
    out[..., 2] = 0.0
    out[..., 3] = 0.0
    out[..., 4] = 0.5
    return out


def wminus_amplitudes(n: int, t) -> np.ndarray:
    """Closed-form class amplitudes at w = w_-, global phase dropped."""
    t = np.asarray(t, dtype=float)
    xf = np.sqrt((2.0 + SQRT2) / n) * t
    xs = np.sqrt((2.0 - SQRT2) / n) * t
    a_amp = 1j / (2 * SQRT2) * (FREQ_SLOW * np.sin(xf) + FREQ_FAST * np.sin(xs))
    b_amp = 1.0 / (2 * SQRT2) * (np.cos(xf) + np.cos(xs))
    cd = 1j / (2 * SQRT2) * (FREQ_SLOW * np.sin(xf) - FREQ_FAST * np.sin(xs))
    e_amp = 0.25 * ((-2 + SQRT2) * np.cos(xf) + (2 + SQRT2) * np.cos(xs))
    out = np.empty(t.shape + (5,), dtype=complex)
    out[..., 0] = a_amp
    out[..., 1] = b_amp
    out[..., 2] = cd / SQRT2
    out[..., 3] = -cd / SQRT2
    out[..., 4] = e_amp
    return out


def wminus_probabilities(n: int, t) -> np.ndarray:
    """Closed-form class probabilities at w = w_- (gamma_c); shape (..., 5)."""
    return np.abs(wminus_amplitudes(n, t)) ** 2


def wminus_runtime(n: int, k: int = 5) -> float:
    """The k-th stationary time of p_a at w = w_-, exactly
    k pi sqrt(N) / (sqrt(2+sqrt2) + sqrt(2-sqrt2)); k = 5 is the global
    maximum in the standard window, k = 1, 3 are the earlier local maxima.
    """
    if k % 2 != 1 or k < 1:
        raise ValueError("k must be a positive odd integer")
    return k * math.pi * math.sqrt(n) / (FREQ_FAST + FREQ_SLOW)


# ---------------------------------------------------------------------------
# Peak finding in theta units.
# ---------------------------------------------------------------------------

def _argmax_theta(f, lo: float = 0.0, hi: float = SCAN_WINDOW):
    """Global maximum of a smooth scalar function over [lo, hi]:
    dense scan to pick the branch, then bounded minimization to refine."""
    grid = np.linspace(lo, hi, _SCAN_POINTS)
    values = f(grid)
    i = int(np.argmax(values))
    a = grid[max(0, i - 1)]
    b = grid[min(grid.size - 1, i + 1)]
    res = minimize_scalar(lambda x: -f(np.array(x)), bounds=(a, b),
                          method="bounded", options={"xatol": 1e-12})
    if not res.success:
        raise ArithmeticError(f"peak refinement failed: {res.message}")
    return float(res.x), float(-res.fun)


def _class_probability(variant: str, which: str):
    sel = {"a": [0], "ab": [0, 1], "abc": [0, 1, 2]}[which]

    def f(theta):
        p = np.abs(critical_amplitudes(variant, theta)) ** 2
        return p[..., sel].sum(axis=-1)

    return f


# ---------------------------------------------------------------------------
# Stage-two alignment: with a noncritical weight the a/b amplitudes rotate at
# frequency sqrt(2)/sqrt(N), so the state projected on (|a>+-|b>)/sqrt(2)
# gives a sinusoidal success probability whose peak amplitude and phase
# follow from the two projection coefficients.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StageTwo:
    amplitude: float   # peak p_a of the stage-2 sinusoid
    theta2: float      # stage-2 duration (units of sqrt(N)) to reach it
    phase: float       # p_a(dt) = amplitude * sin^2(sqrt(2/N) dt + phase)


def stage_two_alignment(state5: np.ndarray) -> StageTwo:
    """Stage-2 plan from the five class amplitudes at the transition time."""
    a_amp, b_amp = state5[0], state5[1]
    c0 = (a_amp + b_amp) / SQRT2  # onto (|a> + |b>)/sqrt(2), E = -1 - sqrt(2/N)
    c2 = (a_amp - b_amp) / SQRT2  # onto (|a> - |b>)/sqrt(2), E = -1 + sqrt(2/N)
    r0, r2 = abs(c0), abs(c2)
    dphi = (np.angle(c2) - np.angle(c0)) % (2 * math.pi)
    theta2 = dphi / (2 * SQRT2)
    # sin^2(sqrt(2) theta + phase) peaks at theta2; phase folded into [0, pi)
    phase = (1.5 * math.pi - SQRT2 * theta2) % math.pi
    return StageTwo(float((r0 + r2) ** 2 / 2.0), float(theta2), float(phase))


@dataclass(frozen=True)
class WplusConstants:
    """Single- and two-stage constants for the w_+ critical weight.

    All times are coefficients of sqrt(N).
    """

    t_single: float
    p_single: float
    t1: float
    t2: float
    total: float
    p_final: float


@lru_cache(maxsize=1)
def wplus_constants() -> WplusConstants:
    """Computed numerically from the critical eigensystem: maximize p_a for
    the single stage, maximize p_ab for the stage-1 transition, then align
    the stage-2 phase."""
    t_single, p_single = _argmax_theta(_class_probability("plus", "a"))
    t1, _ = _argmax_theta(_class_probability("plus", "ab"))
    state = critical_amplitudes("plus", t1)
    stage2 = stage_two_alignment(state)
    return WplusConstants(
        t_single=t_single,
        p_single=p_single,
        t1=t1,
        t2=stage2.theta2,
        total=t1 + stage2.theta2,
        p_final=stage2.amplitude,
    )


@dataclass(frozen=True)
class StagePlan:
    """A two-stage schedule prediction (coefficients of sqrt(N))."""

    variant: str
    t1: float
    t2: float
    total: float
    p_final: float
    checkpoints: dict


@lru_cache(maxsize=None)
def wminus_two_stage(variant: str) -> StagePlan:
    """Two-stage plans for the w_- critical weight.

    "abc": transition when the marked-clique probability peaks; the stage-1
    state is re-expanded over the noncritical eigensystem and the stage-2
    phase is aligned.  "ab": transition when p_a + p_b peaks, which
    coincides with the single-stage p_a maximum; the second stage adds a
    half-oscillation.
    """
    if variant == "abc":
        t1, p_abc = _argmax_theta(_class_probability("minus", "abc"))
        state = critical_amplitudes("minus", t1)
        stage2 = stage_two_alignment(state)
        p_a_t1 = float(abs(state[0]) ** 2)
        return StagePlan(
            variant="abc", t1=t1, t2=stage2.theta2, total=t1 + stage2.theta2,
            p_final=stage2.amplitude,
            checkpoints={
                "p_abc_at_t1": p_abc,
                "p_a_at_t1": p_a_t1,
                "p_ab_at_t1": p_a_t1 + float(abs(state[1]) ** 2),
                "state_at_t1": state,
                "stage2_phase": stage2.phase,
            },
        )
    if variant == "ab":
        t1, p_ab = _argmax_theta(_class_probability("minus", "ab"))
        state = critical_amplitudes("minus", t1)
        t2 = math.pi / 2.0
        return StagePlan(
            variant="ab", t1=t1, t2=t2, total=t1 + t2,
            p_final=p_ab,
            checkpoints={
                "p_a_at_t1": float(abs(state[0]) ** 2),
                "state_at_t1": state,
            },
        )
    raise ValueError(f"variant must be 'abc' or 'ab', got {variant!r}")
