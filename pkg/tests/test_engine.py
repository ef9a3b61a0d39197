import math

import numpy as np
import pytest

from glwalk.engine import (FullBarbellModel, ProbabilitySeries,
                           ReducedBarbellModel, Schedule, Segment,
                           default_time_grid, run_schedule)


def test_reduced_hamiltonian_small_case():
    # n = 12, alpha = 1, gamma = 1/6, w = 1: the Hamiltonian is -gamma A
    # with the oracle on the diagonal; A entries follow from the class sizes
    m = ReducedBarbellModel(12, 1.0, 1.0 / 6.0)
    r5 = math.sqrt(5.0)
    adj = np.array([
        [0, 2, 1, 0, 0],
        [2, 3, 2, 0, 0],
        [1, 2, 0, 1, 0],
        [0, 0, 1, 0, r5],
        [0, 0, 0, r5, 4],
    ])
    expected = -adj / 6.0
    expected[0, 0] -= 1.0
    assert np.abs(m.hamiltonian(1.0).matrix - expected).max() < 1e-14


def test_reduced_initial_state():
    psi = ReducedBarbellModel(12, 1.0).initial_state()
    expected = np.array([1.0, 2.0, 1.0, 1.0, math.sqrt(5.0)]) / math.sqrt(12.0)
    assert np.abs(psi.amplitudes - expected).max() < 1e-14
    assert abs(psi.norm() - 1.0) < 1e-12


def test_reduced_degree_scales_with_bridge():
    m = ReducedBarbellModel(10, 0.0)
    assert np.array_equal(m.degree(2.5), np.diag([0, 0, 2.5, 2.5, 0]))


def test_gamma_defaults_to_critical():
    assert ReducedBarbellModel(60, 1.0).gamma == pytest.approx(2.0 / 60)
    assert FullBarbellModel(60, 1.0).gamma == pytest.approx(2.0 / 60)


def test_full_initial_state_uniform():
    psi = FullBarbellModel(8, 1.0).initial_state()
    assert np.abs(psi.amplitudes - 1.0 / math.sqrt(8.0)).max() < 1e-14


def test_full_class_aggregation_sums_to_one():
    m = FullBarbellModel(10, 2.0)
    rng = np.random.default_rng(0)
    amps = rng.normal(size=10) + 1j * rng.normal(size=10)
    amps /= np.linalg.norm(amps)
    p = m.class_probabilities(amps)
    assert p.shape == (5,)
    assert p.sum() == pytest.approx(1.0, abs=1e-12)
    assert p[0] == pytest.approx(abs(amps[0]) ** 2, abs=1e-14)


def test_full_matches_reduced_series():
    n, alpha, w = 12, 3.0, 2.0
    times = default_time_grid(n, t_max=20.0, dt=0.5)
    red = run_schedule(ReducedBarbellModel(n, alpha), Schedule.single(w), times)
    full = run_schedule(FullBarbellModel(n, alpha), Schedule.single(w), times)
    for key in ("p_a", "p_b", "p_c", "p_d", "p_e"):
        assert np.abs(red.probability(key) - full.probability(key)).max() < 1e-12


def test_schedule_validation():
    with pytest.raises(ValueError):
        Segment(1.0, -0.1)
    with pytest.raises(ValueError):
        Schedule(())
    sched = Schedule.two_stage(2.0, 5.0, 1.0)
    assert sched.segments[0] == Segment(2.0, 5.0)
    assert math.isinf(sched.segments[1].duration)


def test_two_segments_same_weight_equal_single_run():
    # state continuity across a boundary: splitting a constant schedule
    # must not change anything
    n, w = 12, 1.5
    model = ReducedBarbellModel(n, 4.0)
    times = default_time_grid(n, t_max=30.0, dt=0.25)
    single = run_schedule(model, Schedule.single(w), times)
    split = run_schedule(model, Schedule.two_stage(w, 13.37, w), times)
    assert np.abs(single.probability("p_a") - split.probability("p_a")).max() < 1e-12


def test_run_schedule_rejects_bad_grid():
    model = ReducedBarbellModel(8, 1.0)
    sched = Schedule.single(1.0)
    with pytest.raises(ValueError):
        run_schedule(model, sched, [0.0, 1.0, 1.0])
    with pytest.raises(ValueError):
        run_schedule(model, sched, [-1.0, 1.0])
    with pytest.raises(ValueError):
        run_schedule(model, sched, [])


def test_series_observables_and_totals():
    times = np.array([0.0, 1.0])
    p = np.array([[0.1, 0.2, 0.3, 0.25, 0.15]] * 2)
    s = ProbabilitySeries(times, p)
    assert s.probability("a")[0] == 0.1
    assert s.probability("p_e")[0] == 0.15
    assert s.probability("p_ab")[0] == pytest.approx(0.3)
    assert s.probability("p_abc")[0] == pytest.approx(0.6)
    assert s.totals[0] == pytest.approx(1.0)
    cols = s.columns()
    assert list(cols) == ["time", "p_a", "p_b", "p_c", "p_d", "p_e", "p_abc", "p_ab"]
    with pytest.raises(KeyError):
        s.probability("p_z")


def test_default_time_grid_shape():
    grid = default_time_grid(100)
    assert grid[0] == 0.0
    assert grid[-1] == pytest.approx(80.0)
    assert np.allclose(np.diff(grid), 10.0 / 2000.0)


def test_peak_refinement_recovers_quadratic_vertex():
    # exact parabola: the three-point fit must recover the off-grid vertex
    t = np.linspace(0.0, 10.0, 101)
    vertex, height = 4.037, 0.9
    y = height - (t - vertex) ** 2 * 0.01
    s = ProbabilitySeries(t, np.column_stack([y] + [np.zeros_like(y)] * 4))
    t_peak, p_peak = s.peak("p_a")
    assert t_peak == pytest.approx(vertex, abs=1e-12)
    assert p_peak == pytest.approx(height, abs=1e-12)


def test_peak_window():
    t = np.linspace(0.0, 10.0, 1001)
    y = np.sin(t) ** 2  # peaks near pi/2 and 3pi/2...
    s = ProbabilitySeries(t, np.column_stack([y] + [np.zeros_like(y)] * 4))
    t_peak, _ = s.peak("p_a", window=(3.0, 6.0))
    assert t_peak == pytest.approx(3 * math.pi / 2, abs=1e-3)
    with pytest.raises(ValueError):
        s.peak("p_a", window=(20.0, 30.0))


def test_oscillation_frequency_noncritical():
    # p_a(t) = sin^2(sqrt(2/N) t)/2 at a noncritical weight: the first peak
    # sits at pi/2 / sqrt(2/N) with value 1/2, up to 1/N corrections
    n = 1200
    model = ReducedBarbellModel(n, 4.0)
    times = default_time_grid(n, t_max=60.0)
    series = run_schedule(model, Schedule.single(1.0), times)
    t_peak, p_peak = series.peak("p_a")
    assert t_peak == pytest.approx(math.pi / 2 * math.sqrt(n / 2), rel=0.02)
    assert p_peak == pytest.approx(0.5, abs=0.02)
