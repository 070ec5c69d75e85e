"""Smoke tests for the python bindings."""

import math

import pytest

ilapf = pytest.importorskip("ilapf")


def test_range_estimator_updates():
    est = ilapf.OutlierRangeEstimator(0.0, 70.0, 20.0)
    assert est.bounds() == (0.0, 70.0)
    est.observe(25.0)
    assert est.bounds() == (5.0, 45.0)
    est.observe(28.0)
    assert est.bounds() == (15.0, 38.0)
    assert est.count() == 2


def test_simulation_is_reproducible():
    config = ilapf.benchmark_scenario()
    a = ilapf.simulate(config, ilapf.RngStream(7))
    b = ilapf.simulate(config, ilapf.RngStream(7))
    assert a.states == b.states
    assert a.measurements == b.measurements
    assert len(a.states) == 60
    assert sum(a.outlier_flags) == 8


def test_filter_run_produces_sane_metrics():
    config = ilapf.benchmark_scenario()
    traj = ilapf.simulate(config, ilapf.make_stream(1, 0, 0, 0))
    params = ilapf.FilterParams()
    metrics = ilapf.run_filter(traj, config.model, params, ilapf.make_stream(1, 0, 0, 1))
    assert math.isfinite(metrics.mse)
    assert 0.0 <= metrics.mse < 5.0
    assert len(metrics.trace) == 60
    assert metrics.final_n >= 8
    assert metrics.final_lb < metrics.final_ub


def test_filter_beats_bootstrap_baseline():
    params = ilapf.BenchParams()
    params.runs = 5
    params.seed = 2
    result = ilapf.run_benchmark(params)
    assert result.ilapf.mean_mse < result.baseline.mean_mse


def test_transfer_chain_reports_per_task_stats():
    params = ilapf.BenchParams()
    params.runs = 2
    result = ilapf.transfer_chain(2, params)
    assert result.tasks == 2
    assert len(result.per_task) == 2
    assert all(s.mean_mse > 0 for s in result.per_task)


def test_densities_match_references():
    assert ilapf.gaussian_density(0.0, 0.01) == pytest.approx(3.989423, rel=1e-6)
    assert ilapf.likelihood_outlier(25.0, 20.0, 30.0) == pytest.approx(0.1)
    assert ilapf.likelihood_outlier(31.0, 20.0, 30.0) == 0.0
