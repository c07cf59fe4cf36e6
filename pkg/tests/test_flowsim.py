"""Flow-level simulator: degenerate cases, determinism, and agreement with
the chain's closed-form equilibrium."""

import math
from dataclasses import replace

import pytest

from multiwlan.flowsim import simulate_flows
from multiwlan.markov import (
    build_chain,
    equilibrium,
    expected_per_user_throughput,
    expected_transfer_time,
)
from multiwlan.scenario import ScenarioConfig, station_throughput

CFG = ScenarioConfig(n_stations=10, arrival_rate=0.05, mean_file_size=1e8)


def test_no_arrivals():
    metrics = simulate_flows(replace(CFG, arrival_rate=0.0), horizon=100.0, seed=1)
    assert metrics.completions == 0
    assert metrics.empirical_pi[0] == 1.0
    assert math.isnan(metrics.mean_transfer_time)
    assert metrics.mean_active == 0.0


def test_deterministic_under_fixed_seed():
    a = simulate_flows(CFG, horizon=500.0, seed=7)
    b = simulate_flows(CFG, horizon=500.0, seed=7)
    assert a == b


def test_occupancy_is_a_distribution():
    metrics = simulate_flows(CFG, horizon=2000.0, seed=3)
    assert len(metrics.empirical_pi) == CFG.n_stations + 1
    assert all(p >= 0.0 for p in metrics.empirical_pi)
    assert math.fsum(metrics.empirical_pi) == pytest.approx(1.0, abs=1e-9)


def test_single_station_transfer_time():
    cfg = ScenarioConfig(
        n_stations=1, arrival_rate=1.0, mean_file_size=1e7
    )
    metrics = simulate_flows(cfg, horizon=5000.0, seed=17)
    expected = cfg.mean_file_size / station_throughput(1, cfg)
    assert metrics.completions > 1000
    assert metrics.mean_transfer_time == pytest.approx(expected, rel=0.03)


def test_small_network_per_user_throughput():
    cfg = ScenarioConfig(n_stations=2, arrival_rate=0.05, mean_file_size=1e8)
    dist = equilibrium(build_chain(cfg))
    analytic = expected_per_user_throughput(dist, cfg)
    metrics = simulate_flows(cfg, horizon=40_000.0, seed=23)
    assert metrics.per_user_throughput == pytest.approx(analytic, rel=0.03)


def test_matches_chain_at_moderate_load():
    dist = equilibrium(build_chain(CFG))
    metrics = simulate_flows(CFG, horizon=60_000.0, seed=29)
    tv = 0.5 * sum(abs(a - b) for a, b in zip(metrics.empirical_pi, dist.pi))
    assert tv < 0.02
    assert metrics.mean_transfer_time == pytest.approx(
        expected_transfer_time(dist), rel=0.03
    )
    assert metrics.per_user_throughput == pytest.approx(
        expected_per_user_throughput(dist, CFG), rel=0.03
    )


def test_littles_law_self_consistency():
    metrics = simulate_flows(CFG, horizon=30_000.0, seed=31)
    little = metrics.mean_active / (metrics.completions / metrics.horizon)
    assert abs(little - metrics.mean_transfer_time) <= metrics.ci95_transfer_time


def test_input_validation():
    with pytest.raises(ValueError):
        simulate_flows(CFG, horizon=0.0, seed=1)
    with pytest.raises(ValueError):
        simulate_flows(CFG, horizon=10.0, seed=1, n_batches=1)
