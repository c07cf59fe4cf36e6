"""Multipath split plans over ideal constant-rate pipes."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multiwlan.splitter import (
    LinkSpec,
    available_bandwidth,
    chunk_plan,
    even_plan,
    optimal_fractions,
    optimal_plan,
    predict_transfer_time,
    speedup_vs_single,
)

SLOW_FAST = (LinkSpec(2e6), LinkSpec(12e6))
EQUAL = (LinkSpec(10e6), LinkSpec(10e6))


def test_available_bandwidth():
    assert available_bandwidth(LinkSpec(12e6)) == 12e6
    assert available_bandwidth(LinkSpec(12e6, 10e6)) == 2e6
    assert available_bandwidth(LinkSpec(5e6, 7e6)) == 0.0


def test_link_validation():
    with pytest.raises(ValueError):
        LinkSpec(0.0)
    with pytest.raises(ValueError):
        LinkSpec(1e6, -1.0)


@pytest.mark.parametrize(
    "n,slow,fast",
    [(2, 0.5, 0.5), (4, 0.25, 0.75), (6, 1 / 6, 5 / 6)],
)
def test_chunk_fractions(n, slow, fast):
    plan = chunk_plan(128e6, n, SLOW_FAST)
    assert plan.fractions == (slow, fast)
    assert plan.origin == f"chunked({n})"


def test_chunk_plan_orients_by_available_rate():
    busy_first = (LinkSpec(12e6, 10e6), LinkSpec(12e6))
    assert chunk_plan(1e6, 4, busy_first).fractions == (0.25, 0.75)
    busy_second = (LinkSpec(12e6), LinkSpec(12e6, 10e6))
    assert chunk_plan(1e6, 4, busy_second).fractions == (0.75, 0.25)
    # tie: the first link is taken as the slow one
    assert chunk_plan(1e6, 4, EQUAL).fractions == (0.25, 0.75)


def test_chunk_plan_validation():
    with pytest.raises(ValueError):
        chunk_plan(1e6, 1, SLOW_FAST)
    with pytest.raises(ValueError):
        chunk_plan(1e6, 2, (LinkSpec(1e6),))
    with pytest.raises(ValueError):
        chunk_plan(0.0, 2, SLOW_FAST)


def test_optimal_fractions_equalize_times():
    fractions = optimal_fractions(SLOW_FAST)
    assert fractions == pytest.approx((1 / 7, 6 / 7), rel=1e-15)
    assert optimal_fractions(EQUAL) == (0.5, 0.5)
    assert optimal_fractions((LinkSpec(5e6, 7e6), LinkSpec(12e6))) == (0.0, 1.0)
    with pytest.raises(ValueError):
        optimal_fractions((LinkSpec(5e6, 7e6), LinkSpec(3e6, 3e6)))


def test_even_plan_times():
    plan = even_plan(128e6, SLOW_FAST)
    assert plan.per_link_time == pytest.approx((32.0, 64 / 12), rel=1e-12)
    assert plan.makespan == pytest.approx(32.0, rel=1e-12)


def test_optimal_plan_reduction_vs_even():
    even = even_plan(128e6, SLOW_FAST)
    optimal = optimal_plan(128e6, SLOW_FAST)
    assert optimal.makespan == pytest.approx(128e6 * (6 / 7) / 12e6, rel=1e-12)
    times, makespan = predict_transfer_time(optimal, SLOW_FAST)
    assert times[0] == pytest.approx(times[1], rel=1e-12)
    reduction = 1.0 - makespan / even.makespan
    assert reduction == pytest.approx(5 / 7, rel=1e-12)
    assert abs(100 * reduction - 71.0) <= 3.0


def test_dead_link_gives_infinite_time_not_error():
    links = (LinkSpec(5e6, 7e6), LinkSpec(12e6))
    plan = even_plan(1e6, links)
    assert plan.per_link_time[0] == math.inf
    assert plan.makespan == math.inf
    assert optimal_plan(1e6, links).makespan < math.inf


def test_speedup_vs_single():
    assert speedup_vs_single(128e6, EQUAL, even_plan(128e6, EQUAL)) == 0.5
    lazy = chunk_plan(128e6, 2, SLOW_FAST)
    assert speedup_vs_single(128e6, SLOW_FAST, lazy) == pytest.approx(
        0.5, rel=1e-12
    )
    optimal = optimal_plan(128e6, SLOW_FAST)
    assert speedup_vs_single(128e6, SLOW_FAST, optimal) == pytest.approx(
        1 / 7, rel=1e-12
    )
    with pytest.raises(ValueError):
        speedup_vs_single(1e6, (LinkSpec(5e6, 7e6), LinkSpec(1e6)), lazy)


def test_whole_file_on_baseline_is_identity():
    # all traffic on the slow link: the plan is exactly the baseline
    from multiwlan.splitter import SplitPlan

    manual = SplitPlan(64e6, (1.0, 0.0), (64e6 / 2e6, 0.0), 64e6 / 2e6, "even")
    assert speedup_vs_single(64e6, SLOW_FAST, manual) == pytest.approx(1.0)


def test_makespan_ordering_on_the_slow_limited_side():
    optimal = optimal_plan(128e6, SLOW_FAST)
    previous = even_plan(128e6, SLOW_FAST).makespan
    for n in (3, 4, 5, 6, 7):
        if 1.0 / n < optimal.fractions[0]:
            break
        makespan = chunk_plan(128e6, n, SLOW_FAST).makespan
        assert optimal.makespan <= makespan <= previous * (1 + 1e-12)
        previous = makespan


def test_grid_search_cannot_beat_optimal():
    rng = random.Random(2024)
    for _ in range(25):
        links = (
            LinkSpec(rng.uniform(1e6, 50e6), rng.uniform(0, 0.5e6)),
            LinkSpec(rng.uniform(1e6, 50e6), rng.uniform(0, 0.5e6)),
        )
        file_size = rng.uniform(1e6, 1e9)
        best = optimal_plan(file_size, links).makespan
        rates = [available_bandwidth(link) for link in links]
        grid_best = min(
            max(k / 1000 * file_size / rates[0], (1 - k / 1000) * file_size / rates[1])
            for k in range(1001)
        )
        assert grid_best >= best * (1 - 0.002)


@settings(max_examples=60, deadline=None)
@given(
    cap1=st.floats(1e3, 1e9),
    cap2=st.floats(1e3, 1e9),
    file_size=st.floats(1e3, 1e12),
    scale=st.floats(0.1, 100.0),
)
def test_scaling_and_normalization(cap1, cap2, file_size, scale):
    links = (LinkSpec(cap1), LinkSpec(cap2))
    fractions = optimal_fractions(links)
    assert math.fsum(fractions) == pytest.approx(1.0, abs=1e-12)
    plan = optimal_plan(file_size, links)
    scaled = optimal_plan(file_size * scale, links)
    assert scaled.makespan == pytest.approx(plan.makespan * scale, rel=1e-9)
    for a, b in zip(scaled.per_link_time, plan.per_link_time):
        assert a == pytest.approx(b * scale, rel=1e-9)
