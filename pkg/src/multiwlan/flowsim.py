"""Event-driven simulation of the station activity process.

Idle stations start a file transfer at rate arrival_rate each; every active
transfer completes at the state-dependent service rate, so in state i the
next event is an exponential race between total arrival rate (N - i) *
lambda and total service rate i * mu_i.  Rates are memoryless and re-drawn
on every state change, which makes the race statistically exact for the
model.  The station that arrives or finishes is chosen uniformly; per-file
transfer times run from arrival to completion.

This simulator validates the chain mathematics, not the MAC layer: service
rates are taken from the same state-dependent throughput table the chain
uses.  The MAC layer has its own slot-level oracle.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .scenario import ScenarioConfig, station_throughput
from .stats import batch_ci95

__all__ = ["FlowMetrics", "simulate_flows"]


@dataclass(frozen=True)
class FlowMetrics:
    """Time-weighted and per-file estimates over one simulated horizon."""

    horizon: float
    completions: int
    empirical_pi: tuple[float, ...]  # time fraction spent in each state
    per_user_throughput: float  # bits/s, time average of the state throughput
    mean_transfer_time: float  # seconds, mean over completed files (nan if none)
    mean_active: float
    ci95_throughput: float  # half-width, bits/s
    ci95_transfer_time: float  # half-width, seconds


def simulate_flows(
    cfg: ScenarioConfig,
    horizon: float,
    seed: int = 0,
    n_batches: int = 20,
) -> FlowMetrics:
    """Simulate the activity process for `horizon` seconds."""
    if horizon <= 0.0:
        raise ValueError(f"horizon must be > 0, got {horizon}")
    if n_batches < 2:
        raise ValueError("need at least two batches")
    n = cfg.n_stations
    lam = cfg.arrival_rate
    s_table = [station_throughput(i, cfg) for i in range(n + 1)]
    total_service = [i * s_table[i] / cfg.mean_file_size for i in range(n + 1)]
    batch_len = horizon / n_batches

    rng = random.Random(seed)
    occupancy = [0.0] * (n + 1)
    weighted_s = [0.0] * n_batches  # integral of the state throughput per batch
    delay_sum = [0.0] * n_batches
    delay_cnt = [0] * n_batches
    arrivals: list[float] = []  # arrival times of the active transfers
    now = 0.0
    state = 0
    completions = 0

    def credit(t0: float, t1: float, value: float) -> None:
        # spread value * dt over the batch windows the interval crosses
        pos = t0
        while pos < t1:
            b = min(int(pos / batch_len), n_batches - 1)
            b_end = horizon if b == n_batches - 1 else (b + 1) * batch_len
            step = min(t1, b_end) - pos
            weighted_s[b] += value * step
            pos += step

    while True:
        arrival_rate = (n - state) * lam
        total = arrival_rate + total_service[state]
        if total == 0.0:
            occupancy[state] += horizon - now
            credit(now, horizon, s_table[state])
            break
        dt = rng.expovariate(total)
        segment_end = min(now + dt, horizon)
        occupancy[state] += segment_end - now
        credit(now, segment_end, s_table[state])
        if now + dt >= horizon:
            break
        now += dt
        if rng.random() * total < arrival_rate:
            arrivals.append(now)
            state += 1
        else:
            delay = now - arrivals.pop(rng.randrange(state))
            completions += 1
            b = min(int(now / batch_len), n_batches - 1)
            delay_sum[b] += delay
            delay_cnt[b] += 1
            state -= 1

    elapsed = math.fsum(occupancy)
    pi = tuple(x / elapsed for x in occupancy)
    per_user = math.fsum(weighted_s) / elapsed
    mean_active = math.fsum(i * occupancy[i] for i in range(n + 1)) / elapsed
    mean_delay = (
        math.fsum(delay_sum) / completions if completions else math.nan
    )
    thr_means = [weighted_s[b] / batch_len for b in range(n_batches)]
    delay_means = [
        delay_sum[b] / delay_cnt[b] for b in range(n_batches) if delay_cnt[b]
    ]
    return FlowMetrics(
        horizon=horizon,
        completions=completions,
        empirical_pi=pi,
        per_user_throughput=per_user,
        mean_transfer_time=mean_delay,
        mean_active=mean_active,
        ci95_throughput=batch_ci95(thr_means),
        ci95_transfer_time=batch_ci95(delay_means),
    )
