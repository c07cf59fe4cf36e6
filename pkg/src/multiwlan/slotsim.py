"""Slot-level Monte Carlo of saturated stations running binary exponential
backoff on one shared channel.

Time advances in channel slots: an idle slot lasts slot_time, a slot with
exactly one transmitter is a success lasting t_success, and a slot with two
or more transmitters is a collision lasting t_collision.  Every station
always has a frame pending.  Backoff counters decrement once per channel
slot (the discrete-time abstraction the closed-form model is built on); a
station transmits in the slot its counter reaches zero, doubles its window
after a collision up to the cap, never drops the frame, and draws a fresh
stage-zero backoff after a success.

Statistics exclude a configurable warm-up prefix and are split into equal
batches of slots; confidence intervals come from the batch means with a
Student-t multiplier.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .dcf import DcfParams
from .stats import batch_ci95

__all__ = ["SlotSimResult", "simulate_dcf"]


@dataclass(frozen=True)
class SlotSimResult:
    """Counts and estimates from the post-warm-up measurement window."""

    n: int
    n_slots_simulated: int
    successes: int
    collisions: int
    idle_slots: int
    busy_time: float  # seconds spanned by the measured slots
    measured_throughput: float  # aggregate bits/s
    measured_collision_prob: float  # per transmission attempt
    ci95_throughput: float  # half-width, bits/s
    ci95_collision_prob: float  # half-width

    @property
    def per_station_throughput(self) -> float:
        return self.measured_throughput / self.n


def simulate_dcf(
    n: int,
    params: DcfParams,
    n_slots: int = 1_000_000,
    seed: int = 0,
    warmup_fraction: float = 0.05,
    n_batches: int = 20,
) -> SlotSimResult:
    """Simulate n saturated stations for n_slots channel slots."""
    if n < 1:
        raise ValueError("need at least one station")
    if n_slots < 1:
        raise ValueError("need at least one slot")
    if not 0.0 <= warmup_fraction < 1.0:
        raise ValueError(f"warmup_fraction must be in [0, 1), got {warmup_fraction}")
    if n_batches < 2:
        raise ValueError("need at least two batches")
    warmup = int(n_slots * warmup_fraction)
    measured = n_slots - warmup
    if measured < n_batches:
        raise ValueError("fewer measured slots than batches")
    batch_size = measured // n_batches

    rng = random.Random(seed)
    w0 = params.cw_min
    max_stage = params.max_backoff_stage
    stage = [0] * n
    counter = [rng.randrange(w0) for _ in range(n)]

    idle_b = [0] * n_batches
    succ_b = [0] * n_batches
    coll_b = [0] * n_batches
    att_b = [0] * n_batches
    catt_b = [0] * n_batches

    def batch_of(event: int) -> int:
        return min((event - warmup) // batch_size, n_batches - 1)

    def add_idle(start: int, count: int) -> None:
        # distribute a run of idle slots over the batch windows it crosses
        end = start + count
        pos = max(start, warmup)
        while pos < end:
            b = batch_of(pos)
            b_end = n_slots if b == n_batches - 1 else warmup + (b + 1) * batch_size
            step = min(end, b_end) - pos
            idle_b[b] += step
            pos += step

    event = 0
    while event < n_slots:
        gap = min(counter)
        if gap:
            take = gap if event + gap <= n_slots else n_slots - event
            add_idle(event, take)
            counter = [c - take for c in counter]
            event += take
            if event >= n_slots:
                break
        transmitters = [i for i in range(n) if counter[i] == 0]
        k = len(transmitters)
        if event >= warmup:
            b = batch_of(event)
            if k == 1:
                succ_b[b] += 1
                att_b[b] += 1
            else:
                coll_b[b] += 1
                att_b[b] += k
                catt_b[b] += k
        # the busy slot still counts one backoff decrement for bystanders;
        # transmitters sit at zero here so the guard skips them
        for i in range(n):
            if counter[i]:
                counter[i] -= 1
        if k == 1:
            i = transmitters[0]
            stage[i] = 0
            counter[i] = rng.randrange(w0)
        else:
            for i in transmitters:
                s = stage[i] + 1
                if s > max_stage:
                    s = max_stage
                stage[i] = s
                counter[i] = rng.randrange(w0 << s)
        event += 1

    idle = sum(idle_b)
    successes = sum(succ_b)
    collisions = sum(coll_b)
    attempts = sum(att_b)
    collided = sum(catt_b)
    busy_time = (
        idle * params.slot_time
        + successes * params.t_success
        + collisions * params.t_collision
    )
    throughput = successes * params.payload_bits / busy_time
    collision_prob = collided / attempts if attempts else 0.0

    thr_means = [
        succ_b[b]
        * params.payload_bits
        / (
            idle_b[b] * params.slot_time
            + succ_b[b] * params.t_success
            + coll_b[b] * params.t_collision
        )
        for b in range(n_batches)
    ]
    p_means = [catt_b[b] / att_b[b] for b in range(n_batches) if att_b[b]]
    return SlotSimResult(
        n=n,
        n_slots_simulated=measured,
        successes=successes,
        collisions=collisions,
        idle_slots=idle,
        busy_time=busy_time,
        measured_throughput=throughput,
        measured_collision_prob=collision_prob,
        ci95_throughput=batch_ci95(thr_means),
        ci95_collision_prob=batch_ci95(p_means),
    )
