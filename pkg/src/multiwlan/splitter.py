"""Idealized multipath chunk scheduling over constant-rate pipes.

Each link is a pipe whose usable rate is its capacity minus any background
traffic it carries.  A transfer plan assigns a fraction of the file to each
link; a link's finish time is its share over its usable rate and the
transfer completes when the slowest share does.  Chunked plans put one of
n equal chunks on the slow link and the rest on the fast one; the optimal
plan splits proportionally to usable rate, which equalizes finish times.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "LinkSpec",
    "SplitPlan",
    "available_bandwidth",
    "even_plan",
    "chunk_plan",
    "optimal_fractions",
    "optimal_plan",
    "predict_transfer_time",
    "speedup_vs_single",
]


@dataclass(frozen=True)
class LinkSpec:
    """One network path: raw capacity and the cross traffic riding on it,
    both in bits/s."""

    capacity: float
    background_load: float = 0.0

    def __post_init__(self) -> None:
        if self.capacity <= 0:
            raise ValueError(f"capacity must be > 0, got {self.capacity}")
        if self.background_load < 0:
            raise ValueError(
                f"background_load must be >= 0, got {self.background_load}"
            )


@dataclass(frozen=True)
class SplitPlan:
    """Per-link byte fractions with the predicted transfer times."""

    file_size: float  # bits
    fractions: tuple[float, ...]
    per_link_time: tuple[float, ...]  # seconds; inf for a loaded dead link
    makespan: float  # seconds
    origin: str  # "even", "chunked(n)" or "optimal"


def available_bandwidth(link: LinkSpec) -> float:
    """Usable rate of a link: capacity minus background traffic, floored at
    zero."""
    return max(0.0, link.capacity - link.background_load)


def predict_transfer_time(
    plan: SplitPlan, links: Sequence[LinkSpec]
) -> tuple[tuple[float, ...], float]:
    """Per-link finish times and the makespan of a plan over the given links.

    A positive fraction on a link with no usable rate never finishes, so its
    time (and the makespan) is inf rather than an error.
    """
    if len(links) != len(plan.fractions):
        raise ValueError(
            f"plan has {len(plan.fractions)} fractions but {len(links)} links given"
        )
    times = []
    for frac, link in zip(plan.fractions, links):
        if frac == 0.0:
            times.append(0.0)
            continue
        rate = available_bandwidth(link)
        times.append(frac * plan.file_size / rate if rate > 0.0 else math.inf)
    return tuple(times), max(times)


def _build_plan(
    file_size: float,
    fractions: Sequence[float],
    links: Sequence[LinkSpec],
    origin: str,
) -> SplitPlan:
    if file_size <= 0:
        raise ValueError(f"file_size must be > 0, got {file_size}")
    if any(f < 0 for f in fractions):
        raise ValueError("fractions must be >= 0")
    if abs(math.fsum(fractions) - 1.0) > 1e-12:
        raise ValueError(f"fractions must sum to 1, got {math.fsum(fractions)}")
    plan = SplitPlan(
        file_size=float(file_size),
        fractions=tuple(float(f) for f in fractions),
        per_link_time=(),
        makespan=math.nan,
        origin=origin,
    )
    times, makespan = predict_transfer_time(plan, links)
    return SplitPlan(plan.file_size, plan.fractions, times, makespan, origin)


def even_plan(file_size: float, links: Sequence[LinkSpec]) -> SplitPlan:
    """Equal share on every link (the 50/50 baseline for two links)."""
    if not links:
        raise ValueError("need at least one link")
    share = 1.0 / len(links)
    return _build_plan(file_size, [share] * len(links), links, "even")


def chunk_plan(
    file_size: float, n_chunks: int, links: Sequence[LinkSpec]
) -> SplitPlan:
    """Split into n equal chunks: one on the slow link, n - 1 on the fast.

    Slow and fast are ranked by usable rate at plan time; on a tie the first
    link is taken as the slow one.
    """
    if n_chunks < 2:
        raise ValueError(f"split factor must be >= 2, got {n_chunks}")
    if len(links) != 2:
        raise ValueError(f"chunk plans are defined for two links, got {len(links)}")
    slow_first = available_bandwidth(links[0]) <= available_bandwidth(links[1])
    slow_share = 1.0 / n_chunks
    fast_share = (n_chunks - 1) / n_chunks
    fractions = (
        (slow_share, fast_share) if slow_first else (fast_share, slow_share)
    )
    return _build_plan(file_size, fractions, links, f"chunked({n_chunks})")


def optimal_fractions(links: Sequence[LinkSpec]) -> tuple[float, ...]:
    """Fractions proportional to usable rate; equalizes the finish times of
    every live link, which minimizes the makespan."""
    rates = [available_bandwidth(link) for link in links]
    total = math.fsum(rates)
    if total <= 0.0:
        raise ValueError("no link has available bandwidth")
    return tuple(r / total for r in rates)


def optimal_plan(file_size: float, links: Sequence[LinkSpec]) -> SplitPlan:
    return _build_plan(file_size, optimal_fractions(links), links, "optimal")


def speedup_vs_single(
    file_size: float, links: Sequence[LinkSpec], plan: SplitPlan
) -> float:
    """Plan makespan relative to pushing the whole file down the slowest
    link; 0.5 means twice as fast as the single-link baseline."""
    baseline_rate = min(available_bandwidth(link) for link in links)
    if baseline_rate <= 0.0:
        raise ValueError("baseline link has no available bandwidth")
    _, makespan = predict_transfer_time(plan, links)
    return makespan / (file_size / baseline_rate)
