"""Two-AP scenario construction.

Stations either hold a single interface and sit on one of the two APs
(an even static split), or hold two interfaces and contend on both APs at
once.  This module computes the state-dependent throughput a transferring
station gets and the resulting file service rate.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .dcf import DcfParams, per_station_throughput

__all__ = [
    "ScenarioConfig",
    "station_throughput",
    "service_rate",
    "assign_stations",
]

EMPTY_STATE_CONVENTIONS = ("first-active", "zero")


@dataclass(frozen=True)
class ScenarioConfig:
    """Full description of one multi-station experiment.

    empty_state_throughput picks the value used for the zero-active state in
    expected-throughput sums: "first-active" treats it as the throughput an
    arriving station would immediately receive (same as one active station),
    "zero" counts an empty network as zero.
    """

    n_stations: int = 10
    interfaces_per_station: int = 1
    arrival_rate: float = 0.1  # files/s per idle station
    mean_file_size: float = 1e8  # bits
    ap1_params: DcfParams = field(default_factory=DcfParams)
    ap2_params: DcfParams = field(default_factory=DcfParams)
    rng_seed: int = 1
    empty_state_throughput: str = "first-active"

    def __post_init__(self) -> None:
        if self.n_stations < 1:
            raise ValueError(f"n_stations must be >= 1, got {self.n_stations}")
        if self.interfaces_per_station not in (1, 2):
            raise ValueError(
                "interfaces_per_station must be 1 or 2, got "
                f"{self.interfaces_per_station}"
            )
        if self.arrival_rate < 0:
            raise ValueError(f"arrival_rate must be >= 0, got {self.arrival_rate}")
        if self.mean_file_size <= 0:
            raise ValueError(
                f"mean_file_size must be > 0, got {self.mean_file_size}"
            )
        if self.empty_state_throughput not in EMPTY_STATE_CONVENTIONS:
            raise ValueError(
                "empty_state_throughput must be one of "
                f"{EMPTY_STATE_CONVENTIONS}, got {self.empty_state_throughput!r}"
            )


def station_throughput(
    n_active: int, cfg: ScenarioConfig, interfaces: int | None = None
) -> float:
    """Average throughput (bits/s) of one transferring station when n_active
    stations are transferring.

    Single-interface stations split evenly across the APs, so AP 1 carries
    ceil(n_active/2) contenders and AP 2 floor(n_active/2), and the average
    over both halves is reported.  Dual-interface stations contend on both
    APs simultaneously and add the two per-station rates.
    """
    m = cfg.interfaces_per_station if interfaces is None else interfaces
    if m not in (1, 2):
        raise ValueError(f"interfaces must be 1 or 2, got {m}")
    if not 0 <= n_active <= cfg.n_stations:
        raise ValueError(
            f"n_active must be in [0, {cfg.n_stations}], got {n_active}"
        )
    if n_active == 0:
        if cfg.empty_state_throughput == "zero":
            return 0.0
        return station_throughput(1, cfg, m)
    if m == 1:
        on_ap1 = math.ceil(n_active / 2)
        on_ap2 = n_active // 2
        return 0.5 * (
            per_station_throughput(on_ap1, cfg.ap1_params)
            + per_station_throughput(on_ap2, cfg.ap2_params)
        )
    return per_station_throughput(n_active, cfg.ap1_params) + per_station_throughput(
        n_active, cfg.ap2_params
    )


def service_rate(
    n_active: int, cfg: ScenarioConfig, interfaces: int | None = None
) -> float:
    """File completions per second for one transferring station: its
    throughput divided by the mean file size."""
    if n_active < 1:
        raise ValueError("no service in empty state")
    return station_throughput(n_active, cfg, interfaces) / cfg.mean_file_size


def assign_stations(
    n_stations: int, rng: random.Random | int
) -> tuple[int, int]:
    """Split n_stations evenly between the two APs.

    For odd counts the leftover station's AP is a fair coin flip from the
    caller's generator (an int seeds a fresh one).
    """
    if n_stations < 0:
        raise ValueError(f"n_stations must be >= 0, got {n_stations}")
    if isinstance(rng, int):
        rng = random.Random(rng)
    count_ap1 = count_ap2 = n_stations // 2
    if n_stations % 2:
        if rng.random() < 0.5:
            count_ap1 += 1
        else:
            count_ap2 += 1
    return count_ap1, count_ap2
