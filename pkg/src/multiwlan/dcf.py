"""Closed-form saturation model of 802.11 DCF contention (Bianchi model).

Couples a station's per-slot transmit probability tau with the conditional
collision probability p it experiences, solves the fixed point for n
saturated contenders on one channel, and derives aggregate and per-station
saturation throughput from the slot occupancy probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "DcfParams",
    "BianchiSolution",
    "solve_bianchi",
    "throughput",
    "per_station_throughput",
]

_MAX_BISECT = 200
_BRACKET_TOL = 1e-15
_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class DcfParams:
    """Physical and MAC constants of one access point's channel.

    The contention window at backoff stage k is 2**min(k, max_backoff_stage)
    * cw_min, so cw_max = 2**max_backoff_stage * cw_min.  Busy durations are
    opaque constants; by default a collision occupies the channel exactly as
    long as a success (basic access, no RTS/CTS).
    """

    cw_min: int = 8
    max_backoff_stage: int = 5
    payload_bits: float = 12000.0
    slot_time: float = 9e-6
    t_success: float = 253e-6
    t_collision: float = 253e-6

    def __post_init__(self) -> None:
        if self.cw_min < 2:
            raise ValueError(f"cw_min must be an integer >= 2, got {self.cw_min}")
        if self.max_backoff_stage < 0:
            raise ValueError(
                f"max_backoff_stage must be >= 0, got {self.max_backoff_stage}"
            )
        if self.payload_bits <= 0:
            raise ValueError(f"payload_bits must be > 0, got {self.payload_bits}")
        for name in ("slot_time", "t_success", "t_collision"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")

    @property
    def cw_max(self) -> int:
        return self.cw_min * (1 << self.max_backoff_stage)


@dataclass(frozen=True)
class BianchiSolution:
    """Fixed point of the saturation model plus derived slot probabilities."""

    n: int
    tau: float
    p: float
    p_tr: float  # probability a slot carries at least one transmission
    p_s: float  # probability a transmission slot is a success
    aggregate_throughput: float  # bits/s
    per_station_throughput: float  # bits/s


def _transmit_probability(p: float, w: int, m: int) -> float:
    """Per-slot transmit probability of a station whose transmissions collide
    with probability p.

    Algebraically 2(1-2p) / ((1-2p)(w+1) + p*w*(1-(2p)^m)), rewritten with the
    geometric sum expanded so the expression stays finite at p = 1/2.
    """
    geo = sum((2.0 * p) ** k for k in range(m))
    return 2.0 / (w + 1 + p * w * geo)


def solve_bianchi(n: int, params: DcfParams) -> BianchiSolution:
    """Solve the (tau, p) fixed point for n saturated stations.

    Uses bisection on p: g(p) = p - (1 - (1 - tau(p))**(n-1)) is strictly
    increasing because tau(p) is decreasing, so the root is unique.
    """
    if n < 1:
        raise ValueError("no contenders")
    return _solve_cached(n, params)


@lru_cache(maxsize=None)
def _solve_cached(n: int, params: DcfParams) -> BianchiSolution:
    w, m = params.cw_min, params.max_backoff_stage
    if n == 1:
        p = 0.0
        tau = _transmit_probability(0.0, w, m)
    else:
        lo, hi = 0.0, 1.0
        for _ in range(_MAX_BISECT):
            mid = 0.5 * (lo + hi)
            g = mid - 1.0 + (1.0 - _transmit_probability(mid, w, m)) ** (n - 1)
            if g < 0.0:
                lo = mid
            else:
                hi = mid
            if hi - lo <= _BRACKET_TOL:
                break
        p = 0.5 * (lo + hi)
        tau = _transmit_probability(p, w, m)
        if abs(p - (1.0 - (1.0 - tau) ** (n - 1))) >= _RESIDUAL_TOL:
            raise ArithmeticError(
                f"fixed point did not converge for n={n}, cw_min={w}"
            )
    aggregate, per_station = throughput(n, tau, params)
    p_tr = 1.0 - (1.0 - tau) ** n
    p_s = n * tau * (1.0 - tau) ** (n - 1) / p_tr if p_tr > 0.0 else 0.0
    return BianchiSolution(
        n=n,
        tau=tau,
        p=p,
        p_tr=p_tr,
        p_s=p_s,
        aggregate_throughput=aggregate,
        per_station_throughput=per_station,
    )


def throughput(n: int, tau: float, params: DcfParams) -> tuple[float, float]:
    """Aggregate and per-station saturation throughput in bits/s.

    S = Ps*Ptr*L / ((1-Ptr)*sigma + Ptr*Ps*Ts + Ptr*(1-Ps)*Tc), the payload
    delivered per expected slot duration.  tau = 0 yields zero throughput
    (degenerate, not an error).
    """
    if n < 1:
        raise ValueError("no contenders")
    if tau <= 0.0:
        return 0.0, 0.0
    p_tr = 1.0 - (1.0 - tau) ** n
    p_s = n * tau * (1.0 - tau) ** (n - 1) / p_tr
    expected_slot = (
        (1.0 - p_tr) * params.slot_time
        + p_tr * p_s * params.t_success
        + p_tr * (1.0 - p_s) * params.t_collision
    )
    aggregate = p_s * p_tr * params.payload_bits / expected_slot
    return aggregate, aggregate / n


def per_station_throughput(n_active: int, params: DcfParams) -> float:
    """Saturation throughput of one station among n_active contenders.

    Zero active stations carry zero traffic, so the 0 case returns 0.0 by
    convention.
    """
    if n_active < 0:
        raise ValueError(f"n_active must be >= 0, got {n_active}")
    if n_active == 0:
        return 0.0
    return solve_bianchi(n_active, params).per_station_throughput
