"""Birth-death chain of the number of transferring stations.

State i means i stations are mid-transfer.  Idle stations turn active at
rate arrival_rate each, so state i gains arrivals at (N - i) * lambda;
each active station completes at the state-dependent service rate, so
state i loses transfers at i * mu_i.  Closed-form equilibrium plus the
derived per-user throughput and mean transfer time (Little's formula).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .scenario import ScenarioConfig, service_rate, station_throughput

__all__ = [
    "BirthDeathChain",
    "EquilibriumDistribution",
    "build_chain",
    "equilibrium",
    "expected_per_user_throughput",
    "expected_transfer_time",
]

# beyond this magnitude of log-weight the direct product form would overflow
_LOG_SAFE = 700.0


@dataclass(frozen=True)
class BirthDeathChain:
    """Transition rates of a birth-death chain on states 0..n_states-1.

    forward_rates[i] is the rate from state i to i+1 (i = 0..N-1);
    backward_rates[k] is the rate from state k+1 to k (k = 0..N-1).
    """

    n_states: int
    forward_rates: tuple[float, ...]
    backward_rates: tuple[float, ...]

    def __post_init__(self) -> None:
        n_top = self.n_states - 1
        if n_top < 1:
            raise ValueError("chain needs at least two states")
        if len(self.forward_rates) != n_top or len(self.backward_rates) != n_top:
            raise ValueError(
                f"expected {n_top} forward and backward rates, got "
                f"{len(self.forward_rates)} and {len(self.backward_rates)}"
            )
        if any(r < 0 for r in self.forward_rates + self.backward_rates):
            raise ValueError("transition rates must be >= 0")


@dataclass(frozen=True)
class EquilibriumDistribution:
    """Stationary distribution with its headline moments.

    effective_arrival_rate is the stationary rate at which transfers start,
    sum_j pi_j * forward_rate_j; in equilibrium it equals the completion
    rate.
    """

    pi: tuple[float, ...]
    mean_active: float
    effective_arrival_rate: float


def build_chain(cfg: ScenarioConfig) -> BirthDeathChain:
    """Chain for the configured scenario: arrivals from idle stations,
    service from the state-dependent per-station throughput."""
    n = cfg.n_stations
    lam = cfg.arrival_rate
    forward = tuple((n - i) * lam for i in range(n))
    backward = tuple(i * service_rate(i, cfg) for i in range(1, n + 1))
    return BirthDeathChain(n + 1, forward, backward)


def _product_weights(ratios: list[float]) -> list[float]:
    """Unnormalized stationary weights from the step ratios, safe against
    overflow.

    The plain running product is exact and covers every sane input; when its
    log leaves float range the products are rebuilt outward from the peak
    state instead, so only genuinely negligible tail states underflow.
    """
    log_w = [0.0]
    acc = 0.0
    for r in ratios:
        acc += math.log(r) if r > 0.0 else -math.inf
        log_w.append(acc)
    if max(log_w) < _LOG_SAFE and min(log_w) > -_LOG_SAFE:
        weights = [1.0]
        cur = 1.0
        for r in ratios:
            cur *= r
            weights.append(cur)
        return weights
    peak = max(range(len(log_w)), key=log_w.__getitem__)
    weights = [0.0] * len(log_w)
    weights[peak] = 1.0
    cur = 1.0
    for k in range(peak + 1, len(log_w)):
        cur *= ratios[k - 1]
        weights[k] = cur
    cur = 1.0
    for k in range(peak - 1, -1, -1):
        cur = cur / ratios[k] if ratios[k] > 0.0 else 0.0
        weights[k] = cur
    return weights


def equilibrium(chain: BirthDeathChain) -> EquilibriumDistribution:
    """Stationary probabilities via the detailed-balance product form."""
    n_top = chain.n_states - 1
    fw, bw = chain.forward_rates, chain.backward_rates
    for k in range(n_top):
        if fw[k] > 0.0 and bw[k] == 0.0:
            raise ValueError(
                f"absorbing saturation: state {k + 1} is reachable but has "
                "no service"
            )
    ratios = [fw[k] / bw[k] if fw[k] > 0.0 else 0.0 for k in range(n_top)]
    weights = _product_weights(ratios)
    total = math.fsum(weights)
    pi = tuple(x / total for x in weights)
    mean_active = math.fsum(i * pi[i] for i in range(len(pi)))
    effective_arrival = math.fsum(pi[k] * fw[k] for k in range(n_top))
    return EquilibriumDistribution(
        pi=pi, mean_active=mean_active, effective_arrival_rate=effective_arrival
    )


def expected_per_user_throughput(
    dist: EquilibriumDistribution,
    cfg: ScenarioConfig,
    interfaces: int | None = None,
    conditional_on_busy: bool = False,
) -> float:
    """Stationary mean of the per-station throughput, sum_i pi_i * S_i.

    The zero-active state contributes via the configured convention.  With
    conditional_on_busy the mean is taken over the busy states only,
    sum_{i>=1} pi_i * S_i / (1 - pi_0).
    """
    if len(dist.pi) != cfg.n_stations + 1:
        raise ValueError(
            f"distribution has {len(dist.pi)} states but the scenario has "
            f"{cfg.n_stations + 1}"
        )
    values = [
        station_throughput(i, cfg, interfaces) for i in range(len(dist.pi))
    ]
    if conditional_on_busy:
        busy = 1.0 - dist.pi[0]
        if busy <= 0.0:
            raise ValueError("network is never busy; conditional mean undefined")
        return math.fsum(p * s for p, s in zip(dist.pi[1:], values[1:])) / busy
    return math.fsum(p * s for p, s in zip(dist.pi, values))


def expected_transfer_time(dist: EquilibriumDistribution) -> float:
    """Mean file transfer time by Little's formula: mean number of active
    transfers over the stationary transfer start rate."""
    if dist.effective_arrival_rate <= 0.0:
        raise ValueError("no arrivals; transfer time undefined")
    return dist.mean_active / dist.effective_arrival_rate
