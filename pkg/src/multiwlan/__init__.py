"""Models and simulators for stations using one or two 802.11 interfaces
across two access points: DCF saturation throughput, a birth-death chain of
active stations with throughput/delay metrics, and an idealized multipath
chunk scheduler."""

from .config import ConfigError, ExperimentConfig, SweepGrid, parse_config
from .dcf import BianchiSolution, DcfParams, per_station_throughput, solve_bianchi, throughput
from .flowsim import FlowMetrics, simulate_flows
from .markov import (
    BirthDeathChain,
    EquilibriumDistribution,
    build_chain,
    equilibrium,
    expected_per_user_throughput,
    expected_transfer_time,
)
from .scenario import ScenarioConfig, assign_stations, service_rate, station_throughput
from .slotsim import SlotSimResult, simulate_dcf
from .splitter import (
    LinkSpec,
    SplitPlan,
    available_bandwidth,
    chunk_plan,
    even_plan,
    optimal_fractions,
    optimal_plan,
    predict_transfer_time,
    speedup_vs_single,
)

__version__ = "0.1.0"

__all__ = [
    "BianchiSolution",
    "BirthDeathChain",
    "ConfigError",
    "DcfParams",
    "EquilibriumDistribution",
    "ExperimentConfig",
    "FlowMetrics",
    "LinkSpec",
    "ScenarioConfig",
    "SlotSimResult",
    "SplitPlan",
    "SweepGrid",
    "assign_stations",
    "available_bandwidth",
    "build_chain",
    "chunk_plan",
    "equilibrium",
    "even_plan",
    "expected_per_user_throughput",
    "expected_transfer_time",
    "optimal_fractions",
    "optimal_plan",
    "parse_config",
    "per_station_throughput",
    "predict_transfer_time",
    "service_rate",
    "simulate_dcf",
    "simulate_flows",
    "solve_bianchi",
    "speedup_vs_single",
    "station_throughput",
    "throughput",
]
