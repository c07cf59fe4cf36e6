"""Plain-text experiment configuration.

One assignment per line (`key = value`), `#` comments, and three optional
sections: `[ap1]` and `[ap2]` override channel constants per AP, `[sweep]`
describes the arrival-rate grid.  Channel keys given at top level apply to
both APs.  Every key is optional; omitted keys keep the model defaults
(payload 12000 bits, 253 us busy slots, 9 us idle slots, cw_min 8 with five
doubling stages, 10 stations).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

from .dcf import DcfParams
from .scenario import EMPTY_STATE_CONVENTIONS, ScenarioConfig

__all__ = ["ConfigError", "SweepGrid", "ExperimentConfig", "parse_config"]

FIGURES = ("bianchi", "fig6", "fig7", "fig8", "split", "sim-dcf", "sim-flow")


class ConfigError(ValueError):
    """Raised for unknown keys, malformed lines or out-of-range values."""


@dataclass(frozen=True)
class SweepGrid:
    """Arrival-rate grid: `points` values from lambda_min to lambda_max,
    spaced linearly or logarithmically."""

    lambda_min: float = 1e-4
    lambda_max: float = 10.0
    points: int = 25
    scale: str = "log"

    def __post_init__(self) -> None:
        if self.points < 1:
            raise ValueError(f"points must be >= 1, got {self.points}")
        if self.lambda_min < 0:
            raise ValueError(f"lambda_min must be >= 0, got {self.lambda_min}")
        if self.lambda_min > self.lambda_max:
            raise ValueError(
                f"lambda_min ({self.lambda_min}) must be <= lambda_max "
                f"({self.lambda_max})"
            )
        if self.scale not in ("log", "linear"):
            raise ValueError(f"scale must be 'log' or 'linear', got {self.scale!r}")
        if self.scale == "log" and self.lambda_min <= 0:
            raise ValueError("lambda_min must be > 0 for a log sweep")

    def values(self) -> tuple[float, ...]:
        if self.points == 1:
            return (self.lambda_min,)
        if self.scale == "linear":
            step = (self.lambda_max - self.lambda_min) / (self.points - 1)
            return tuple(self.lambda_min + k * step for k in range(self.points))
        ratio = math.log(self.lambda_max / self.lambda_min) / (self.points - 1)
        return tuple(
            self.lambda_min * math.exp(k * ratio) for k in range(self.points)
        )


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a run needs: the scenario, the sweep, and table sizes."""

    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)
    sweep: SweepGrid = field(default_factory=SweepGrid)
    figure: str | None = None
    output_path: str | None = None
    seeds: tuple[int, ...] = ()
    file_sizes: tuple[float, ...] = (1e6, 1e7, 1e8)
    cw_min_values: tuple[int, ...] = (8, 32, 128, 512)
    sim_station_counts: tuple[int, ...] = (1, 2, 5, 10, 20)
    sim_cw_min_values: tuple[int, ...] = (8, 32, 128)
    n_slots: int = 1_000_000
    horizon: float = 2000.0
    warmup_fraction: float = 0.05
    n_batches: int = 20


def _as_int(text: str) -> int:
    return int(text, 0)


def _as_float(text: str) -> float:
    value = float(text)
    if math.isnan(value) or math.isinf(value):
        raise ValueError("must be finite")
    return value


def _int_min(lo: int) -> Callable[[str], int]:
    def conv(text: str) -> int:
        value = _as_int(text)
        if value < lo:
            raise ValueError(f"must be >= {lo} (got {value})")
        return value

    return conv


def _float_min(lo: float, strict: bool = False) -> Callable[[str], float]:
    def conv(text: str) -> float:
        value = _as_float(text)
        if value < lo or (strict and value == lo):
            op = ">" if strict else ">="
            raise ValueError(f"must be {op} {lo} (got {value})")
        return value

    return conv


def _choice(*options: str) -> Callable[[str], str]:
    def conv(text: str) -> str:
        if text not in options:
            raise ValueError(f"must be one of {', '.join(options)} (got {text!r})")
        return text

    return conv


def _interfaces(text: str) -> int:
    value = _as_int(text)
    if value not in (1, 2):
        raise ValueError(f"must be 1 or 2 (got {value})")
    return value


def _list_of(conv: Callable[[str], object]) -> Callable[[str], tuple]:
    def parse(text: str) -> tuple:
        items = [part.strip() for part in text.split(",") if part.strip()]
        if not items:
            raise ValueError("must list at least one value")
        return tuple(conv(item) for item in items)

    return parse


def _warmup(text: str) -> float:
    value = _as_float(text)
    if not 0.0 <= value < 1.0:
        raise ValueError(f"must be in [0, 1) (got {value})")
    return value


_AP_KEYS: dict[str, Callable[[str], object]] = {
    "cw_min": _int_min(2),
    "max_backoff_stage": _int_min(0),
    "payload_bits": _float_min(0.0, strict=True),
    "slot_time": _float_min(0.0, strict=True),
    "t_success": _float_min(0.0, strict=True),
    "t_collision": _float_min(0.0, strict=True),
}

_TOP_KEYS: dict[str, Callable[[str], object]] = {
    "n_stations": _int_min(1),
    "interfaces_per_station": _interfaces,
    "arrival_rate": _float_min(0.0),
    "mean_file_size": _float_min(0.0, strict=True),
    "seed": _int_min(0),
    "empty_state_throughput": _choice(*EMPTY_STATE_CONVENTIONS),
    "figure": _choice(*FIGURES),
    "output": str,
    "seeds": _list_of(_int_min(0)),
    "file_sizes": _list_of(_float_min(0.0, strict=True)),
    "cw_min_values": _list_of(_int_min(2)),
    "sim_station_counts": _list_of(_int_min(1)),
    "sim_cw_min_values": _list_of(_int_min(2)),
    "n_slots": _int_min(100),
    "horizon": _float_min(0.0, strict=True),
    "warmup_fraction": _warmup,
    "n_batches": _int_min(2),
    **_AP_KEYS,
}

_SWEEP_KEYS: dict[str, Callable[[str], object]] = {
    "lambda_min": _float_min(0.0),
    "lambda_max": _float_min(0.0),
    "points": _int_min(1),
    "scale": _choice("log", "linear"),
}

_SECTIONS = {
    None: _TOP_KEYS,
    "ap1": _AP_KEYS,
    "ap2": _AP_KEYS,
    "sweep": _SWEEP_KEYS,
}


def parse_config(text: str) -> ExperimentConfig:
    """Parse a configuration document; an empty document yields all defaults.

    Errors name the offending key and line.
    """
    values: dict[tuple[str | None, str], object] = {}
    section: str | None = None
    section_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"line {lineno}: malformed section header {line!r}")
            name = line[1:-1].strip().lower()
            if name not in ("ap1", "ap2", "sweep"):
                raise ConfigError(f"line {lineno}: unknown section [{name}]")
            section, section_line = name, lineno
            continue
        if "=" not in line:
            raise ConfigError(
                f"line {lineno}: expected 'key = value', got {line!r}"
            )
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        schema = _SECTIONS[section]
        if key not in schema:
            where = f" in section [{section}]" if section else ""
            raise ConfigError(f"line {lineno}: unknown key {key!r}{where}")
        if (section, key) in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            values[(section, key)] = schema[key](value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {key}: {exc}") from None

    def section_dict(name: str | None) -> dict[str, object]:
        return {k: v for (s, k), v in values.items() if s == name}

    top = section_dict(None)
    ap_common = {k: top.pop(k) for k in list(top) if k in _AP_KEYS}
    ap1 = DcfParams(**{**ap_common, **section_dict("ap1")})
    ap2 = DcfParams(**{**ap_common, **section_dict("ap2")})
    scenario = ScenarioConfig(
        n_stations=top.pop("n_stations", 10),
        interfaces_per_station=top.pop("interfaces_per_station", 1),
        arrival_rate=top.pop("arrival_rate", 0.1),
        mean_file_size=top.pop("mean_file_size", 1e8),
        ap1_params=ap1,
        ap2_params=ap2,
        rng_seed=top.pop("seed", 1),
        empty_state_throughput=top.pop("empty_state_throughput", "first-active"),
    )
    try:
        sweep = SweepGrid(**section_dict("sweep"))
    except ValueError as exc:
        raise ConfigError(f"line {section_line}: [sweep]: {exc}") from None
    defaults = ExperimentConfig()
    return ExperimentConfig(
        scenario=scenario,
        sweep=sweep,
        figure=top.pop("figure", None),
        output_path=top.pop("output", None),
        seeds=top.pop("seeds", ()),
        file_sizes=top.pop("file_sizes", defaults.file_sizes),
        cw_min_values=top.pop("cw_min_values", defaults.cw_min_values),
        sim_station_counts=top.pop(
            "sim_station_counts", defaults.sim_station_counts
        ),
        sim_cw_min_values=top.pop(
            "sim_cw_min_values", defaults.sim_cw_min_values
        ),
        n_slots=top.pop("n_slots", defaults.n_slots),
        horizon=top.pop("horizon", defaults.horizon),
        warmup_fraction=top.pop("warmup_fraction", defaults.warmup_fraction),
        n_batches=top.pop("n_batches", defaults.n_batches),
    )


def with_seed(cfg: ExperimentConfig, seed: int) -> ExperimentConfig:
    """Copy of cfg with the scenario seed replaced."""
    return replace(cfg, scenario=replace(cfg.scenario, rng_seed=seed))
