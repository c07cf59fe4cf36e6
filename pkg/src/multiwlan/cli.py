"""Command-line front end.

Subcommands map one-to-one onto the tables behind the study's figures and
tests: `bianchi` dumps the saturation fixed point, `fig6` the per-station
throughput versus active stations, `fig7`/`fig8` the expected per-user
throughput and transfer delay over an arrival-rate sweep, `sim-dcf` and
`sim-flow` the Monte Carlo cross-checks, and `split` the multipath transfer
plans.  All output is CSV in SI base units (bits/s, seconds); identical
config and seed give byte-identical output.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace
from statistics import fmean
from typing import Sequence

from .config import ConfigError, ExperimentConfig, parse_config, with_seed
from .dcf import solve_bianchi
from .flowsim import simulate_flows
from .markov import build_chain, equilibrium, expected_per_user_throughput, expected_transfer_time
from .scenario import station_throughput
from .slotsim import simulate_dcf
from .splitter import (
    LinkSpec,
    chunk_plan,
    even_plan,
    optimal_plan,
    speedup_vs_single,
)
from .stats import batch_ci95

__all__ = [
    "main",
    "run_bianchi",
    "run_fig6",
    "run_fig7_fig8",
    "run_sim_dcf",
    "run_sim_flow",
    "run_split",
]

Table = tuple[list[str], list[list[object]]]


def run_bianchi(cfg: ExperimentConfig) -> Table:
    """Fixed point and throughput for 1..N contenders at each window size."""
    header = ["cw_min", "n", "tau", "p", "p_tr", "p_s", "aggregate_bps", "per_station_bps"]
    rows: list[list[object]] = []
    for cw in cfg.cw_min_values:
        params = replace(cfg.scenario.ap1_params, cw_min=cw)
        for n in range(1, cfg.scenario.n_stations + 1):
            sol = solve_bianchi(n, params)
            rows.append(
                [cw, n, sol.tau, sol.p, sol.p_tr, sol.p_s,
                 sol.aggregate_throughput, sol.per_station_throughput]
            )
    return header, rows


def run_fig6(cfg: ExperimentConfig) -> Table:
    """Per-station throughput versus number of active stations, for each
    window size and interface count."""
    header = ["cw_min", "active_stations", "interfaces", "per_station_bps"]
    rows: list[list[object]] = []
    for cw in cfg.cw_min_values:
        scenario = replace(
            cfg.scenario,
            ap1_params=replace(cfg.scenario.ap1_params, cw_min=cw),
            ap2_params=replace(cfg.scenario.ap2_params, cw_min=cw),
        )
        for i in range(1, scenario.n_stations + 1):
            for m in (1, 2):
                rows.append([cw, i, m, station_throughput(i, scenario, m)])
    return header, rows


def run_fig7_fig8(cfg: ExperimentConfig) -> Table:
    """Expected per-user throughput and transfer delay over the arrival-rate
    sweep; empirical columns are appended when seeds are configured."""
    header = [
        "lambda", "interfaces", "file_size_bits",
        "expected_throughput_bps", "expected_delay_s", "pi_0", "mean_active",
    ]
    with_sim = bool(cfg.seeds)
    if with_sim:
        header += [
            "sim_throughput_bps", "sim_delay_s",
            "sim_throughput_ci95", "sim_delay_ci95",
        ]
    rows: list[list[object]] = []
    for file_size in cfg.file_sizes:
        for m in (1, 2):
            scenario = replace(
                cfg.scenario, mean_file_size=file_size, interfaces_per_station=m
            )
            for lam in cfg.sweep.values():
                point = replace(scenario, arrival_rate=lam)
                dist = equilibrium(build_chain(point))
                throughput = expected_per_user_throughput(dist, point)
                delay = (
                    expected_transfer_time(dist)
                    if dist.effective_arrival_rate > 0
                    else None
                )
                row: list[object] = [
                    lam, m, file_size, throughput, delay, dist.pi[0], dist.mean_active,
                ]
                if with_sim:
                    runs = [
                        simulate_flows(point, cfg.horizon, seed, cfg.n_batches)
                        for seed in cfg.seeds
                    ]
                    thr = [r.per_user_throughput for r in runs]
                    delays = [r.mean_transfer_time for r in runs
                              if not math.isnan(r.mean_transfer_time)]
                    row += [
                        fmean(thr),
                        fmean(delays) if delays else None,
                        batch_ci95(thr),
                        batch_ci95(delays) if delays else None,
                    ]
                rows.append(row)
    return header, rows


def run_sim_dcf(cfg: ExperimentConfig) -> Table:
    """Slot-level simulator against the closed-form model, one row per
    (station count, window size)."""
    header = [
        "n", "cw_min", "n_slots", "successes", "collisions", "idle_slots",
        "sim_aggregate_bps", "sim_per_station_bps", "sim_collision_prob",
        "ci95_throughput_bps", "ci95_collision_prob",
        "model_per_station_bps", "model_collision_prob",
    ]
    rows: list[list[object]] = []
    row_index = 0
    for n in cfg.sim_station_counts:
        for cw in cfg.sim_cw_min_values:
            params = replace(cfg.scenario.ap1_params, cw_min=cw)
            result = simulate_dcf(
                n, params, cfg.n_slots,
                seed=cfg.scenario.rng_seed + row_index,
                warmup_fraction=cfg.warmup_fraction,
                n_batches=cfg.n_batches,
            )
            model = solve_bianchi(n, params)
            rows.append([
                n, cw, cfg.n_slots, result.successes, result.collisions,
                result.idle_slots, result.measured_throughput,
                result.per_station_throughput, result.measured_collision_prob,
                result.ci95_throughput, result.ci95_collision_prob,
                model.per_station_throughput, model.p,
            ])
            row_index += 1
    return header, rows


def run_sim_flow(cfg: ExperimentConfig) -> Table:
    """Flow simulator against the chain, one row per (lambda, interfaces,
    file size)."""
    header = [
        "lambda", "interfaces", "file_size_bits", "horizon_s", "completions",
        "model_throughput_bps", "model_delay_s",
        "sim_throughput_bps", "sim_delay_s",
        "ci95_throughput_bps", "ci95_delay_s",
        "model_pi0", "sim_pi0", "tv_distance", "sim_mean_active",
    ]
    rows: list[list[object]] = []
    row_index = 0
    for file_size in cfg.file_sizes:
        for m in (1, 2):
            scenario = replace(
                cfg.scenario, mean_file_size=file_size, interfaces_per_station=m
            )
            for lam in cfg.sweep.values():
                point = replace(scenario, arrival_rate=lam)
                dist = equilibrium(build_chain(point))
                model_thr = expected_per_user_throughput(dist, point)
                model_delay = (
                    expected_transfer_time(dist)
                    if dist.effective_arrival_rate > 0
                    else None
                )
                metrics = simulate_flows(
                    point, cfg.horizon,
                    seed=cfg.scenario.rng_seed + row_index,
                    n_batches=cfg.n_batches,
                )
                tv = 0.5 * sum(
                    abs(a - b) for a, b in zip(metrics.empirical_pi, dist.pi)
                )
                rows.append([
                    lam, m, file_size, cfg.horizon, metrics.completions,
                    model_thr, model_delay,
                    metrics.per_user_throughput, metrics.mean_transfer_time,
                    metrics.ci95_throughput, metrics.ci95_transfer_time,
                    dist.pi[0], metrics.empirical_pi[0], tv, metrics.mean_active,
                ])
                row_index += 1
    return header, rows


def run_split(
    file_size: float, links: Sequence[LinkSpec], n_chunks: int | None
) -> Table:
    """Even, chunked and optimal plans side by side with their reductions."""
    header = [
        "plan", "fraction_link1", "fraction_link2",
        "time_link1_s", "time_link2_s", "makespan_s",
        "reduction_vs_even_pct", "speedup_vs_single",
    ]
    plans = [even_plan(file_size, links)]
    if n_chunks is not None:
        plans.append(chunk_plan(file_size, n_chunks, links))
    plans.append(optimal_plan(file_size, links))
    base = plans[0].makespan
    rows: list[list[object]] = []
    for plan in plans:
        reduction = (
            100.0 * (1.0 - plan.makespan / base)
            if math.isfinite(plan.makespan) and math.isfinite(base)
            else None
        )
        try:
            speedup = speedup_vs_single(file_size, links, plan)
        except ValueError:
            speedup = None
        rows.append([
            plan.origin, plan.fractions[0], plan.fractions[1],
            plan.per_link_time[0], plan.per_link_time[1], plan.makespan,
            reduction, speedup,
        ])
    return header, rows


def _fmt(value: object) -> str:
    if value is None:
        return "undefined"
    if isinstance(value, float) and math.isnan(value):
        return "undefined"
    return str(value)


def write_csv(table: Table, path: str | None) -> None:
    header, rows = table
    lines = [",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _parse_link(text: str) -> LinkSpec:
    capacity, _, background = text.partition(":")
    try:
        return LinkSpec(float(capacity), float(background) if background else 0.0)
    except ValueError as exc:
        raise ConfigError(f"bad link spec {text!r}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    # the global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config", metavar="PATH", default=argparse.SUPPRESS,
        help="configuration file",
    )
    common.add_argument(
        "--seed", type=int, metavar="INT", default=argparse.SUPPRESS,
        help="override the configured seed",
    )
    common.add_argument(
        "--out", metavar="PATH", default=argparse.SUPPRESS,
        help="output CSV path (default: stdout)",
    )
    parser = argparse.ArgumentParser(
        prog="multiwlan",
        description="Throughput and transfer-time tables for one- and "
        "two-interface stations sharing two access points.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser(
        "bianchi", help="saturation fixed point for 1..N stations",
        parents=[common],
    )
    sub.add_parser(
        "fig6", help="per-station throughput vs active stations",
        parents=[common],
    )
    sub.add_parser(
        "fig7", help="expected per-user throughput over the sweep",
        parents=[common],
    )
    sub.add_parser(
        "fig8", help="expected transfer time over the sweep", parents=[common]
    )
    sub.add_parser(
        "sim-dcf", help="slot-level simulator vs the closed form",
        parents=[common],
    )
    sub.add_parser(
        "sim-flow", help="flow simulator vs the chain", parents=[common]
    )
    split = sub.add_parser(
        "split", help="multipath transfer plans", parents=[common]
    )
    split.add_argument(
        "--file-size", type=float, required=True, metavar="BITS",
        help="transfer size in bits",
    )
    split.add_argument(
        "--link", action="append", required=True,
        metavar="CAPACITY[:BACKGROUND]",
        help="link spec in bits/s, given twice",
    )
    choice = split.add_mutually_exclusive_group(required=True)
    choice.add_argument(
        "--chunks", type=int, metavar="N", help="split factor (one chunk on "
        "the slow link, N-1 on the fast one)",
    )
    choice.add_argument(
        "--optimal", action="store_true",
        help="only report the even and optimal plans",
    )
    return parser


_RUNNERS = {
    "bianchi": run_bianchi,
    "fig6": run_fig6,
    "fig7": run_fig7_fig8,
    "fig8": run_fig7_fig8,
    "sim-dcf": run_sim_dcf,
    "sim-flow": run_sim_flow,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config_path = getattr(args, "config", None)
    seed = getattr(args, "seed", None)
    out = getattr(args, "out", None)
    try:
        if args.command == "split":
            links = [_parse_link(text) for text in args.link]
            if len(links) != 2:
                raise ConfigError(f"need exactly two --link specs, got {len(links)}")
            if args.chunks is not None and args.chunks < 2:
                raise ConfigError(f"--chunks must be >= 2, got {args.chunks}")
            table = run_split(args.file_size, links, args.chunks)
            write_csv(table, out)
            return 0
        text = ""
        if config_path is not None:
            with open(config_path, encoding="utf-8") as fh:
                text = fh.read()
        cfg = parse_config(text)
        cfg = replace(cfg, figure=args.command)
        if seed is not None:
            cfg = with_seed(cfg, seed)
        table = _RUNNERS[args.command](cfg)
        write_csv(table, out if out is not None else cfg.output_path)
        return 0
    except (ConfigError, ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
