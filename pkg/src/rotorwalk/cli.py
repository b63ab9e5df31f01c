"""Command-line entry point.

Four subcommands: prepare (flatness-optimize the initial state), search (run
the full protocol for one target and estimate it), sweep (repeat over target
and kick-strength lists), scaling (ballistic width, survival law, recurrence
sums). Every command writes delimited data plus SVG figures into --out, all
byte deterministic for a fixed config and seed.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import analysis, figures
from .config import ExperimentConfig, build_config
from .defaults import (
    CALIBRATED_K,
    DEFAULT_HITTING_THRESHOLD,
    DEFAULT_KICKS_PER_LEG,
    DEFAULT_SEARCH_PRESET,
)
from .errors import ConfigError, EstimationError, RotorWalkError
from .extract import extract_flank, extract_refocus, success_sweep
from .io_utils import (
    write_json,
    write_series_csv,
    write_sweep_csv,
    write_timeseries_csv,
)
from .prepare import (
    PreparationResult,
    coefficients_for,
    flatness_cost,
    optimize_initial_state,
    prepared_distribution,
)
from .search import run_search
from .state import WalkParams

__all__ = ["main"]


def _out(cfg: ExperimentConfig, name: str) -> str:
    os.makedirs(cfg.out_dir, exist_ok=True)
    return os.path.join(cfg.out_dir, name)


def _params_payload(params: WalkParams, cfg: ExperimentConfig, initial) -> dict:
    if isinstance(initial, str):
        initial_out = initial
    else:
        initial_out = [float(c) for c in initial]
    return {
        "kick_strength": float(params.kick_strength),
        "kicks_per_leg": int(params.kicks_per_leg),
        "window_halfwidth": int(params.window_halfwidth),
        "period": float(params.period),
        "initial": initial_out,
        "cut_halfwidth": None if cfg.cut_halfwidth is None else int(cfg.cut_halfwidth),
        "strategy": cfg.strategy,
        "flat_window": int(cfg.flat_window),
        "seed": int(cfg.seed),
    }


def _estimate_payload(est) -> dict:
    out = {
        "n_hat": int(est.n_hat),
        "method": est.method,
        "confidence_weight": float(est.confidence_weight),
    }
    if est.method == "flank":
        out["n_l"] = int(est.n_l)
        out["n_r"] = int(est.n_r)
    return out


def cmd_prepare(cfg: ExperimentConfig) -> int:
    params = cfg.walk_params()
    initial = cfg.initial_coefficients()
    if initial is None:
        result = optimize_initial_state(
            params, cfg.flat_window, restarts=cfg.restarts, seed=cfg.seed
        )
        label = "optimized"
    else:
        coeffs = coefficients_for(initial) if isinstance(initial, str) else initial
        result = PreparationResult(
            coefficients=coeffs,
            cost=flatness_cost(coeffs, params, cfg.flat_window),
            flat_window=cfg.flat_window,
            kicks=params.kicks_per_leg,
        )
        label = initial if isinstance(initial, str) else "explicit"

    dist = prepared_distribution(result.coefficients, params)
    coeff_list = [float(c.real) for c in result.coefficients.astype(complex)]

    write_json(
        _out(cfg, "prepare_summary.json"),
        {
            "params": _params_payload(params, cfg, label),
            "calibrated_k": CALIBRATED_K,
            "coefficients": coeff_list,
            "cost": float(result.cost),
            "flat_window": int(result.flat_window),
            "kicks": int(result.kicks),
            "converged": bool(result.converged),
        },
    )
    write_timeseries_csv(
        _out(cfg, "prepare_distribution.csv"), {params.kicks_per_leg: dist}
    )

    curves = {f"preset {label}" if isinstance(initial, str) else label: dist}
    if initial is None:
        curves["preset b"] = prepared_distribution(coefficients_for("b"), params)
    figures.plot_distributions(
        curves,
        _out(cfg, "prepare_distributions.svg"),
        title="prepared momentum distribution",
        uniform_level=1.0 / (cfg.flat_window + 1),
        xlim=cfg.flat_window // 2 + 15,
    )
    print(
        "prepared coefficients (c-1, c0, c+1) = "
        f"({coeff_list[0]:.4f}, {coeff_list[1]:.4f}, {coeff_list[2]:.4f}), "
        f"cost = {result.cost:.6f}"
    )
    return 0


def cmd_search(cfg: ExperimentConfig) -> int:
    params = cfg.walk_params()
    initial = cfg.initial_coefficients()
    if initial is None:
        initial = DEFAULT_SEARCH_PRESET
    target = cfg.single_target()

    record = run_search(
        params, initial, target, cfg.cut_halfwidth, cfg.strategy, cfg.flat_window
    )

    estimates: dict = {"flank": None, "refocus": None}
    weights: dict = {"flank": None, "refocus": None}
    failed = False
    if target is not None:
        try:
            suppressed = record.suppressed_distribution()
            exclusion = (
                cfg.cut_halfwidth
                if cfg.cut_halfwidth is not None
                else ExperimentConfig().cut_halfwidth
            )
            flank = extract_flank(suppressed, exclusion)
            estimates["flank"] = _estimate_payload(flank)
            weights["flank"] = float(flank.confidence_weight)
        except (EstimationError, ConfigError) as exc:
            estimates["flank"] = {"error": str(exc)}
            failed = True
        try:
            refocus = extract_refocus(record)
            estimates["refocus"] = _estimate_payload(refocus)
            weights["refocus"] = float(refocus.confidence_weight)
        except (EstimationError, ConfigError) as exc:
            estimates["refocus"] = {"error": str(exc)}
            failed = True

    payload_params = _params_payload(params, cfg, initial)
    payload_params["target"] = None if target is None else int(target)
    write_json(
        _out(cfg, "search_summary.json"),
        {
            "params": payload_params,
            "calibrated_k": CALIBRATED_K,
            "estimates": estimates,
            "weights": weights,
            "events": record.events,
            "fidelity": record.roundtrip_fidelity(),
        },
    )
    write_timeseries_csv(_out(cfg, "search_timeseries.csv"), record.distributions)

    tbar = params.kicks_per_leg
    try:
        suppressed = record.suppressed_distribution()
    except ConfigError:
        suppressed = None
    if suppressed is not None:
        write_timeseries_csv(
            _out(cfg, "search_suppressed.csv"), {2 * tbar: suppressed}
        )
        figures.plot_final_distribution(
            suppressed,
            target,
            _out(cfg, "search_suppressed.svg"),
            title=f"suppressed distribution at t = {2 * tbar} ({cfg.strategy})",
        )
    figures.plot_distributions(
        {
            "marked": record.distributions[2 * tbar],
            "unmarked reference": record.reference_distributions[2 * tbar],
        },
        _out(cfg, "search_marked.svg"),
        title=f"distribution at t = {2 * tbar}",
    )
    figures.plot_protocol_heatmap(record, _out(cfg, "search_protocol.svg"))
    figures.plot_final_distribution(
        record.distributions[-1],
        target,
        _out(cfg, "search_final.svg"),
        title=f"final distribution at t = {3 * tbar}",
    )

    def _describe(entry) -> str:
        if entry is None:
            return "disabled"
        if "error" in entry:
            return f"failed ({entry['error']})"
        return f"n_hat={entry['n_hat']} weight={entry['confidence_weight']:.4f}"

    print(f"flank: {_describe(estimates['flank'])}; "
          f"refocus: {_describe(estimates['refocus'])}")
    return 1 if failed else 0


def cmd_sweep(cfg: ExperimentConfig) -> int:
    if not cfg.targets:
        raise ConfigError("sweep requires a nonempty target list (--target)")
    initial = cfg.initial_coefficients()
    if initial is None:
        initial = DEFAULT_SEARCH_PRESET
    kick_values = cfg.kick_values if cfg.kick_values else (cfg.kick_strength,)
    if cfg.cut_halfwidth is None:
        raise ConfigError("sweep requires a cut (wcut must be set)")

    targets = sorted(cfg.targets)
    rows: list[dict] = []
    for k in sorted(kick_values):
        params = cfg.walk_params(kick_strength=k)
        block = success_sweep(
            params, initial, targets, cfg.cut_halfwidth, cfg.strategy,
            cfg.flat_window,
        )
        for row in block:
            row_out = dict(row)
            row_out["k"] = float(k)
            rows.append(row_out)

    write_sweep_csv(_out(cfg, "sweep.csv"), rows, with_k=len(kick_values) > 1)
    n = len(rows)
    flank_ok = sum(1 for r in rows if r.get("flank_ok"))
    refocus_ok = sum(1 for r in rows if r.get("refocus_ok"))
    print(f"sweep: {n} cells, flank ok {flank_ok}/{n}, "
          f"refocus ok {refocus_ok}/{n}")
    return 0


def cmd_scaling(cfg: ExperimentConfig) -> int:
    from .propagator import evolve
    from .state import distribution, new_basis_state

    t_max = cfg.kicks_per_leg
    params = cfg.walk_params(kicks_per_leg=t_max)
    k = params.kick_strength

    states = evolve(
        new_basis_state(0, params.window_halfwidth), k, t_max, "forward"
    )
    dists = [distribution(s) for s in states]
    times = list(range(t_max + 1))
    widths = [analysis.width(d) for d in dists]
    survival = analysis.survival_probability(states)
    sums = analysis.polya_partial_sum(k, t_max) if k >= 0 else []

    exponent = None
    try:
        exponent = analysis.fit_power_law(survival[1:], t_start=1)
    except EstimationError as exc:
        print(f"warning: no survival fit: {exc}", file=sys.stderr)
    slope = analysis.width_slope(times, widths, k)

    hitting = None
    if cfg.targets is not None:
        target = cfg.single_target()
        search_params = cfg.walk_params(kicks_per_leg=DEFAULT_KICKS_PER_LEG)
        record = run_search(
            search_params,
            cfg.initial_coefficients() or DEFAULT_SEARCH_PRESET,
            target,
            cfg.cut_halfwidth,
            cfg.strategy,
            cfg.flat_window,
        )
        hitting = analysis.one_shot_hitting_time(record, DEFAULT_HITTING_THRESHOLD)

    report = analysis.ScalingReport(
        times=times,
        widths=[float(w) for w in widths],
        survival=[float(p) for p in survival],
        fitted_width_slope=None if slope is None else float(slope),
        fitted_survival_exponent=None if exponent is None else float(exponent),
        polya_partial_sums=[float(s) for s in sums],
        hitting_time=hitting,
    )

    write_json(
        _out(cfg, "scaling_report.json"),
        {
            "params": {
                "kick_strength": float(k),
                "t_max": int(t_max),
                "window_halfwidth": int(params.window_halfwidth),
            },
            "times": report.times,
            "widths": report.widths,
            "survival": report.survival,
            "fitted_width_slope": report.fitted_width_slope,
            "fitted_survival_exponent": report.fitted_survival_exponent,
            "polya_partial_sums": report.polya_partial_sums,
            "hitting_time": report.hitting_time,
        },
    )
    series_rows = [
        (
            t,
            report.widths[t],
            report.survival[t],
            report.polya_partial_sums[t - 1] if t >= 1 else 0.0,
        )
        for t in times
    ]
    write_series_csv(
        _out(cfg, "scaling_series.csv"), "t,width,survival,partial_sum",
        series_rows,
    )
    figures.plot_width_scaling(times, widths, k, _out(cfg, "scaling_width.svg"))
    figures.plot_survival_scaling(
        times, survival, exponent, _out(cfg, "scaling_survival.svg")
    )
    if sums:
        figures.plot_polya_sums(sums, _out(cfg, "scaling_polya.svg"))

    slope_text = "n/a" if slope is None else f"{slope:.6f}"
    exp_text = "n/a" if exponent is None else f"{exponent:.4f}"
    print(f"scaling: width slope per kt = {slope_text}, "
          f"survival exponent = {exp_text}")
    return 0


def _add_common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("config", nargs="?", default=None,
                     help="flat key=value config file")
    sub.add_argument("--k", help="kick strength (comma list for sweep)")
    sub.add_argument("--kicks", help="kicks per leg (scaling: total kicks)")
    sub.add_argument("--window", help="momentum window halfwidth or 'auto'")
    sub.add_argument("--target", help="target momentum, list, or lo..hi range")
    sub.add_argument("--wcut", help="cut halfwidth (or 'none')")
    sub.add_argument("--strategy", choices=["cut", "subtract"],
                     help="central suppression strategy")
    sub.add_argument("--preset", help="initial-state preset (b, c, d)")
    sub.add_argument("--flat-window", dest="flat_window",
                     help="flatness window N (even)")
    sub.add_argument("--seed", help="optimizer restart seed")
    sub.add_argument("--out", help="output directory")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotorwalk",
        description="Resonant kicked-rotor walk: preparation, search, scaling.",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    for name, func, desc in (
        ("prepare", cmd_prepare, "optimize or evaluate the initial state"),
        ("search", cmd_search, "run the three-leg search protocol"),
        ("sweep", cmd_sweep, "sweep targets (and kick strengths)"),
        ("scaling", cmd_scaling, "width, survival-law, and recurrence diagnostics"),
    ):
        sub = subs.add_parser(name, help=desc)
        _add_common_flags(sub)
        sub.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    overrides = {
        "k": args.k,
        "kicks": args.kicks,
        "window": args.window,
        "target": args.target,
        "wcut": args.wcut,
        "strategy": args.strategy,
        "preset": args.preset,
        "flat_window": args.flat_window,
        "seed": args.seed,
        "out": args.out,
    }
    try:
        cfg = build_config(args.config, overrides)
        return int(args.func(cfg))
    except RotorWalkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
