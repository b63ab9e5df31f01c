"""Acceptance gate: the eight headline guarantees, one line of output each.

Each test prints a single [PASS]/[FAIL] line with the measured figure before
asserting, so a full run reads as a checklist. Expected values come from the
independent oracles in oracles.py, from closed-form identities, or from
byte-level comparison; tolerances and time budgets are part of the contract.
"""

import filecmp
import time

import numpy as np
import pytest

from rotorwalk import (
    WalkParams,
    apply_kick,
    apply_kick_spectral,
    auto_window_halfwidth,
    coefficients_for,
    distribution,
    evolve,
    fit_power_law,
    flatness_cost,
    new_basis_state,
    optimize_initial_state,
    run_search,
    success_sweep,
    superpose,
    survival_probability,
    width,
)
from rotorwalk.cli import main
from rotorwalk.extract import extract_flank
from rotorwalk.state import Distribution

from oracles import brute_survival, brute_width

CALIBRATED_K = 1.10
TBAR = 15


def _report(criterion: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
    assert ok, f"{criterion}: {detail}"


def _default_params() -> WalkParams:
    return WalkParams(
        kick_strength=CALIBRATED_K,
        kicks_per_leg=TBAR,
        window_halfwidth=auto_window_halfwidth(CALIBRATED_K, 3 * TBAR),
    )


def test_criterion_1_round_trip_identity():
    t0 = time.perf_counter()
    rec = run_search(_default_params(), "b", None, cut_halfwidth=None)
    fidelity = rec.roundtrip_fidelity()
    elapsed = time.perf_counter() - t0
    ok = fidelity >= 1.0 - 1e-10 and elapsed < 1.0
    _report(
        "criterion 1 (round-trip identity)",
        ok,
        f"fidelity deficit {1.0 - fidelity:.3e} (tol 1e-10), {elapsed:.2f}s",
    )


def test_criterion_2_propagator_equivalence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2026)
    M = 230
    worst = 0.0
    for _ in range(100):
        k = float(rng.uniform(1e-6, 3.0))
        t = int(rng.integers(1, 46))
        amps = {
            n: complex(rng.normal(), rng.normal()) for n in range(-20, 21)
        }
        state = superpose(amps, M)
        banded = state
        spectral = state
        for _ in range(t):
            banded = apply_kick(banded, k, "forward")
            spectral = apply_kick_spectral(spectral, k, "forward")
        dist = float(np.linalg.norm(banded.amplitudes - spectral.amplitudes))
        worst = max(worst, dist)
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-8 and elapsed < 30.0
    _report(
        "criterion 2 (banded vs spectral propagator)",
        ok,
        f"max L2 over 100 random evolutions {worst:.3e} (tol 1e-8), "
        f"{elapsed:.1f}s (budget 30s)",
    )


def test_criterion_3_analytic_anchors():
    t0 = time.perf_counter()
    k = CALIBRATED_K
    states = evolve(new_basis_state(0, auto_window_halfwidth(k, 45)), k, 45,
                    "forward")
    survival = survival_probability(states)
    surv_err = max(
        abs(survival[t] - brute_survival(k * t)) for t in range(1, 46)
    )
    widths = [width(distribution(s)) for s in states]
    closed_err = max(
        abs(widths[t] - k * t / np.sqrt(2.0)) for t in range(1, 46)
    )
    brute_err = max(
        abs(widths[t] - brute_width(k * t)) for t in (1, 5, 10, 15, 25, 35, 45)
    )
    elapsed = time.perf_counter() - t0
    ok = (surv_err < 1e-10 and closed_err < 1e-9 and brute_err < 1e-9
          and elapsed < 5.0)
    _report(
        "criterion 3 (analytic anchors)",
        ok,
        f"survival vs J0(kt)^2 {surv_err:.2e} (tol 1e-10), width vs kt/sqrt2 "
        f"{closed_err:.2e} and vs brute sum {brute_err:.2e} (tol 1e-9), "
        f"{elapsed:.1f}s (budget 5s)",
    )


def test_criterion_4_search_success():
    t0 = time.perf_counter()
    targets = [n for n in range(-8, 9) if 3 <= abs(n) <= 8]
    rows = success_sweep(_default_params(), "d", targets)
    failures = [r for r in rows if not r["refocus_ok"]]
    weights = [r["weight"] for r in rows if r["weight"] is not None]
    in_band = [w for w in weights if 0.05 <= w <= 0.25]
    elapsed = time.perf_counter() - t0
    ok = (not failures and len(weights) == len(targets)
          and len(in_band) == len(targets) and elapsed < 10.0)
    _report(
        "criterion 4 (search success, |n_t| in [3,8])",
        ok,
        f"refocus exact {len(rows) - len(failures)}/{len(rows)}, weights in "
        f"[{min(weights):.3f}, {max(weights):.3f}] (band [0.05, 0.25]), "
        f"{elapsed:.1f}s (budget 10s)",
    )


def test_criterion_5_flank_estimator():
    # synthetic exactness over every pair of peak positions
    M = 40
    bad = 0
    total = 0
    for a in range(-30, 31):
        for b in range(a + 1, 31):
            probs = np.zeros(2 * M + 1)
            probs[a + M] = 0.5
            probs[b + M] = 0.5
            est = extract_flank(
                Distribution(probs=probs, window_halfwidth=M), 0
            )
            s = a + b
            expect = s // 2 if s % 2 == 0 else int(s / 2)
            total += 1
            bad += est.n_hat != expect
    # end-to-end agreement for bulk targets
    targets = [n for n in range(-8, 9) if 3 <= abs(n) <= 8]
    rows = success_sweep(_default_params(), "d", targets)
    hits = sum(1 for r in rows if r["flank_ok"])
    rate = hits / len(rows)
    ok = bad == 0 and rate >= 0.80
    _report(
        "criterion 5 (flank estimator)",
        ok,
        f"synthetic exact {total - bad}/{total} pairs, end-to-end "
        f"{hits}/{len(rows)} = {100 * rate:.0f}% (floor 80%)",
    )


def test_criterion_6_survival_power_law():
    t0 = time.perf_counter()
    k = 1.0
    states = evolve(new_basis_state(0, auto_window_halfwidth(k, 128)), k, 128,
                    "forward")
    alpha = fit_power_law(survival_probability(states)[1:], t_start=1)
    elapsed = time.perf_counter() - t0
    ok = -1.15 <= alpha <= -0.85 and elapsed < 5.0
    _report(
        "criterion 6 (survival power law)",
        ok,
        f"exponent {alpha:.4f} (band [-1.15, -0.85]), {elapsed:.1f}s "
        f"(budget 5s)",
    )


def test_criterion_7_flatness_optimization():
    t0 = time.perf_counter()
    params = _default_params()
    result = optimize_initial_state(params, 30, restarts=16, seed=0)
    cost_b = flatness_cost(coefficients_for("b"), params, 30)
    c = np.asarray(result.coefficients, dtype=float)
    drift = float(np.max(np.abs(c - np.array([0.4815, 0.7323, 0.4815]))))
    elapsed = time.perf_counter() - t0
    ok = result.cost <= cost_b and drift < 0.05 and elapsed < 60.0
    _report(
        "criterion 7 (flatness optimization)",
        ok,
        f"cost {result.cost:.4f} <= preset-b cost {cost_b:.4f}, coefficient "
        f"drift {drift:.4f} (tol 0.05), {elapsed:.1f}s (budget 60s)",
    )


def test_criterion_8_determinism(tmp_path):
    out1 = str(tmp_path / "run1")
    out2 = str(tmp_path / "run2")
    argv = ["search", "--target", "5", "--seed", "3"]
    assert main(argv + ["--out", out1]) == 0
    assert main(argv + ["--out", out2]) == 0
    match, mismatch, errors = filecmp.cmpfiles(
        out1, out2,
        ["search_summary.json", "search_timeseries.csv",
         "search_suppressed.csv", "search_marked.svg",
         "search_suppressed.svg", "search_protocol.svg", "search_final.svg"],
        shallow=False,
    )
    ok = not mismatch and not errors and len(match) == 7
    _report(
        "criterion 8 (byte determinism)",
        ok,
        f"{len(match)}/7 files byte-identical"
        + (f", mismatched {mismatch}" if mismatch else ""),
    )
