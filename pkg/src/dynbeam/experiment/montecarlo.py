"""Monte Carlo success-rate sweeps over SNR."""

import csv
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..channel import MeasurementModel, draw_channel, snr_to_noise
from ..errors import DegenerateCodebookError
from ..training import format_trace, train_baseline_subtraction, train_dynamic, train_exhaustive
from .metrics import has_shared_pair, success_detection, wilson_halfwidth

log = logging.getLogger(__name__)

CSV_COLUMNS = (
    "method", "snr_db", "trials", "successes", "success_rate",
    "wilson_halfwidth", "mean_measurements", "degenerate_trials",
)


@dataclass(frozen=True)
class CurvePoint:
    method: str
    snr_db: float
    trials: int
    successes: int
    success_rate: float
    wilson_halfwidth: float
    mean_measurements: float
    degenerate_trials: int
    min_measurements: int
    max_measurements: int


@dataclass(frozen=True)
class TrialResult:
    success: bool
    measurements: int
    degenerate: bool
    outcome: object = None


def trial_rng(seed, snr_index, trial_index):
    """Per-trial generator; every method sees the same channel for a given trial."""
    return np.random.default_rng([seed, snr_index, trial_index])


def run_trial(cfg, snr_index, trial_index, method=None):
    method = method or cfg.method
    rng = trial_rng(cfg.seed, snr_index, trial_index)
    ch = draw_channel(cfg.Nt, cfg.Nr, cfg.L, cfg.angle_mode, rng)
    mm = MeasurementModel(cfg.P, snr_to_noise(cfg.snr_db_list[snr_index], cfg.P), rng)
    try:
        if method == "dynamic":
            out = train_dynamic(cfg.Nt, cfg.Nr, cfg.L_d, cfg.S0, ch, mm)
        elif method == "baseline_subtraction":
            out = train_baseline_subtraction(cfg.Nt, cfg.Nr, cfg.L_d, cfg.S0, ch, mm)
        elif method == "exhaustive":
            out = train_exhaustive(cfg.Nt, cfg.Nr, cfg.L_d, ch, mm)
        else:
            raise ValueError(f"unknown method {method!r}")
    except DegenerateCodebookError as exc:
        log.warning("trial %d at %g dB: %s", trial_index, cfg.snr_db_list[snr_index], exc)
        return TrialResult(False, mm.count, True)
    if has_shared_pair(ch):
        return TrialResult(False, mm.count, True, out)
    return TrialResult(success_detection(out, ch), mm.count, False, out)


def _run_block(args):
    cfg, method, snr_index, start, stop = args
    succ = degen = total = 0
    lo, hi = np.iinfo(np.int64).max, 0
    for t in range(start, stop):
        r = run_trial(cfg, snr_index, t, method)
        succ += r.success
        degen += r.degenerate
        total += r.measurements
        lo, hi = min(lo, r.measurements), max(hi, r.measurements)
    return snr_index, succ, degen, total, lo, hi


def _blocks(cfg, method, block):
    for i in range(len(cfg.snr_db_list)):
        for start in range(0, cfg.trials, block):
            yield cfg, method, i, start, min(start + block, cfg.trials)


def run_monte_carlo(cfg, method=None, workers=1, block=250):
    """Success rate, Wilson half-width and mean slot count at every SNR point.

    Trial seeds derive from ``(seed, snr index, trial index)`` only, so the
    result does not depend on ``workers`` or ``block``.
    """
    method = method or cfg.method
    acc = {i: [0, 0, 0, np.iinfo(np.int64).max, 0] for i in range(len(cfg.snr_db_list))}
    jobs = list(_blocks(cfg, method, block))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_block, jobs))
    else:
        results = map(_run_block, jobs)
    for i, succ, degen, total, lo, hi in results:
        a = acc[i]
        a[0] += succ
        a[1] += degen
        a[2] += total
        a[3] = min(a[3], lo)
        a[4] = max(a[4], hi)
    points = []
    for i, snr in enumerate(cfg.snr_db_list):
        succ, degen, total, lo, hi = acc[i]
        if degen:
            log.warning("%s at %g dB: %d degenerate trials", method, snr, degen)
        points.append(CurvePoint(
            method, snr, cfg.trials, succ, succ / cfg.trials,
            wilson_halfwidth(succ, cfg.trials), total / cfg.trials, degen, lo, hi,
        ))
    return points


def sweep(cfg, methods, workers=1):
    points = []
    for m in methods:
        points.extend(run_monte_carlo(cfg, method=m, workers=workers))
    return points


def write_csv(points, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for p in points:
        writer.writerow([
            p.method, f"{p.snr_db:g}", p.trials, p.successes, f"{p.success_rate:.6f}",
            f"{p.wilson_halfwidth:.6f}", f"{p.mean_measurements:.4f}", p.degenerate_trials,
        ])


def trace_dump(cfg, method=None):
    """Measurement trace of trial 0 at every SNR point."""
    chunks = []
    for i, snr in enumerate(cfg.snr_db_list):
        r = run_trial(cfg, i, 0, method)
        chunks.append(f"# method={method or cfg.method} snr_db={snr:g} trial=0\n")
        if r.outcome is not None:
            chunks.append(format_trace(r.outcome))
    return "".join(chunks)
