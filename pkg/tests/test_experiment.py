import io
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynbeam.channel import ChannelRealization
from dynbeam.codebook import bin_center
from dynbeam.errors import ConfigParseError, ConstraintViolation
from dynbeam.experiment import (
    overhead,
    parse_config,
    run_monte_carlo,
    success_detection,
    true_bin,
    wilson_halfwidth,
    write_csv,
)
from dynbeam.experiment.config import format_config, parse_snr_list
from dynbeam.experiment.overhead import format_overhead_table
from dynbeam.training import TrainingOutcome

PAPER_CONFIG = """\
# paper operating point
Nt = 32
Nr = 32
L = 3
L_d = 3
S0 = 2
trials = 1000
snr_db_list = -5:2.5:20
"""


def grid_channel(n, pairs):
    return ChannelRealization(
        n, n, np.ones(len(pairs)), [bin_center(n, p) for p, _ in pairs], [bin_center(n, q) for _, q in pairs]
    )


def outcome(pairs):
    return TrainingOutcome(list(pairs), [])


@pytest.mark.parametrize("omega, n, expected", [(-1, 16, 1), (7 / 16, 16, 12), (1, 16, 16), (-1 + 2 / 16, 16, 1), (-1 + 2 / 16 + 1e-12, 16, 2)])
def test_true_bin(omega, n, expected):
    assert true_bin(omega, n) == expected


def test_true_bin_rejects():
    with pytest.raises(ValueError):
        true_bin(1.01, 16)


@settings(max_examples=200)
@given(n_log=st.integers(0, 10), omega=st.floats(-1, 1))
def test_true_bin_coverage(n_log, omega):
    n = 2**n_log
    i = true_bin(omega, n)
    lo, hi = -1 + 2 * (i - 1) / n, -1 + 2 * i / n
    assert 1 <= i <= n
    assert lo <= omega <= hi
    if i > 1:
        assert omega > lo


def test_success_any_order():
    ch = grid_channel(16, [(3, 4), (9, 1), (12, 12)])
    for perm in itertools.permutations([(3, 4), (9, 1), (12, 12)]):
        assert success_detection(outcome(perm), ch)


def test_success_wrong_tx_only():
    ch = grid_channel(16, [(3, 4), (9, 1), (12, 12)])
    assert not success_detection(outcome([(3, 4), (8, 1), (12, 12)]), ch)


def test_success_swapped_pairs_fail():
    ch = grid_channel(16, [(3, 4), (9, 1)])
    assert not success_detection(outcome([(3, 1), (9, 4)]), ch)


def test_success_duplicate_detection_fails():
    # two true paths in the same joint cell need two detections of that cell
    ch = grid_channel(16, [(5, 5), (5, 5), (2, 7)])
    assert not success_detection(outcome([(5, 5), (2, 7), (2, 7)]), ch)
    assert success_detection(outcome([(5, 5), (5, 5), (2, 7)]), ch)
    ch2 = grid_channel(16, [(5, 5), (2, 7)])
    assert not success_detection(outcome([(5, 5), (5, 5)]), ch2)


def brute_match(detected, truth):
    """Some injective assignment of detections to equal true pairs exists."""
    if len(detected) > len(truth):
        return False
    return any(
        all(detected[k] == truth[j] for k, j in enumerate(assign))
        for assign in itertools.permutations(range(len(truth)), len(detected))
    )


@settings(max_examples=300)
@given(
    truth=st.lists(st.tuples(st.integers(1, 3), st.integers(1, 3)), min_size=1, max_size=4),
    data=st.data(),
)
def test_success_matches_bruteforce(truth, data):
    detected = data.draw(st.lists(st.tuples(st.integers(1, 3), st.integers(1, 3)), min_size=1, max_size=len(truth)))
    ch = grid_channel(4, truth)
    assert success_detection(outcome(detected), ch) == brute_match(detected, truth)
    shuffled = data.draw(st.permutations(detected))
    assert success_detection(outcome(shuffled), ch) == success_detection(outcome(detected), ch)


def test_success_partial_detection():
    ch = grid_channel(16, [(3, 4), (9, 1), (12, 12)])
    assert success_detection(outcome([(9, 1)]), ch)
    assert not success_detection(outcome([(9, 2)]), ch)


def test_wilson_reference_values():
    # closed form evaluated by hand: p=0.5, n=100
    z = 1.959963984540054
    expected = z / (1 + z * z / 100) * math.sqrt(0.25 / 100 + z * z / 40000)
    assert wilson_halfwidth(50, 100) == pytest.approx(expected, rel=1e-12)
    assert wilson_halfwidth(0, 10) > 0
    assert wilson_halfwidth(10, 10) == wilson_halfwidth(0, 10)
    with pytest.raises(ValueError):
        wilson_halfwidth(0, 0)


@pytest.mark.parametrize(
    "method, kwargs, expected",
    [("dynamic", {"s0": 2}, 84), ("hs", {"s0": 2}, 84), ("mdr", {"s0": 2}, 111), ("acs", {"k": 2}, 540)],
)
def test_overhead_paper_table(method, kwargs, expected):
    assert overhead(method, 32, 3, **kwargs) == expected


def test_overhead_other_points():
    assert overhead("dynamic", 64, 2, s0=1) == 2 * (4 + 24 - 4)
    assert overhead("acs", 64, 2, k=3) == 9 * 8 * 6
    assert overhead("exhaustive", 32, 3) == 1024
    assert overhead("exhaustive", 32, 3, nr=8) == 256


@pytest.mark.parametrize(
    "args",
    [("dynamic", 24, 3, 2), ("dynamic", 32, 3, 6), ("acs", 32, 3, None, 1), ("foo", 32, 3, 2), ("dynamic", 32, 0, 2)],
)
def test_overhead_invalid(args):
    with pytest.raises(ValueError):
        overhead(*args)


def test_overhead_table_text():
    text = format_overhead_table(32, 3, 2, 2)
    rows = dict(line.split() for line in text.splitlines() if not line.startswith("#"))
    assert rows == {"method": "overhead", "dynamic": "84", "hs": "84", "mdr": "111", "acs": "540"}


def test_parse_paper_config():
    cfg = parse_config(PAPER_CONFIG)
    assert (cfg.Nt, cfg.Nr, cfg.L, cfg.L_d, cfg.S0, cfg.trials) == (32, 32, 3, 3, 2, 1000)
    assert cfg.snr_db_list == (-5, -2.5, 0, 2.5, 5, 7.5, 10, 12.5, 15, 17.5, 20)
    assert (cfg.P, cfg.angle_mode, cfg.method) == (1.0, "continuous", "dynamic")


def test_config_roundtrip():
    cfg = parse_config(PAPER_CONFIG + "method = baseline_subtraction\nangle_mode = on_grid\nseed = 5\n")
    assert parse_config(format_config(cfg)) == cfg


@pytest.mark.parametrize(
    "extra, message",
    [("L_d = 5\n", "L_d ≤ L"), ("S0 = 9\n", "S0 ≤ log2 N"), ("trials = 0\n", "trials"), ("Nt = 24\n", "power of two"), ("P = 0\n", "P > 0"), ("method = ml\n", "method")],
)
def test_config_constraints(extra, message):
    text = "\n".join(line for line in PAPER_CONFIG.splitlines() if line.split("=")[0].strip() != extra.split("=")[0].strip())
    with pytest.raises(ConstraintViolation, match=message):
        parse_config(text + "\n" + extra)


def test_config_parse_errors():
    with pytest.raises(ConfigParseError, match="line 2"):
        parse_config("Nt = 32\nbogus = 1\n")
    with pytest.raises(ConfigParseError, match="line 3"):
        parse_config("Nt = 32\n\nNr 32\n")
    with pytest.raises(ConfigParseError, match="duplicate"):
        parse_config(PAPER_CONFIG + "Nt = 16\n")
    with pytest.raises(ConfigParseError, match="Nt"):
        parse_config(PAPER_CONFIG.replace("Nt = 32", "Nt = many"))
    with pytest.raises(ConfigParseError, match="missing"):
        parse_config("Nt = 32\n")


def test_config_overrides_win():
    cfg = parse_config(PAPER_CONFIG, {"trials": "7", "snr_db_list": "0, 10"})
    assert cfg.trials == 7 and cfg.snr_db_list == (0, 10)


def test_snr_list_forms():
    assert parse_snr_list("0:5:20") == (0, 5, 10, 15, 20)
    assert parse_snr_list("1, 2 3") == (1, 2, 3)
    with pytest.raises(ValueError):
        parse_snr_list("0:0:3")


def small_config(**kw):
    base = dict(trials="40", snr_db_list="0, 20", seed="3")
    base.update(kw)
    return parse_config(PAPER_CONFIG, base)


def test_monte_carlo_noiseless_single_path():
    cfg = parse_config(PAPER_CONFIG, {"L": "1", "L_d": "1", "trials": "500", "snr_db_list": "200", "angle_mode": "on_grid"})
    (pt,) = run_monte_carlo(cfg)
    assert pt.success_rate == 1.0 and pt.successes == 500
    assert pt.mean_measurements == 28


@pytest.mark.parametrize("method, expected", [("dynamic", 84), ("baseline_subtraction", 84)])
def test_monte_carlo_counts_match_closed_form(method, expected):
    for pt in run_monte_carlo(small_config(), method=method):
        assert pt.min_measurements == pt.max_measurements == pt.mean_measurements == expected


def test_monte_carlo_exhaustive_counts():
    cfg = small_config(Nt="8", Nr="8", S0="1", method="exhaustive")
    for pt in run_monte_carlo(cfg):
        assert pt.mean_measurements == overhead("exhaustive", 8, 3, nr=8)


def test_monte_carlo_single_trial():
    for pt in run_monte_carlo(small_config(trials="1")):
        assert pt.success_rate in (0.0, 1.0)


def test_monte_carlo_independent_of_blocking():
    cfg = small_config()
    assert run_monte_carlo(cfg, block=7) == run_monte_carlo(cfg, block=1000)


def test_monte_carlo_parallel_matches_serial():
    cfg = small_config(trials="20")
    assert run_monte_carlo(cfg, workers=2, block=5) == run_monte_carlo(cfg)


def test_csv_layout():
    buf = io.StringIO()
    write_csv(run_monte_carlo(small_config()), buf)
    lines = buf.getvalue().split("\n")
    assert lines[0] == "method,snr_db,trials,successes,success_rate,wilson_halfwidth,mean_measurements,degenerate_trials"
    assert lines[-1] == "" and len(lines) == 4
    fields = lines[1].split(",")
    assert fields[0] == "dynamic" and fields[1] == "0" and fields[2] == "40"
    assert float(fields[4]) == int(fields[3]) / 40
