"""Multipath beam training over hierarchical codebooks.

The per-path search is a joint transmit/receive descent: an exhaustive
scan of all ``2**s0 x 2**s0`` codeword pairs at the start layer, then the
``2 x 2`` child pairs at each deeper layer.  That walk costs
``4**s0 + 4*(log2(N) - s0)`` slots per path regardless of the data.
"""

from dataclasses import dataclass, field

import numpy as np

from .channel import measure
from .codebook import CodebookState, bottom_codeword
from .errors import DegenerateCodebookError


@dataclass
class SearchTrace:
    steps: list = field(default_factory=list)  # (layer, tx pos, rx pos, |y|)
    measurements_used: int = 0


@dataclass
class TrainingOutcome:
    detected: list
    traces: list
    T: set = field(default_factory=set)
    R: set = field(default_factory=set)

    def __post_init__(self):
        self.T = {p for p, _ in self.detected}
        self.R = {q for _, q in self.detected}

    @property
    def total_measurements(self):
        return sum(t.measurements_used for t in self.traces)


def per_path_measurements(nt, nr, s0):
    """Slot count of one descent; the deeper side finishes alone at 2 slots per layer."""
    st, sr = nt.bit_length() - 1, nr.bit_length() - 1
    return 4 ** s0 + 4 * (min(st, sr) - s0) + 2 * abs(st - sr)


def _pick(tx, rx, candidates, measure_fn, trace, layer):
    """Measure every candidate pair and return the best (mt, mr, y).

    Pairs involving a zero codeword still use their slot but never win.
    Ties go to the earliest candidate, which callers list in (mt, mr) order.
    """
    best = None
    best_abs = -np.inf
    for st, mt, sr, mr in candidates:
        v = tx.codeword_at(st, mt)
        w = rx.codeword_at(sr, mr)
        y = measure_fn(v, w)
        trace.measurements_used += 1
        mag = -np.inf if (v.is_zero or w.is_zero) else abs(y)
        trace.steps.append((layer, mt, mr, mag))
        if mag > best_abs:
            best, best_abs = (mt, mr, y), mag
    if best is None:
        raise DegenerateCodebookError(f"all candidate codeword pairs are zero at layer {layer}")
    return best


def _descend(tx, rx, measure_fn):
    if tx.s0 != rx.s0:
        raise ValueError("transmit and receive codebooks must share the start layer")
    s0 = tx.s0
    trace = SearchTrace()
    span = range(1, 2 ** s0 + 1)
    mt, mr, y = _pick(tx, rx, [(s0, a, s0, b) for a in span for b in span], measure_fn, trace, s0)
    st = sr = s0
    while st < tx.depth or sr < rx.depth:
        tx_kids = [2 * mt - 1, 2 * mt] if st < tx.depth else [mt]
        rx_kids = [2 * mr - 1, 2 * mr] if sr < rx.depth else [mr]
        st, sr = min(st + 1, tx.depth), min(sr + 1, rx.depth)
        cands = [(st, a, sr, b) for a in tx_kids for b in rx_kids]
        mt, mr, y = _pick(tx, rx, cands, measure_fn, trace, max(st, sr))
    return mt, mr, trace, y


def descend_one_path(tx_state, rx_state, ch, mm):
    """Hierarchical search for the strongest remaining path; returns ``(p, q, trace)``."""
    p, q, trace, _ = _descend(tx_state, rx_state, lambda v, w: measure(ch, v, w, mm))
    return p, q, trace


def train_dynamic(nt, nr, num_detect, s0, ch, mm, tx_state=None, rx_state=None):
    """Detect ``num_detect`` paths, nulling each found bin out of the codebooks.

    After path ``(p, q)`` is found, ``p`` leaves every transmit index set and
    ``q`` every receive index set, so later searches see an exact null there.
    """
    if num_detect < 1:
        raise ValueError("need at least one path to detect")
    tx = tx_state if tx_state is not None else CodebookState(nt, s0)
    rx = rx_state if rx_state is not None else CodebookState(nr, s0)
    detected, traces = [], []
    for _ in range(num_detect):
        p, q, trace = descend_one_path(tx, rx, ch, mm)
        detected.append((p, q))
        traces.append(trace)
        tx.remove_index(p)
        rx.remove_index(q)
    return TrainingOutcome(detected, traces)


def estimate_gain(y_best, power, response=1.0):
    """Effective path gain (including the array scale) from the winning bottom slot.

    ``response`` is the combined array response ``(w^H a_r)(a_t^H v)`` of the
    winning bottom codeword pair at the detected bin centers; it has unit
    modulus for bottom-layer beams.
    """
    return y_best / (np.sqrt(power) * response)


def _path_signature(tx, rx, p, q):
    """Callable giving ``(w^H a_r(q)) (a_t(p)^H v)`` for codewords ``v``, ``w``."""
    at_h = bottom_codeword(tx.n, p).weights.conj()
    ar = bottom_codeword(rx.n, q).weights

    def response(v, w):
        return np.vdot(w.weights, ar) * np.dot(at_h, v.weights)

    return response


def train_baseline_subtraction(nt, nr, num_detect, s0, ch, mm):
    """Static-codebook search that subtracts each found path's reconstructed term.

    Each path's gain comes from its single winning bottom-layer slot; the
    first estimate is kept for the rest of the session.
    """
    if num_detect < 1:
        raise ValueError("need at least one path to detect")
    tx = CodebookState(nt, s0)
    rx = CodebookState(nr, s0)
    sqrt_p = np.sqrt(mm.power)
    found = []  # (gain, response) per detected path

    def corrected(v, w):
        y = measure(ch, v, w, mm)
        for g, resp in found:
            y -= sqrt_p * g * resp(v, w)
        return y

    detected, traces = [], []
    for _ in range(num_detect):
        p, q, trace, y_best = _descend(tx, rx, corrected)
        resp = _path_signature(tx, rx, p, q)
        unit = resp(tx.codeword_at(tx.depth, p), rx.codeword_at(rx.depth, q))
        found.append((estimate_gain(y_best, mm.power, unit), resp))
        detected.append((p, q))
        traces.append(trace)
    return TrainingOutcome(detected, traces)


def exhaustive_scores(ch, mm):
    """Measure every bottom beam pair once; returns an ``nt x nr`` array of ``|y|``."""
    scores = np.empty((ch.nt, ch.nr))
    for p in range(1, ch.nt + 1):
        v = bottom_codeword(ch.nt, p)
        for q in range(1, ch.nr + 1):
            scores[p - 1, q - 1] = abs(measure(ch, v, bottom_codeword(ch.nr, q), mm))
    return scores


def exhaustive_sweep(ch, mm):
    """Brute-force best bottom pair ``(p, q)`` over all ``nt * nr`` slots."""
    scores = exhaustive_scores(ch, mm)
    p, q = np.unravel_index(np.argmax(scores), scores.shape)
    return int(p) + 1, int(q) + 1


def train_exhaustive(nt, nr, num_detect, ch, mm):
    """One full sweep; the ``num_detect`` strongest pairs are reported."""
    scores = exhaustive_scores(ch, mm)
    order = np.argsort(-scores, axis=None, kind="stable")[:num_detect]
    trace = SearchTrace(measurements_used=nt * nr)
    detected = [(int(k) // nr + 1, int(k) % nr + 1) for k in order]
    return TrainingOutcome(detected, [trace])


def format_trace(outcome):
    """Debug dump: one ``path layer mt mr |y|`` line per measurement."""
    lines = []
    for path, trace in enumerate(outcome.traces, start=1):
        for layer, mt, mr, mag in trace.steps:
            lines.append(f"{path} {layer} {mt} {mr} {mag:.6e}")
    return "\n".join(lines) + ("\n" if lines else "")
