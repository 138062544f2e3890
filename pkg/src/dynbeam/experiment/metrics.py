import math
from collections import Counter

WILSON_Z = 1.959963984540054  # two-sided 95%


def true_bin(omega, n):
    """Bottom beam whose coverage (lo, hi] contains ``omega``; -1 maps to beam 1."""
    omega = float(omega)
    if not -1.0 <= omega <= 1.0:
        raise ValueError(f"direction cosine must lie in [-1, 1], got {omega}")
    i = min(n, max(1, math.ceil((omega + 1.0) * n / 2)))
    # the scaled ceil can land one bin off when omega + 1 rounds
    if i < n and omega > -1.0 + 2 * i / n:
        i += 1
    elif i > 1 and omega <= -1.0 + 2 * (i - 1) / n:
        i -= 1
    return i


def true_pairs(ch):
    return [(true_bin(t, ch.nt), true_bin(r, ch.nr)) for t, r in zip(ch.aod, ch.aoa)]


def has_shared_pair(ch):
    """True when two paths fall into the same (transmit bin, receive bin) cell."""
    pairs = true_pairs(ch)
    return len(set(pairs)) < len(pairs)


def success_detection(outcome, ch):
    """Every detected pair must match a distinct true path on both bins.

    Pairs are matched one to one, so with as many detections as paths
    this is multiset equality of (p, q) pairs.
    """
    truth = Counter(true_pairs(ch))
    found = Counter(outcome.detected)
    if sum(found.values()) != min(len(outcome.detected), ch.num_paths):
        return False
    return all(truth[pair] >= k for pair, k in found.items())


def wilson_halfwidth(successes, trials, z=WILSON_Z):
    if trials <= 0:
        raise ValueError("trials must be positive")
    p = successes / trials
    denom = 1 + z * z / trials
    return z / denom * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials))
