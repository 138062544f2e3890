"""Closed-form training overhead (number of measurement slots) per method."""

from ..codebook import num_layers

METHODS = ("dynamic", "hs", "mdr", "acs")


def overhead(method, nt, num_detect, s0=None, k=None, nr=None):
    log_n = num_layers(nt)
    if num_detect < 1:
        raise ValueError("num_detect must be >= 1")
    if method in ("dynamic", "hs", "baseline_subtraction", "mdr"):
        if s0 is None or not 0 <= s0 <= log_n:
            raise ValueError(f"start layer must lie in [0, {log_n}], got {s0}")
        per_path = 4 ** s0 + 4 * log_n - 4 * s0
        if method == "mdr":
            per_path += 9
        return num_detect * per_path
    if method == "acs":
        if k is None or k < 2:
            raise ValueError(f"acs needs K >= 2, got {k}")
        return k * k * num_detect ** 3 * log_n
    if method == "exhaustive":
        return nt * (nr or nt)
    raise ValueError(f"unknown method {method!r}")


def overhead_table(nt, num_detect, s0, k):
    return [(m, overhead(m, nt, num_detect, s0, k)) for m in METHODS]


def format_overhead_table(nt, num_detect, s0, k):
    lines = [f"# Nt={nt} Ld={num_detect} S0={s0} K={k}", "method overhead"]
    lines += [f"{m} {n}" for m, n in overhead_table(nt, num_detect, s0, k)]
    return "\n".join(lines) + "\n"
