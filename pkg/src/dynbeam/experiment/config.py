"""Line-oriented ``key = value`` experiment configuration."""

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigParseError, ConstraintViolation

SIM_METHODS = ("dynamic", "baseline_subtraction", "exhaustive")
ANGLE_MODES = ("continuous", "on_grid")

DEFAULTS = {"P": "1", "angle_mode": "continuous", "method": "dynamic", "seed": "0"}
KEYS = ("Nt", "Nr", "L", "L_d", "S0", "P", "snr_db_list", "trials", "seed", "method", "angle_mode")


@dataclass(frozen=True)
class ExperimentConfig:
    Nt: int
    Nr: int
    L: int
    L_d: int
    S0: int
    snr_db_list: tuple
    trials: int
    seed: int = 0
    P: float = 1.0
    method: str = "dynamic"
    angle_mode: str = "continuous"

    def __post_init__(self):
        validate(self)

    def replace(self, **changes):
        fields = {k: getattr(self, k) for k in KEYS}
        fields.update(changes)
        return ExperimentConfig(**fields)


def _is_pow2(n):
    return n >= 1 and n & (n - 1) == 0


def validate(cfg):
    for name in ("Nt", "Nr"):
        if not _is_pow2(getattr(cfg, name)):
            raise ConstraintViolation(f"{name} must be a power of two")
    if cfg.L < 1:
        raise ConstraintViolation("L >= 1")
    if not 1 <= cfg.L_d:
        raise ConstraintViolation("L_d >= 1")
    if cfg.L_d > cfg.L:
        raise ConstraintViolation("L_d ≤ L")
    log_n = min(cfg.Nt, cfg.Nr).bit_length() - 1
    if not 0 <= cfg.S0 <= log_n:
        raise ConstraintViolation(f"S0 ≤ log2 N (0 <= S0 <= {log_n})")
    if cfg.trials < 1:
        raise ConstraintViolation("trials ≥ 1")
    if not cfg.P > 0:
        raise ConstraintViolation("P > 0")
    if not cfg.snr_db_list:
        raise ConstraintViolation("snr_db_list must not be empty")
    if cfg.method not in SIM_METHODS:
        raise ConstraintViolation(f"method must be one of {', '.join(SIM_METHODS)}")
    if cfg.angle_mode not in ANGLE_MODES:
        raise ConstraintViolation(f"angle_mode must be one of {', '.join(ANGLE_MODES)}")
    if cfg.angle_mode == "on_grid" and cfg.L > min(cfg.Nt, cfg.Nr):
        raise ConstraintViolation("on_grid needs L ≤ min(Nt, Nr)")


def parse_snr_list(text):
    """``start:step:stop`` (inclusive) or a comma/space separated list of dB values."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must be start:step:stop, got {text!r}")
        start, step, stop = (float(x) for x in parts)
        if step <= 0:
            raise ValueError("range step must be positive")
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return tuple(float(round(start + k * step, 12)) for k in range(max(count, 0)))
    return tuple(float(tok) for tok in text.replace(",", " ").split())


_CONVERTERS = {
    "Nt": int, "Nr": int, "L": int, "L_d": int, "S0": int, "trials": int, "seed": int,
    "P": float, "snr_db_list": parse_snr_list, "method": str, "angle_mode": str,
}


def read_pairs(text):
    """Raw ``{key: (value, lineno)}`` from config text; rejects unknown and repeated keys."""
    pairs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigParseError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        if key not in _CONVERTERS:
            raise ConfigParseError(f"unknown key {key!r}", lineno)
        if key in pairs:
            raise ConfigParseError(f"duplicate key {key!r}", lineno)
        pairs[key] = (value, lineno)
    return pairs


def parse_config(text, overrides=None):
    """Parse and validate config text; ``overrides`` (key -> str) win over the file."""
    pairs = {k: (v, None) for k, v in DEFAULTS.items()}
    pairs.update(read_pairs(text))
    for key, value in (overrides or {}).items():
        if key not in _CONVERTERS:
            raise ConfigParseError(f"unknown key {key!r}")
        pairs[key] = (str(value), None)
    missing = [k for k in KEYS if k not in pairs]
    if missing:
        raise ConfigParseError(f"missing required keys: {', '.join(missing)}")
    values = {}
    for key, (value, lineno) in pairs.items():
        try:
            values[key] = _CONVERTERS[key](value)
        except ValueError as exc:
            raise ConfigParseError(f"bad value for {key}: {exc}", lineno) from None
    return ExperimentConfig(**values)


def format_config(cfg):
    snr = ", ".join(f"{x:g}" for x in cfg.snr_db_list)
    lines = [f"{k} = {getattr(cfg, k)}" for k in KEYS if k != "snr_db_list"]
    lines.append(f"snr_db_list = {snr}")
    return "\n".join(lines) + "\n"
