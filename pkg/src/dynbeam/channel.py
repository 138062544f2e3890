"""Sparse multipath MIMO channel and the noisy single-slot training measurement."""

from dataclasses import dataclass, field

import numpy as np

from .arraycore import steering_matrix
from .codebook import Codeword, bin_center


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """``H = sqrt(nt*nr/L) * sum_l gain_l * a_r(aoa_l) a_t(aod_l)^H``."""

    nt: int
    nr: int
    gains: np.ndarray
    aod: np.ndarray
    aoa: np.ndarray
    _at_h: np.ndarray = field(init=False, repr=False)
    _ar: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        gains = np.atleast_1d(np.asarray(self.gains, dtype=complex))
        aod = np.atleast_1d(np.asarray(self.aod, dtype=float))
        aoa = np.atleast_1d(np.asarray(self.aoa, dtype=float))
        if gains.ndim != 1 or gains.size < 1:
            raise ValueError("a channel needs at least one path")
        if not (gains.shape == aod.shape == aoa.shape):
            raise ValueError("gains, aod and aoa must have one entry per path")
        if not np.all(np.isfinite(gains)):
            raise ValueError("path gains must be finite")
        if np.any(np.abs(aod) > 1) or np.any(np.abs(aoa) > 1):
            raise ValueError("path angles must be direction cosines in [-1, 1]")
        for name, arr in (("gains", gains), ("aod", aod), ("aoa", aoa)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "_at_h", steering_matrix(self.nt, aod).conj().T.copy())
        object.__setattr__(self, "_ar", steering_matrix(self.nr, aoa))

    @property
    def num_paths(self):
        return self.gains.size

    @property
    def scale(self):
        return np.sqrt(self.nt * self.nr / self.num_paths)

    def matrix(self):
        """Dense ``nr x nt`` channel matrix."""
        return self.scale * (self._ar * self.gains) @ self._at_h


def _weights(v):
    return v.weights if isinstance(v, Codeword) else np.asarray(v)


def apply_channel(ch, v):
    """``H v`` computed path by path, without forming ``H``."""
    v = _weights(v)
    if v.shape != (ch.nt,):
        raise ValueError(f"dimension mismatch: codeword {v.shape}, channel expects ({ch.nt},)")
    return ch.scale * (ch._ar @ (ch.gains * (ch._at_h @ v)))


def draw_channel(nt, nr, num_paths, angle_mode, rng):
    """Random channel with CN(0, 1) gains.

    ``continuous`` draws angles uniformly on [-1, 1].  ``on_grid`` places
    every path at a bottom-beam center, with no two paths sharing a
    transmit bin or a receive bin, so ground truth is unambiguous.
    """
    if num_paths < 1:
        raise ValueError(f"number of paths must be >= 1, got {num_paths}")
    gains = (rng.standard_normal(num_paths) + 1j * rng.standard_normal(num_paths)) / np.sqrt(2)
    if angle_mode == "continuous":
        aod = rng.uniform(-1.0, 1.0, num_paths)
        aoa = rng.uniform(-1.0, 1.0, num_paths)
    elif angle_mode == "on_grid":
        if num_paths > min(nt, nr):
            raise ValueError("on_grid needs at most min(nt, nr) paths")
        p = rng.choice(nt, size=num_paths, replace=False) + 1
        q = rng.choice(nr, size=num_paths, replace=False) + 1
        aod = bin_center(nt, p)
        aoa = bin_center(nr, q)
    else:
        raise ValueError(f"unknown angle mode {angle_mode!r}")
    return ChannelRealization(nt, nr, gains, aod, aoa)


@dataclass
class MeasurementModel:
    """Transmit power, per-antenna noise variance, noise source and slot counter."""

    power: float
    noise_var: float
    rng: np.random.Generator
    count: int = 0

    def __post_init__(self):
        if self.power <= 0:
            raise ValueError("transmit power must be positive")
        if self.noise_var < 0:
            raise ValueError("noise variance must be non-negative")


def measure(ch, v, w, mm):
    """One training slot: ``sqrt(P) w^H H v + w^H eta`` with fresh noise ``eta``."""
    v = _weights(v)
    w = _weights(w)
    if w.shape != (ch.nr,):
        raise ValueError(f"dimension mismatch: combiner {w.shape}, channel expects ({ch.nr},)")
    y = np.sqrt(mm.power) * np.vdot(w, apply_channel(ch, v))
    if mm.noise_var > 0:
        eta = mm.rng.standard_normal(2 * ch.nr).view(complex)
        y += np.sqrt(mm.noise_var / 2) * np.vdot(w, eta)
    mm.count += 1
    return complex(y)


def snr_to_noise(snr_db, power=1.0):
    """Noise variance giving ``power / noise_var`` equal to ``snr_db``."""
    if power <= 0:
        raise ValueError("transmit power must be positive")
    return power / 10 ** (snr_db / 10)


def format_fixture(ch):
    lines = [f"{ch.nt} {ch.nr} {ch.num_paths}"]
    for g, t, r in zip(ch.gains, ch.aod, ch.aoa):
        lines.append(" ".join(repr(float(x)) for x in (g.real, g.imag, t, r)))
    return "\n".join(lines) + "\n"


def parse_fixture(text):
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.startswith("#")]
    nt, nr, num_paths = (int(x) for x in rows[0])
    body = np.array(rows[1:], dtype=float)
    if body.shape != (num_paths, 4):
        raise ValueError(f"fixture declares {num_paths} paths but has {len(rows) - 1} rows")
    return ChannelRealization(nt, nr, body[:, 0] + 1j * body[:, 1], body[:, 2], body[:, 3])
