"""Uniform linear array primitives in direction-cosine space.

Angles are direction cosines ``omega`` in [-1, 1]; antennas sit at half
wavelength spacing so the phase step between elements is ``pi * omega``.
"""

import numpy as np


def _check_omega(omega):
    omega = float(omega)
    if not np.isfinite(omega) or abs(omega) > 1.0:
        raise ValueError(f"direction cosine must lie in [-1, 1], got {omega}")
    return omega


def steering_vector(n, omega):
    """Unit-norm ULA response ``(1/sqrt(n)) * exp(1j*pi*k*omega)``, k = 0..n-1."""
    if int(n) != n or n < 1:
        raise ValueError(f"array size must be a positive integer, got {n}")
    omega = _check_omega(omega)
    return np.exp(1j * np.pi * omega * np.arange(int(n))) / np.sqrt(n)


def steering_matrix(n, omegas):
    """Stack steering vectors for several angles as columns (n x len(omegas)).

    No range check; callers pass validated angles.
    """
    omegas = np.asarray(omegas, dtype=float)
    return np.exp(1j * np.pi * np.outer(np.arange(n), omegas)) / np.sqrt(n)


def inner_product(a, b):
    """Return ``a^H b``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def beam_gain(v, omega):
    """Array gain of weights ``v`` toward ``omega``: sum_n v[n] exp(-1j*pi*n*omega).

    Equals ``sqrt(N) * steering_vector(N, omega)^H v``.
    """
    v = np.asarray(v)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("weight vector must be a non-empty 1-D array")
    omega = _check_omega(omega)
    return complex(np.dot(np.exp(-1j * np.pi * omega * np.arange(v.size)), v))


def pattern_samples(v, grid_size):
    """Sample ``|beam_gain|`` on a uniform grid spanning [-1, 1] inclusive.

    Returns an array of shape (grid_size, 2) with columns omega and |gain|.
    """
    if int(grid_size) != grid_size or grid_size < 2:
        raise ValueError(f"grid_size must be an integer >= 2, got {grid_size}")
    v = np.asarray(v)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("weight vector must be a non-empty 1-D array")
    omegas = np.linspace(-1.0, 1.0, int(grid_size))
    # rows are sqrt(N) * alpha(N, omega)^H
    resp = np.exp(-1j * np.pi * np.outer(omegas, np.arange(v.size)))
    return np.column_stack([omegas, np.abs(resp @ v)])


def format_pattern(samples, header=()):
    """Render pattern samples as the two-column text dump."""
    lines = [f"# {h}" for h in header]
    lines.append("# omega |gain|")
    lines.extend(f"{om:.10f} {g:.10e}" for om, g in samples)
    return "\n".join(lines) + "\n"


def parse_pattern(text):
    rows = [
        [float(tok) for tok in line.split()]
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    return np.array(rows, dtype=float).reshape(-1, 2)
