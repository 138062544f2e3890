import cmath
import math

import numpy as np
import pytest


def brute_gain(v, omega):
    """sqrt(N) * alpha(N, omega)^H v by an explicit loop."""
    n = len(v)
    alpha = [cmath.exp(1j * math.pi * k * omega) / math.sqrt(n) for k in range(n)]
    return math.sqrt(n) * sum(a.conjugate() * x for a, x in zip(alpha, v))


def dirichlet_mag(n, delta):
    """|sum_k exp(j*pi*k*delta)| / sqrt(n): gain of a unit steering beam offset by delta."""
    if abs(math.sin(math.pi * delta / 2)) < 1e-15:
        return math.sqrt(n)
    return abs(math.sin(n * math.pi * delta / 2) / math.sin(math.pi * delta / 2)) / math.sqrt(n)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
