import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.linalg import expm

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
C_LIGHT = Fraction(299792458)


def kron_loops(a, b):
    """Kronecker product by the index formula, independent of np.kron."""
    out = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    out[2 * i + k, 2 * j + l] = a[i][j] * b[k][l]
    return out


def ry_expm(phi):
    return expm(-1j * phi * SIGMA_Y / 2)


def embed_loops(u, i, j):
    out = np.eye(4, dtype=complex)
    out[np.ix_([i, j], [i, j])] = u
    return out


def freq_exact(nm):
    """c / lambda in Hz with exact rational arithmetic."""
    return C_LIGHT / (Fraction(str(nm)) / 10**9)


def matmul_rows(u, v):
    return np.array([sum(u[r][c] * v[c] for c in range(4)) for r in range(4)])


@pytest.fixture
def rng():
    return np.random.default_rng(7)


CANONICAL = [0.0, math.pi / 6, math.pi / 4, math.pi / 2, math.pi, 3 * math.pi / 2, 2 * math.pi]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
