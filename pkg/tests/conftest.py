import itertools

import numpy as np
import pytest
from hypothesis import settings

from switchruns import _kernels

# first calls may include JIT compilation; wall-clock deadlines are meaningless
settings.register_profile("default", deadline=None)
settings.load_profile("default")

_ACCEPTANCE_LINES = []


def brute_M(bits):
    """Largest n-1 such that some window of n tosses has n-1 switches."""
    N = len(bits)
    best = 0
    for m in range(N):
        for n in range(1, N - m + 1):
            w = bits[m : m + n]
            if sum(w[i] != w[i - 1] for i in range(1, n)) == n - 1:
                best = max(best, n - 1)
    return best


def brute_Z(bits):
    """Largest K with some window of K tosses that are all heads."""
    N = len(bits)
    best = 0
    for K in range(1, N + 1):
        if any(all(bits[m : m + K]) for m in range(N - K + 1)):
            best = K
    return best


def all_strings(N):
    return itertools.product((0, 1), repeat=N)


@pytest.fixture(scope="session")
def brute_pmfs():
    """Histograms of brute_M / brute_Z for N = 1..10 by itertools enumeration."""
    out = {}
    for N in range(1, 11):
        m = [0] * N
        z = [0] * (N + 1)
        for s in all_strings(N):
            m[brute_M(s)] += 1
            z[brute_Z(s)] += 1
        out[("M", N)] = tuple(m)
        out[("Z", N)] = tuple(z)
    return out


@pytest.fixture(scope="session")
def warm_kernels():
    # trigger (or load cached) JIT compilation so timed sections measure work
    bits = np.array([0, 1, 1], dtype=np.uint8)
    _kernels.scan_update(bits, _kernels.new_state())
    _kernels.longest_constant_run(bits)
    _kernels.scan_rows(bits.reshape(1, 3), 3)
    _kernels.enumerate_counts(3, 0, 8, True)


@pytest.fixture
def acceptance_log():
    def record(number, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
