"""Brute-force enumeration over {0,1}^N: ground truth for every finite-N claim.

Strings are the integers ``0 .. 2**N - 1``; bit ``i`` (least significant
first) is toss ``i + 1``.  Work may be split into integer ranges and the
histograms summed, so the totals do not depend on how the range is
partitioned or how many workers run.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import BudgetError, RangeError
from .exact import RunLengthPmf, switch_window_prob

MAX_ENUM_BITS = 24

PUBLISHED_TABLES = {
    ("M", 2): (2, 2),
    ("M", 3): (2, 4, 2),
    ("M", 4): (2, 8, 4, 2),
    ("M", 5): (2, 14, 10, 4, 2),
    ("Z", 2): (1, 2, 1),
    ("Z", 3): (1, 4, 2, 1),
    ("Z", 4): (1, 7, 5, 2, 1),
    ("Z", 5): (1, 12, 11, 5, 2, 1),
}


@dataclass(frozen=True)
class TableReport:
    N: int
    statistic: str
    expected: tuple
    observed: tuple

    @property
    def match(self):
        return tuple(self.expected) == tuple(self.observed)


@dataclass(frozen=True)
class WindowProbReport:
    K: int
    exact: Fraction
    paper: Fraction
    corrected: Fraction

    @property
    def paper_equal(self):
        return self.exact == self.paper

    @property
    def corrected_equal(self):
        return self.exact == self.corrected

    @property
    def paper_excess(self):
        return self.paper - self.exact


@dataclass(frozen=True)
class CorrelationReport:
    N: int
    K: int
    p_joint: Fraction
    p_product: Fraction
    p_d0: Fraction
    p_d1: Fraction

    @property
    def holds(self):
        return self.p_joint >= self.p_product


def _check_budget(N):
    if N < 1:
        raise RangeError("N must be >= 1")
    if N > MAX_ENUM_BITS:
        raise BudgetError(f"enumeration limited to N <= {MAX_ENUM_BITS}, got {N}")


def _chunks(total, workers):
    n = max(1, workers) * 4
    edges = np.linspace(0, total, min(n, total) + 1).astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def enumerate_counts(N, statistic, start=0, stop=None):
    """Histogram of the statistic over the integer range ``[start, stop)``."""
    _check_budget(N)
    if stop is None:
        stop = 1 << N
    if not 0 <= start <= stop <= (1 << N):
        raise RangeError("range outside [0, 2**N]")
    if statistic not in ("M", "Z"):
        raise ValueError(f"unknown statistic {statistic!r}")
    counts = _kernels.enumerate_counts(N, start, stop, statistic == "M")
    return counts[: N if statistic == "M" else N + 1]


def enumerate_pmf(N, statistic, workers=1):
    """Exact pmf of M or Z by scanning all ``2**N`` strings."""
    _check_budget(N)
    parts = _chunks(1 << N, workers)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            hists = list(pool.map(lambda ab: enumerate_counts(N, statistic, *ab), parts))
    else:
        hists = [enumerate_counts(N, statistic, a, b) for a, b in parts]
    total = np.sum(hists, axis=0)
    return RunLengthPmf(N, statistic, tuple(int(c) for c in total))


def verify_paper_tables():
    reports = []
    for stat in ("M", "Z"):
        for N in (2, 3, 4, 5):
            observed = enumerate_pmf(N, stat).counts
            reports.append(TableReport(N, stat, PUBLISHED_TABLES[(stat, N)], observed))
    return reports


def _alternating_windows(N, K):
    """Boolean matrix ``B[j, x]``: toss window ``j+1 .. j+K`` of string ``x`` alternates.

    ``d = x ^ (x >> 1)`` has bit ``i`` set iff tosses ``i+1`` and ``i+2``
    differ, so the window alternates iff bits ``j .. j+K-2`` of ``d`` are set.
    """
    x = np.arange(1 << N, dtype=np.uint32)
    d = x ^ (x >> 1)
    mask = np.uint32((1 << (K - 1)) - 1)
    return np.stack([((d >> np.uint32(j)) & mask) == mask for j in range(N - K + 1)])


def verify_lemma41(K, workers=1):
    """Enumerated P(M_2K >= K - 1) next to the published and corrected closed forms."""
    if not 2 <= K <= 12:
        raise BudgetError(f"K={K} outside [2, 12]")
    N = 2 * K
    hits = sum(enumerate_pmf(N, "M", workers).counts[K - 1 :])
    return WindowProbReport(
        K,
        Fraction(hits, 1 << N),
        switch_window_prob(K, "paper"),
        switch_window_prob(K, "corrected"),
    )


def verify_correlation_inequality(N, K):
    """Check P(D1 D0) >= P(D1) P(D0) for the block events of the sandwich proof.

    ``B_j`` = window ``j+1..j+K`` alternates (j = 0..N-K),
    ``C_l`` = union of ``B_j`` for ``j = lK .. (l+1)K`` (l = 0..[(N-2K)/K]),
    ``D_0`` / ``D_1`` = union of the even / odd indexed ``C_l``.
    An empty union has probability 0.
    """
    if K < 2 or N < 2 * K:
        raise RangeError(f"need K >= 2 and N >= 2K, got N={N}, K={K}")
    _check_budget(N)
    B = _alternating_windows(N, K)
    n_blocks = (N - 2 * K) // K + 1
    C = [B[l * K : (l + 1) * K + 1].any(axis=0) for l in range(n_blocks)]
    empty = np.zeros(1 << N, dtype=bool)
    D0 = np.logical_or.reduce(C[0::2]) if C[0::2] else empty
    D1 = np.logical_or.reduce(C[1::2]) if C[1::2] else empty
    total = 1 << N
    n0 = int(np.count_nonzero(D0))
    n1 = int(np.count_nonzero(D1))
    n01 = int(np.count_nonzero(D0 & D1))
    return CorrelationReport(
        N,
        K,
        Fraction(n01, total),
        Fraction(n0 * n1, total * total),
        Fraction(n0, total),
        Fraction(n1, total),
    )
