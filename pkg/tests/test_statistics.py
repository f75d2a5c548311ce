"""Seeded statistical checks whose windows come from exact distributions."""

import math

import numpy as np
import pytest

from switchruns import exact
from switchruns.montecarlo import (
    SimConfig,
    empirical_prob_M_lt,
    limit_trajectory,
    simulate_statistics,
    threshold_coverage,
)


def three_sigma(p, n):
    return 3 * math.sqrt(p * (1 - p) / n)


def test_coverage_at_2_20():
    N = 2**20
    cfg = SimConfig(seed=31337, replicas=200, lengths=[N], epsilon=1.0)
    (row,) = threshold_coverage(cfg, delta=lambda n: 2 * math.log2(n))
    # exact bars: P(M >= alpha1) ~ 0.99966, P(M >= 2 log2 N - 1) ~ 1e-6
    assert 1 - exact.prob_M_lt(N, row.alpha1 + 1, "float") > 0.999
    assert row.alpha1_hit_rate >= 0.95
    assert row.delta_violation_rate <= 0.05


def test_pinned_mean_ratio_in_wide_window():
    cfg = SimConfig(seed=404, replicas=200, lengths=[2**20])
    (agg,) = simulate_statistics(cfg).aggregates
    assert 0.9 <= agg.mean_ratio <= 1.1


def test_trajectory_window_at_2_24():
    N = 2**24
    pmf = exact.float_pmf_M(N)
    log2N = math.log2(N)
    k = np.arange(pmf.size)
    outside = pmf[(k / log2N < 0.75) | (k / log2N > 1.3)].sum()
    # the window is not a 1e-3 event at this N: the upper tail alone is ~2e-3
    assert 1e-3 < outside < 3e-3
    traj = limit_trajectory(99, [2**k for k in range(10, 25)])
    assert 0.75 <= traj[-1].ratio <= 1.3
    assert [p.M for p in traj] == sorted(p.M for p in traj)


@pytest.mark.parametrize("N,K", [(40, 5), (100, 7), (257, 8)])
def test_empirical_matches_exact(N, K):
    R = 20_000
    p = float(exact.prob_M_lt(N, K))
    est = empirical_prob_M_lt(N, K, R, seed=N * 1000 + K)
    assert abs(est.estimate - p) <= three_sigma(p, R)
    assert abs(est.half_width - three_sigma(est.estimate, R)) < 1e-15


def test_sandwich_covers_empirical_rates():
    R = 1000
    lengths = [2**10, 2**14, 2**18]
    report = simulate_statistics(SimConfig(seed=2718, replicas=R, lengths=lengths))
    for N in lengths:
        Ms = np.array([r.M for r in report.records_for(N)])
        for K in range(4, 11):
            est = float(np.mean(Ms < K - 1))
            p = exact.prob_M_lt(N, K, "float")
            hw = three_sigma(p, R)
            b = exact.theorem41_bounds(N, K, "corrected")
            assert float(b.lower) - hw <= est <= float(b.upper) + hw, (N, K, est)
