"""Seeded Monte Carlo of M_N and Z_N, compared with exact values."""

import math

from switchruns import exact
from switchruns.montecarlo import (
    SimConfig,
    empirical_prob_M_lt,
    limit_trajectory,
    simulate_statistics,
    threshold_coverage,
)

# %% prefix statistics at several lengths from one stream per replica
cfg = SimConfig(seed=2024, replicas=100, lengths=[2**10, 2**14, 2**18])
report = simulate_statistics(cfg)
for a in report.aggregates:
    print(f"N=2^{int(math.log2(a.N))}: mean M/log2N={a.mean_ratio:.4f} "
          f"[{a.min_ratio:.3f}, {a.max_ratio:.3f}]  mean Z={a.mean_Z:.2f}  "
          f"alpha1 hit {a.alpha1_hit_rate:.2f}  alpha2 tail {a.alpha2_tail_rate:.2f}")

# %% empirical P(M_N < K-1) next to the exact value and the bounds
for N, K in [(8, 4), (64, 6)]:
    est = empirical_prob_M_lt(N, K, 50_000, seed=7)
    print(f"N={N} K={K}: {est.estimate:.4f} +/- {est.half_width:.4f}  exact {float(exact.prob_M_lt(N, K)):.4f}")

# %% threshold and tail-window diagnostics
rows = threshold_coverage(SimConfig(seed=5, replicas=100, lengths=[2**12, 2**16, 2**20]))
for r in rows:
    print(r)

# %% one long trajectory of M_N / log2 N
for pt in limit_trajectory(99, [2**k for k in range(8, 25, 2)]):
    print(f"N=2^{int(math.log2(pt.N)):2d}  M={pt.M:2d}  ratio={pt.ratio:.4f}")
