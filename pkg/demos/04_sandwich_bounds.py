"""Geometric bounds on P(M_N < K-1) and where they hold."""

from switchruns import exact

# %% published constant vs the corrected one
N, K = 8, 4
p = exact.prob_M_lt(N, K)
for v in ("paper", "corrected"):
    b = exact.theorem41_bounds(N, K, v)
    print(f"{v:9s}: {float(b.lower):.6f} <= {float(p):.6f} <= {float(b.upper):.6f} ? {b.contains(p)}")

# %% the corrected lower bound uses floor(N/K) blocks and misses the last
# N mod K tosses; it can fail when K does not divide N
N, K = 7, 3
p = exact.prob_M_lt(N, K)
for v in ("corrected", "repaired"):
    b = exact.theorem41_bounds(N, K, v)
    print(f"N=7 K=3 {v:9s}: lower {b.lower} vs exact {p}: holds {b.contains(p)}")

# %% count failures over a modest grid
fails = {"paper": 0, "corrected": 0, "repaired": 0}
for K in range(3, 9):
    for N in range(2 * K, 600):
        p = exact.prob_M_lt(N, K)
        for v in fails:
            fails[v] += not exact.theorem41_bounds(N, K, v).contains(p)
print("violations for K in 3..8, N < 600:", fails)
