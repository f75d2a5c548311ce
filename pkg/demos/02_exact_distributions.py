"""Exact and floating-point distributions of M_N and Z_N."""

import math

import numpy as np

from switchruns import exact

# %% integer counts over all 2^N sequences
for N in range(2, 6):
    print(f"N={N}  M counts {exact.pmf_M(N).counts}   Z counts {exact.pmf_Z(N).counts}")

# %% P(M_N < K-1) as an exact rational, and the float path for long sequences
print("P(M_8 < 3)      =", exact.prob_M_lt(8, 4))
print("float           =", exact.prob_M_lt(8, 4, "float"))
print("P(M_2^30 < 25)  =", exact.prob_M_lt(2**30, 26, "float"))

# %% p-value of an observed M: P(M_N >= m)
print("p-value N=4, M=3:", exact.p_value(4, 3))
print("p-value N=10^6, M=25:", exact.p_value(10**6, 25))

# %% the whole distribution at N = 2^20 from the float recursion
N = 2**20
pmf = exact.float_pmf_M(N)
k = np.arange(pmf.size)
mean = (k * pmf).sum()
sd = math.sqrt((k**2 * pmf).sum() - mean**2)
print(f"N=2^20: E[M]={mean:.4f}  sd={sd:.4f}  E[M]/log2 N={mean / 20:.4f}")
for j in range(15, 26):
    print(f"   P(M={j:2d}) = {pmf[j]:.5f}")

# %% growth thresholds, evaluated with 60-digit arithmetic
for eps in (0.1, 1.0):
    a1, a2 = exact.alpha1(N, eps), exact.alpha2(N, eps)
    print(f"eps={eps}: alpha1={int(a1)} (arg {a1.argument:.4f})  alpha2={int(a2)} (arg {a2.argument:.4f})")
