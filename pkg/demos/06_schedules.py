"""Partial sums of 2^-gamma_n for growth schedules near the boundary."""

import math

from switchruns.exact import schedule_partial_sum

# gamma_n = log2 n gives the harmonic series (diverges);
# gamma_n = log2 n + 2 log2 log2 n converges
schedules = {
    "log2 n": (lambda n: math.log2(n), 1),
    "2 log2 n": (lambda n: 2 * math.log2(n), 1),
    "log2 n + log2 log2 n": (lambda n: math.log2(n) + math.log2(math.log2(n)), 2),
    "log2 n + 2 log2 log2 n": (lambda n: math.log2(n) + 2 * math.log2(math.log2(n)), 2),
}
for name, (g, first) in schedules.items():
    sums = [schedule_partial_sum(g, 10**k, first) for k in (2, 4, 6)]
    print(f"{name:24s}", "  ".join(f"{s:9.4f}" for s in sums))
