"""Exact and double-precision distributions of the longest switch run and
longest head run, the window-probability constant, sandwich bounds,
almost-sure threshold functions, and schedule partial sums.

Counting uses the run-length transfer DP.  Flipping every other toss maps
alternating blocks onto constant blocks bijectively, so the number of
length-``N`` strings whose longest alternating block has at most ``L``
symbols equals the number whose longest constant run is at most ``L``.
With ``v_j(t)`` the number of admissible prefixes of length ``t`` ending in a
constant run of exactly ``j`` symbols,

    v_1(t+1) = sum_j v_j(t),    v_{j+1}(t+1) = v_j(t),    v_1(1) = 2.

Because ``v_j(t) = v_1(t-j+1)``, the row sum obeys a sliding-window
recurrence, which is what the integer code iterates.
"""

import math
import threading
from collections import deque
import warnings
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .errors import PrecisionWarning, RangeError, ScheduleError

EXACT_LIMIT = 4096

_cache_lock = threading.Lock()
_alt_cache = {}  # L -> tuple of counts, index t = length


@dataclass(frozen=True)
class RunLengthPmf:
    N: int
    statistic: str  # "M" or "Z"
    counts: tuple

    def __post_init__(self):
        if sum(self.counts) != 1 << self.N:
            raise AssertionError("pmf counts do not sum to 2**N")

    @property
    def total(self):
        return 1 << self.N

    def probability(self, k):
        if not 0 <= k < len(self.counts):
            return Fraction(0)
        return Fraction(self.counts[k], 1 << self.N)

    def probabilities(self):
        return [Fraction(c, 1 << self.N) for c in self.counts]

    def mean(self):
        return Fraction(sum(k * c for k, c in enumerate(self.counts)), 1 << self.N)


@dataclass(frozen=True)
class BoundPair:
    lower: Fraction
    upper: Fraction
    variant: str
    N: int
    K: int

    def contains(self, p):
        return self.lower <= p <= self.upper


@dataclass(frozen=True)
class ThresholdParams:
    N: int
    epsilon: float
    kind: str = "alpha1"

    def __post_init__(self):
        if self.N < 16:
            raise RangeError(f"threshold needs N >= 16, got {self.N}")
        if not self.epsilon > 0:
            raise RangeError("epsilon must be positive")
        if self.kind not in ("alpha1", "alpha2"):
            raise ValueError(f"unknown threshold kind {self.kind!r}")


class Threshold(int):
    """Integer threshold value carrying a ``precision_warning`` flag."""

    precision_warning = False

    def __new__(cls, value, precision_warning=False, argument=None):
        obj = super().__new__(cls, value)
        obj.precision_warning = precision_warning
        obj.argument = argument
        return obj


def _alt_counts_upto(L, n_max):
    """Counts for lengths ``0..n_max`` with longest alternating block <= L."""
    with _cache_lock:
        cached = _alt_cache.get(L)
    if cached is not None and len(cached) > n_max:
        return cached
    # heads[s] = v_1(s); window holds the last L of them
    heads = [0] * (n_max + 1)
    totals = [0] * (n_max + 1)
    window = 0
    for t in range(1, n_max + 1):
        heads[t] = 2 if t == 1 else totals[t - 1]
        window += heads[t]
        if t - L >= 1:
            window -= heads[t - L]
        totals[t] = window
    totals[0] = 1
    result = tuple(totals)
    with _cache_lock:
        current = _alt_cache.get(L)
        if current is None or len(current) < len(result):
            _alt_cache[L] = result
    return result


def count_max_alt_block_le(N, L):
    """Number of length-``N`` strings whose longest alternating block has <= L symbols."""
    if N < 1:
        raise RangeError("N must be >= 1")
    if L <= 0:
        return 0
    if L >= N:
        return 1 << N
    return _alt_counts_upto(L, N)[N]


def _alt_le_final(N, L):
    # same quantity without storing the sequence: T(t) = 2 T(t-1) - T(t-1-L)
    if L <= 0:
        return 0
    if L >= N:
        return 1 << N
    window = deque(1 << t for t in range(1, L + 1))  # T(1..L)
    window.append((1 << (L + 1)) - 2)
    for _ in range(L + 2, N + 1):
        window.append(2 * window[-1] - window.popleft())
    return window[-1]


def _head_le_final(N, z):
    # strings with longest run of ones <= z: a(n) = 2 a(n-1) - a(n-z-2)
    if z < 0:
        return 0
    if z >= N:
        return 1 << N
    window = deque(1 << t for t in range(z + 1))  # a(0..z)
    window.append((1 << (z + 1)) - 1)
    for _ in range(z + 2, N + 1):
        window.append(2 * window[-1] - window.popleft())
    return window[-1]


def pmf_M(N):
    """Exact distribution of the longest switch run in ``N`` fair tosses."""
    if N < 1:
        raise RangeError("N must be >= 1")
    cum = [_alt_le_final(N, L) for L in range(N + 1)]
    return RunLengthPmf(N, "M", tuple(cum[m + 1] - cum[m] for m in range(N)))


def pmf_Z(N):
    """Exact distribution of the longest head run in ``N`` fair tosses."""
    if N < 1:
        raise RangeError("N must be >= 1")
    cum = [0] + [_head_le_final(N, z) for z in range(N + 1)]
    return RunLengthPmf(N, "Z", tuple(cum[z + 1] - cum[z] for z in range(N + 1)))


def _float_alt_le(N, L):
    """P(longest alternating block <= L) by binary powering of the transfer matrix.

    The substochastic matrix has entries 1/2, so every product stays
    non-negative and no cancellation occurs.  Each squaring is rescaled by a
    power of two that is tracked separately, which keeps tiny probabilities
    from underflowing until the final conversion.
    """
    if L <= 0:
        return 0.0
    if L >= N:
        return 1.0
    # a longer block needs some window of L+1 alternating symbols
    if math.log2(N - L) - L < -64:
        return 1.0
    B = np.zeros((L, L))
    B[0, :] = 0.5
    B[np.arange(1, L), np.arange(L - 1)] = 0.5
    vec = np.zeros(L)
    vec[0] = 1.0
    vec_exp = 0
    power, power_exp = B, 0
    steps = N - 1
    while steps:
        if steps & 1:
            vec = power @ vec
            m, e = math.frexp(vec.max())
            vec = np.ldexp(vec, -e)
            vec_exp += e + power_exp
        steps >>= 1
        if steps:
            power = power @ power
            power_exp *= 2
            m, e = math.frexp(power.max())
            power = np.ldexp(power, -e)
            power_exp += e
    m, e = math.frexp(float(vec.sum()))
    return math.ldexp(m, e + vec_exp)


def prob_M_lt(N, K, mode="exact"):
    """P(M_N < K - 1), i.e. no alternating block of ``K`` symbols.

    ``mode="exact"`` returns a :class:`~fractions.Fraction` and is limited to
    ``N <= 4096``; ``mode="float"`` works for any ``N``.
    """
    if N < 1 or K < 1:
        raise RangeError("need N >= 1 and K >= 1")
    if mode == "exact":
        if N > EXACT_LIMIT:
            raise RangeError(f"exact mode supports N <= {EXACT_LIMIT}")
        return Fraction(count_max_alt_block_le(N, K - 1), 1 << N)
    if mode == "float":
        return _float_alt_le(N, K - 1)
    raise ValueError(f"unknown mode {mode!r}")


def float_pmf_M(N, tail=1e-300):
    """Double-precision P(M_N = k) for ``k = 0, 1, ...`` until the cdf saturates."""
    cdf = [0.0]
    L = 1
    while True:
        c = _float_alt_le(N, L)
        cdf.append(c)
        if c >= 1.0 or L >= N:
            break
        if 1.0 - c < tail and L > math.log2(N):
            break
        L += 1
    cdf[-1] = 1.0
    return np.diff(np.array(cdf))


def p_value(N, m_obs, mode=None):
    """P(M_N >= m_obs); exact Fraction when ``N <= 4096`` unless ``mode='float'``."""
    if not 0 <= m_obs <= N - 1:
        raise RangeError(f"m_obs={m_obs} outside [0, {N - 1}]")
    if mode is None:
        mode = "exact" if N <= EXACT_LIMIT else "float"
    return 1 - prob_M_lt(N, m_obs + 1, mode)


def switch_window_prob(K, variant="corrected"):
    """Probability that ``2K`` tosses contain an alternating block of ``K`` symbols.

    ``variant="paper"`` is the published value ``(K+2)/2**K``.  The corrected
    value subtracts ``2**(1-2K)``: when the first block starts at offset ``K``
    the first ``K`` symbols must also avoid being alternating, which the
    published count ignores.  The correction is checked by exhaustive
    enumeration in :func:`switchruns.oracle.verify_lemma41`.
    """
    if K < 2:
        raise RangeError("K must be >= 2")
    p = Fraction(K + 2, 1 << K)
    if variant == "paper":
        return p
    if variant == "corrected":
        return p - Fraction(2, 1 << (2 * K))
    raise ValueError(f"unknown variant {variant!r}")


def theorem41_bounds(N, K, variant="corrected"):
    """Lower/upper bounds on P(M_N < K-1) for ``N >= 2K``.

    ``paper`` and ``corrected`` differ only in the window probability ``p``:

        lower = (1-p)**(N//K - 1),   upper = (1-p)**((N//K)//2).

    When ``K`` does not divide ``N`` the blocks behind the lower bound stop
    short of the last ``N mod K`` tosses and the corrected lower bound fails
    for some small ``N``.  ``repaired`` keeps the corrected ``p`` and uses the
    exponent ``ceil(N/K) - 1``, i.e. the bound for the next multiple of ``K``.
    """
    if K < 2:
        raise RangeError("K must be >= 2")
    if N < 2 * K:
        raise RangeError(f"bounds need N >= 2K, got N={N}, K={K}")
    if variant == "repaired":
        q = 1 - switch_window_prob(K, "corrected")
        return BoundPair(q ** (-(-N // K) - 1), q ** ((N // K) // 2), variant, N, K)
    q = 1 - switch_window_prob(K, variant)
    blocks = N // K
    return BoundPair(q ** (blocks - 1), q ** (blocks // 2), variant, N, K)


def _threshold_argument(N, epsilon, kind):
    with mpmath.workdps(60):
        log2 = lambda x: mpmath.log(x, 2)  # noqa: E731
        base = log2(N) - log2(log2(log2(N))) + log2(log2(mpmath.e))
        eps = mpmath.mpf(epsilon)
        return base - 1 - eps if kind == "alpha1" else base + eps


def threshold(params):
    """Floor of the almost-sure bracketing expressions for the switch run.

    alpha1 = [log N - log log log N + log log e - 1 - eps]
    alpha2 = [log N - log log log N + log log e + eps]

    Evaluated with 60 significant digits.  If the argument lies within
    ``2**-40`` of an integer a :class:`PrecisionWarning` is issued and the
    result carries ``precision_warning=True``.
    """
    arg = _threshold_argument(params.N, params.epsilon, params.kind)
    value = int(mpmath.floor(arg))
    near = abs(arg - mpmath.nint(arg)) < mpmath.mpf(2) ** -40
    if near:
        warnings.warn(
            f"{params.kind}({params.N}, {params.epsilon}) argument {mpmath.nstr(arg, 20)} "
            "is within 2**-40 of an integer",
            PrecisionWarning,
            stacklevel=2,
        )
    return Threshold(value, near, float(arg))


def alpha1(N, epsilon):
    return threshold(ThresholdParams(N, epsilon, "alpha1"))


def alpha2(N, epsilon):
    return threshold(ThresholdParams(N, epsilon, "alpha2"))


def schedule_partial_sum(schedule, n_max, n_min=1):
    """Sum of ``2**-schedule(n)`` for ``n = n_min..n_max``.

    A schedule value of zero is accepted only at ``n = 1`` (where logarithmic
    schedules vanish); any other non-positive or non-finite value raises
    :class:`ScheduleError`.
    """
    if n_max < n_min:
        raise RangeError("n_max must be >= n_min")
    total = math.fsum(2.0 ** -_checked(schedule, n) for n in range(n_min, n_max + 1))
    return total


def _checked(schedule, n):
    g = float(schedule(n))
    if not math.isfinite(g) or g < 0 or (g == 0 and n != 1):
        raise ScheduleError(f"schedule value {g} at n={n} is not positive")
    return g
