"""Seeded, reproducible simulation of fair-coin streams.

Every replica draws from its own Philox-4x64 substream: the key is the
simulation seed and the replica index occupies the top word of the 256-bit
counter, so substreams never overlap and do not depend on which worker runs
them.  Generator words are unpacked most-significant bit first.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import _kernels
from .core import StreamScanner
from .errors import BudgetError, ConfigError
from .exact import alpha1, alpha2, theorem41_bounds

GENERATOR_ID = "philox4x64-10:key=seed:counter=replica<<192:msb-first"
MAX_TRAJECTORY = 1 << 28
_CHUNK_BITS = 1 << 22
_SEED_LIMIT = 1 << 64


def replica_generator(seed, replica):
    return np.random.Philox(key=seed, counter=[0, 0, 0, replica])


class BitSource:
    """Buffered MSB-first bit stream from one replica substream."""

    def __init__(self, seed, replica):
        self._gen = replica_generator(seed, replica)
        self._buf = np.empty(0, dtype=np.uint8)

    def take(self, n):
        if n > self._buf.size:
            need = n - self._buf.size
            words = self._gen.random_raw((need + 63) // 64)
            fresh = np.unpackbits(words.astype(">u8").view(np.uint8))
            self._buf = np.concatenate((self._buf, fresh))
        out, self._buf = self._buf[:n], self._buf[n:]
        return out


def replica_bits(seed, replica, n):
    """The first ``n`` bits of a replica's stream as a ``uint8`` array."""
    return BitSource(seed, replica).take(n)


def _check_seed(seed):
    if not 0 <= seed < _SEED_LIMIT:
        raise ConfigError(f"seed must be a 64-bit unsigned integer, got {seed}")


@dataclass(frozen=True)
class SimConfig:
    seed: int
    replicas: int
    lengths: tuple
    epsilon: float = 1.0
    generator_id: str = GENERATOR_ID

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(int(n) for n in self.lengths))
        _check_seed(self.seed)
        if self.replicas < 1:
            raise ConfigError("replicas must be >= 1")
        if not self.lengths:
            raise ConfigError("lengths must not be empty")
        if any(b <= a for a, b in zip(self.lengths, self.lengths[1:])):
            raise ConfigError("lengths must be strictly increasing")
        if self.lengths[0] < 2:
            # M/log2(N) is undefined at N = 1
            raise ConfigError("every length must be >= 2")
        if not self.epsilon > 0:
            raise ConfigError("epsilon must be positive")
        if self.generator_id != GENERATOR_ID:
            raise ConfigError(f"unsupported generator {self.generator_id!r}")


@dataclass(frozen=True)
class SimRecord:
    replica: int
    N: int
    M: int
    Z: int
    trailing_alt: int = 0


def binomial_half_width(p_hat, n, sigmas=3.0):
    return sigmas * math.sqrt(p_hat * (1.0 - p_hat) / n)


@dataclass(frozen=True)
class Aggregate:
    N: int
    mean_ratio: float
    min_ratio: float
    max_ratio: float
    mean_M: float
    mean_Z: float
    alpha1: int | None
    alpha2: int | None
    alpha1_hit_rate: float | None
    alpha1_half_width: float | None
    alpha2_tail_rate: float | None
    alpha2_half_width: float | None


@dataclass
class SimReport:
    config: SimConfig
    records: list
    aggregates: list

    def to_dict(self):
        cfg = asdict(self.config)
        cfg["lengths"] = list(cfg["lengths"])
        return {
            "config": cfg,
            "aggregates": [asdict(a) for a in self.aggregates],
            "records": [[r.replica, r.N, r.M, r.Z] for r in self.records],
        }

    def records_for(self, N):
        return [r for r in self.records if r.N == N]


def _run_replica(seed, replica, lengths):
    src = BitSource(seed, replica)
    scanner = StreamScanner()
    out = []
    done = 0
    for N in lengths:
        while done < N:
            step = min(_CHUNK_BITS, N - done)
            scanner.update(src.take(step))
            done += step
        out.append(
            SimRecord(replica, N, scanner.longest_switch_run, scanner.longest_head_run,
                      scanner.trailing_alternating)
        )
    return out


def _map(fn, items, workers):
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _aggregate(config, records):
    aggs = []
    R = config.replicas
    for N in config.lengths:
        rows = [r for r in records if r.N == N]
        M = np.array([r.M for r in rows], dtype=np.int64)
        Z = np.array([r.Z for r in rows], dtype=np.int64)
        ratio = M / math.log2(N)
        a1 = a2 = hit = tail = hw1 = hw2 = None
        if N >= 16:
            a1 = int(alpha1(N, config.epsilon))
            a2 = int(alpha2(N, config.epsilon))
            hit = float(np.count_nonzero(M >= a1)) / R
            tail = float(np.count_nonzero(M < a2)) / R
            hw1 = binomial_half_width(hit, R)
            hw2 = binomial_half_width(tail, R)
        aggs.append(Aggregate(
            N=N,
            mean_ratio=float(ratio.mean()),
            min_ratio=float(ratio.min()),
            max_ratio=float(ratio.max()),
            mean_M=float(M.mean()),
            mean_Z=float(Z.mean()),
            alpha1=a1,
            alpha2=a2,
            alpha1_hit_rate=hit,
            alpha1_half_width=hw1,
            alpha2_tail_rate=tail,
            alpha2_half_width=hw2,
        ))
    return aggs


def simulate_statistics(config, workers=1):
    """Record M and Z at every checkpoint length for every replica.

    Each replica is one continuous stream; statistics at a checkpoint are those
    of the prefix of that length.  The report is a pure function of ``config``.
    """
    per_replica = _map(
        lambda r: _run_replica(config.seed, r, config.lengths), range(config.replicas), workers
    )
    records = [rec for recs in per_replica for rec in recs]
    return SimReport(config, records, _aggregate(config, records))


@dataclass(frozen=True)
class Estimate:
    N: int
    K: int
    replicas: int
    hits: int
    half_width: float
    bounds: object = None

    @property
    def estimate(self):
        return self.hits / self.replicas


def _block_longest_switch(seed, N, replicas):
    n_words = (N + 63) // 64
    words = np.stack([replica_generator(seed, r).random_raw(n_words) for r in replicas])
    rows = np.unpackbits(words.astype(">u8").view(np.uint8), axis=1)
    m, _ = _kernels.scan_rows(rows, N)
    return m


def empirical_prob_M_lt(N, K, replicas, seed, workers=1):
    """Fraction of replicas with ``M_N < K - 1`` and its 3-sigma half-width."""
    _check_seed(seed)
    if replicas < 100:
        raise ConfigError("need at least 100 replicas")
    if K < 1 or N < 2 * K:
        raise ConfigError(f"need K >= 1 and N >= 2K, got N={N}, K={K}")
    if N > MAX_TRAJECTORY:
        raise BudgetError("N too large for batched replicas")
    block = max(1, min(8192, (1 << 24) // max(N, 1)))
    starts = range(0, replicas, block)
    ms = _map(
        lambda s: _block_longest_switch(seed, N, range(s, min(s + block, replicas))), starts, workers
    )
    hits = int(sum(np.count_nonzero(m < K - 1) for m in ms))
    p_hat = hits / replicas
    bounds = theorem41_bounds(N, K, "corrected") if K >= 2 else None
    return Estimate(N, K, replicas, hits, binomial_half_width(p_hat, replicas), bounds)


@dataclass(frozen=True)
class CoverageRow:
    N: int
    alpha1: int
    alpha2: int
    alpha1_hit_rate: float
    alpha2_tail_rate: float
    delta: float
    delta_violation_rate: float
    tail_window_rate: float
    replicas: int


def default_delta(n):
    return 2.0 * math.log2(n)


def threshold_coverage(config, delta=default_delta, workers=1, report=None):
    """Per-length hit rates for the almost-sure threshold diagnostics.

    ``alpha1_hit_rate``: fraction with M_N >= alpha1(N).
    ``alpha2_tail_rate``: fraction with M_N < alpha2(N).
    ``delta_violation_rate``: fraction with M_N >= delta(N) - 1.
    ``tail_window_rate``: fraction whose final ceil(delta(N)) tosses alternate.
    """
    if config.lengths[0] < 16:
        raise ConfigError("threshold coverage needs every length >= 16")
    if report is None:
        report = simulate_statistics(config, workers)
    rows = []
    R = config.replicas
    for agg in report.aggregates:
        recs = report.records_for(agg.N)
        d = float(delta(agg.N))
        L = math.ceil(d)
        rows.append(CoverageRow(
            N=agg.N,
            alpha1=agg.alpha1,
            alpha2=agg.alpha2,
            alpha1_hit_rate=agg.alpha1_hit_rate,
            alpha2_tail_rate=agg.alpha2_tail_rate,
            delta=d,
            delta_violation_rate=sum(r.M >= d - 1 for r in recs) / R,
            tail_window_rate=sum(r.trailing_alt >= L for r in recs) / R,
            replicas=R,
        ))
    return rows


@dataclass(frozen=True)
class TrajectoryPoint:
    N: int
    M: int
    ratio: float


def limit_trajectory(seed, checkpoints, replica=0):
    """M_N and M_N / log2(N) along one continuous stream."""
    _check_seed(seed)
    checkpoints = [int(n) for n in checkpoints]
    if not checkpoints or any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
        raise ConfigError("checkpoints must be non-empty and strictly increasing")
    if checkpoints[0] < 2:
        raise ConfigError("checkpoints must be >= 2")
    if checkpoints[-1] > MAX_TRAJECTORY:
        raise BudgetError(f"largest checkpoint exceeds {MAX_TRAJECTORY}")
    recs = _run_replica(seed, replica, checkpoints)
    return [TrajectoryPoint(r.N, r.M, r.M / math.log2(r.N)) for r in recs]
