import json
import math
from pathlib import Path

import numpy as np
import pytest

from switchruns import BitSequence, longest_head_run, longest_switch_run
from switchruns.errors import BudgetError, ConfigError
from switchruns.montecarlo import (
    BitSource,
    SimConfig,
    empirical_prob_M_lt,
    limit_trajectory,
    replica_bits,
    replica_generator,
    simulate_statistics,
    threshold_coverage,
)

GOLDEN = Path(__file__).parent / "golden" / "simulate_seed2024.json"


class TestStreams:
    def test_msb_first_unpacking(self):
        word = replica_generator(5, 0).random_raw(1)[0]
        bits = replica_bits(5, 0, 64)
        assert int("".join(map(str, bits)), 2) == int(word)

    def test_take_matches_single_draw(self):
        src = BitSource(11, 3)
        pieces = np.concatenate([src.take(n) for n in (1, 63, 64, 100, 5)])
        assert np.array_equal(pieces, replica_bits(11, 3, 233))

    def test_replicas_differ(self):
        assert not np.array_equal(replica_bits(1, 0, 256), replica_bits(1, 1, 256))


class TestConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(seed=1, replicas=0, lengths=[16]),
            dict(seed=1, replicas=1, lengths=[]),
            dict(seed=1, replicas=1, lengths=[32, 16]),
            dict(seed=1, replicas=1, lengths=[16, 16]),
            dict(seed=1, replicas=1, lengths=[1, 16]),
            dict(seed=1, replicas=1, lengths=[16], epsilon=0),
            dict(seed=-1, replicas=1, lengths=[16]),
            dict(seed=2**64, replicas=1, lengths=[16]),
            dict(seed=1, replicas=1, lengths=[16], generator_id="mt19937"),
        ],
    )
    def test_rejected(self, kwargs):
        with pytest.raises(ConfigError):
            SimConfig(**kwargs)


class TestSimulate:
    def test_records_are_prefix_statistics(self):
        cfg = SimConfig(seed=77, replicas=3, lengths=[2, 17, 64, 200])
        rep = simulate_statistics(cfg)
        assert len(rep.records) == 3 * 4
        for r in range(3):
            bits = BitSequence(replica_bits(77, r, 200))
            for rec in rep.records[4 * r : 4 * r + 4]:
                assert rec.replica == r
                assert rec.M == longest_switch_run(bits, 1, rec.N)
                prefix = BitSequence(bits.bits[: rec.N])
                assert rec.Z == longest_head_run(prefix)

    def test_deterministic_and_worker_independent(self):
        cfg = SimConfig(seed=9, replicas=12, lengths=[2**8, 2**12])
        a = simulate_statistics(cfg).to_dict()
        assert simulate_statistics(cfg).to_dict() == a
        assert simulate_statistics(cfg, workers=4).to_dict() == a

    def test_bounds_hold(self):
        cfg = SimConfig(seed=3, replicas=100, lengths=[2**k for k in range(10, 17)])
        rep = simulate_statistics(cfg)
        assert all(r.M <= r.N - 1 and r.Z <= r.N for r in rep.records)
        for a in rep.aggregates:
            assert all(math.isfinite(v) for v in (a.mean_ratio, a.min_ratio, a.max_ratio))
            assert 0 <= a.alpha1_hit_rate <= 1 and 0 <= a.alpha2_tail_rate <= 1

    def test_golden_report(self):
        cfg = SimConfig(seed=2024, replicas=4, lengths=[16, 256, 4096])
        got = simulate_statistics(cfg).to_dict()
        assert got == json.loads(GOLDEN.read_text())


class TestEmpirical:
    def test_K1_is_zero(self):
        e = empirical_prob_M_lt(8, 1, 1000, 5)
        assert e.hits == 0 and e.estimate == 0 and e.bounds is None

    def test_preconditions(self):
        with pytest.raises(ConfigError):
            empirical_prob_M_lt(8, 4, 99, 1)
        with pytest.raises(ConfigError):
            empirical_prob_M_lt(7, 4, 1000, 1)

    def test_batched_path_matches_streams(self):
        e = empirical_prob_M_lt(40, 5, 300, 21)
        hits = sum(
            longest_switch_run(BitSequence(replica_bits(21, r, 40))) < 4 for r in range(300)
        )
        assert e.hits == hits

    def test_workers(self):
        a = empirical_prob_M_lt(64, 6, 20_000, 8)
        b = empirical_prob_M_lt(64, 6, 20_000, 8, workers=3)
        assert a == b
        assert a.bounds.variant == "corrected"


class TestCoverage:
    def test_single_replica_rates_are_bernoulli(self):
        cfg = SimConfig(seed=4, replicas=1, lengths=[2**12])
        (row,) = threshold_coverage(cfg)
        for v in (row.alpha1_hit_rate, row.alpha2_tail_rate, row.delta_violation_rate, row.tail_window_rate):
            assert v in (0.0, 1.0)

    def test_needs_length_16(self):
        with pytest.raises(ConfigError):
            threshold_coverage(SimConfig(seed=4, replicas=1, lengths=[8, 32]))

    def test_tail_window_uses_last_symbols(self):
        cfg = SimConfig(seed=12, replicas=50, lengths=[64])
        rows = threshold_coverage(cfg, delta=lambda n: 2.0)
        # tail of 2 alternates with probability 1/2
        expected = sum(
            replica_bits(12, r, 64)[-1] != replica_bits(12, r, 64)[-2] for r in range(50)
        ) / 50
        assert rows[0].tail_window_rate == expected


class TestTrajectory:
    def test_monotone_and_deterministic(self):
        cps = [2**k for k in range(4, 19)]
        t1 = limit_trajectory(42, cps)
        assert [p.M for p in t1] == sorted(p.M for p in t1)
        assert limit_trajectory(42, cps) == t1
        assert limit_trajectory(43, cps) != t1

    def test_budget(self):
        with pytest.raises(BudgetError):
            limit_trajectory(1, [2**29])
        with pytest.raises(ConfigError):
            limit_trajectory(1, [64, 32])
