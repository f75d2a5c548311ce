from fractions import Fraction

import pytest

from switchruns import exact, oracle
from switchruns.errors import BudgetError, RangeError

from .conftest import all_strings, brute_M


def test_enumerate_examples():
    assert oracle.enumerate_pmf(4, "M").counts == (2, 8, 4, 2)
    assert oracle.enumerate_pmf(3, "Z").counts == (1, 4, 2, 1)
    assert oracle.enumerate_pmf(1, "M").counts == (2,)


def test_enumerate_against_itertools(brute_pmfs):
    for N in range(1, 11):
        assert oracle.enumerate_pmf(N, "M").counts == brute_pmfs[("M", N)]
        assert oracle.enumerate_pmf(N, "Z").counts == brute_pmfs[("Z", N)]


def test_budget():
    with pytest.raises(BudgetError):
        oracle.enumerate_pmf(25, "M")


@pytest.mark.parametrize("workers", [1, 3, 8])
def test_partition_independent(workers):
    ref = oracle.enumerate_pmf(14, "M").counts
    assert oracle.enumerate_pmf(14, "M", workers=workers).counts == ref


def test_arbitrary_split_sums():
    N = 12
    cuts = [0, 1, 100, 1234, 2048, 4000, 4096]
    parts = [oracle.enumerate_counts(N, "Z", a, b) for a, b in zip(cuts, cuts[1:])]
    assert tuple(int(x) for x in sum(parts)) == oracle.enumerate_pmf(N, "Z").counts


def test_published_tables():
    reports = oracle.verify_paper_tables()
    assert len(reports) == 8
    assert all(r.match for r in reports)
    by_key = {(r.N, r.statistic): r for r in reports}
    assert by_key[(5, "M")].expected == (2, 14, 10, 4, 2)
    assert by_key[(2, "Z")].expected == (1, 2, 1)
    assert by_key[(4, "Z")].expected == (1, 7, 5, 2, 1)


def test_table_mismatch_reported_not_raised():
    r = oracle.TableReport(4, "M", (2, 8, 4, 2), (2, 8, 5, 1))
    assert not r.match


class TestWindowProbability:
    def test_K2(self):
        r = oracle.verify_lemma41(2)
        assert r.exact == Fraction(14, 16)
        assert r.paper == 1 and not r.paper_equal
        assert r.corrected_equal

    def test_K3(self):
        r = oracle.verify_lemma41(3)
        assert r.exact == Fraction(19, 32) and r.corrected_equal

    def test_K5(self):
        r = oracle.verify_lemma41(5)
        assert r.exact == Fraction(7, 32) - Fraction(1, 512) == Fraction(111, 512)
        assert r.corrected_equal

    def test_bit_trick_matches_scanner(self):
        # windowed bit test used by the correlation check agrees with the scanner
        for K in (2, 3, 4, 5):
            hits = int(oracle._alternating_windows(2 * K, K).any(axis=0).sum())
            assert Fraction(hits, 4**K) == oracle.verify_lemma41(K).exact

    def test_budget(self):
        with pytest.raises(BudgetError):
            oracle.verify_lemma41(13)


def _brute_correlation(N, K):
    """Direct event construction over itertools strings, independent of the numpy path."""
    L = (N - 2 * K) // K

    def alt(s, j):  # window j+1 .. j+K
        w = s[j : j + K]
        return all(a != b for a, b in zip(w, w[1:]))

    n0 = n1 = n01 = 0
    for s in all_strings(N):
        C = [any(alt(s, j) for j in range(l * K, (l + 1) * K + 1)) for l in range(L + 1)]
        d0 = any(C[0::2])
        d1 = any(C[1::2])
        n0 += d0
        n1 += d1
        n01 += d0 and d1
    T = 2**N
    return Fraction(n01, T), Fraction(n0 * n1, T * T)


class TestCorrelation:
    @pytest.mark.parametrize("N,K", [(8, 3), (12, 4), (9, 2), (13, 3), (14, 2)])
    def test_against_direct_construction(self, N, K):
        r = oracle.verify_correlation_inequality(N, K)
        assert (r.p_joint, r.p_product) == _brute_correlation(N, K)
        assert r.holds

    def test_degenerate_2K(self):
        r = oracle.verify_correlation_inequality(8, 4)
        assert r.p_d1 == 0 and r.p_joint == 0 and r.p_product == 0
        assert r.holds

    def test_D0_is_contained_in_long_run_event(self):
        # D0 implies M_N >= K-1, so P(M_N < K-1) <= P(not D0)
        r = oracle.verify_correlation_inequality(15, 3)
        assert 1 - r.p_d0 >= exact.prob_M_lt(15, 3)

    def test_preconditions(self):
        with pytest.raises(RangeError):
            oracle.verify_correlation_inequality(7, 4)
        with pytest.raises(RangeError):
            oracle.verify_correlation_inequality(8, 1)
        with pytest.raises(BudgetError):
            oracle.verify_correlation_inequality(26, 4)


def test_brute_M_sanity():
    assert brute_M((0, 1, 0, 1)) == 3
