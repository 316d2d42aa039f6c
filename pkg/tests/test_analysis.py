import numpy as np
import pytest

from seqcomp import analysis, seeds
from seqcomp.constructions import Theorem2Params, build_zccs_theorem2, mocss_theorem5
from seqcomp.correlation import classify


def test_feng_examples():
    v = analysis.feng_bound(9, 3, 27, 9)
    assert v.feng_rhs == 9 and v.feng_optimal and v.suehiro_ok is False
    v = analysis.feng_bound(2, 4, 11, 11)
    assert v.feng_rhs == 4 and v.suehiro_ok and not v.feng_optimal
    assert v.as_dict()["feng_rhs"] == 4
    with pytest.raises(ValueError):
        analysis.feng_bound(2, 2, 4, 0)


@pytest.mark.parametrize("q, m, v", [(2, 3, 1), (3, 3, 2), (4, 2, 1), (5, 3, 1)])
def test_theorem2_parameters_are_optimal(q, m, v):
    verdict = analysis.feng_bound(q ** (v + 1), q, q**m, q ** (m - v))
    assert verdict.feng_rhs == q ** (v + 1)
    assert verdict.feng_optimal


def test_full_zone_is_judged_by_suehiro_bound():
    # v = 0 gives Z = L: M = N meets M <= N, and "optimal ZCCS" is not reported
    verdict = analysis.feng_bound(5, 5, 125, 125)
    assert verdict.suehiro_ok and verdict.feng_rhs == 5 and not verdict.feng_optimal


def test_lengths_include_new_ones():
    lengths = analysis.enumerate_theorem5_lengths(40)
    assert 11 in lengths and 27 in lengths
    assert lengths == sorted(set(lengths))
    assert analysis.enumerate_theorem5_lengths(2) == [2]
    with pytest.raises(ValueError):
        analysis.enumerate_theorem5_lengths(1)


def test_comparison_flags_discrepancies():
    entries = {e.length: e for e in analysis.compare_with_printed(40)}
    assert set(analysis.PRINTED_TABLE3_LENGTHS) <= set(entries)
    flagged = {L: e.status for L, e in entries.items() if e.status != "verified-here"}
    assert flagged == {2: "extra-here", 7: "unverified-here", 30: "extra-here"}
    assert entries[11].witness == (1, 10)
    assert entries[27].witness == (1, 26)


def test_witnesses_sum_to_length():
    for L, (a, b) in analysis.theorem5_witnesses(40).items():
        assert a + b == L and seeds.is_catalog_length(a) and seeds.is_catalog_length(b)


def test_bounds_hold_on_generated_families():
    rng = np.random.default_rng(21)
    families = [mocss_theorem5(seeds.binary_ccc(a), seeds.binary_ccc(b)) for a, b in [(1, 2), (2, 10)]]
    for q, m, v in [(2, 2, 1), (3, 2, 0), (3, 3, 1), (4, 2, 1)]:
        units = [a for a in range(1, q) if np.gcd(a, q) == 1]
        pi = tuple(int(p) for p in rng.permutation(m - v) + 1)
        families.append(
            build_zccs_theorem2(Theorem2Params(q, m, v, int(rng.choice(units)), 1, pi))
        )
    for F in families:
        r = classify(F)
        assert r.zcz_width >= 1
        verdict = analysis.feng_bound(r.m, r.n, r.length, r.zcz_width)
        assert r.m <= verdict.feng_rhs
        if r.is_mocss:
            assert verdict.suehiro_ok
