import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from seqcomp import reproduce
from seqcomp.core import CyclotomicSum, ResidueSequence, SequenceSet, SetFamily, cyc_conjugate, cyc_to_complex
from seqcomp.correlation import (
    _profile_counts_direct,
    accf,
    classify,
    correlation_profile,
    engine_audit,
    even_shift_orthogonal,
    first_violation,
    is_ccc,
    is_css,
    is_escss,
    is_mocss,
    is_zccs,
    pair_counts,
    profile_counts,
    set_accf,
    set_correlation_profile,
    zcz_width,
    zero_mask,
)
from seqcomp.errors import AlphabetMismatchError, DimensionMismatchError

from oracle import accf_complex, is_css_brute, set_accf_complex, zcz_width_brute


def seq(q, *elems):
    return ResidueSequence(q, elems)


@st.composite
def sequence_pairs(draw, max_q=8, max_len=32):
    q = draw(st.integers(2, max_q))
    L = draw(st.integers(1, max_len))
    elems = st.lists(st.integers(0, q - 1), min_size=L, max_size=L)
    return ResidueSequence(q, tuple(draw(elems))), ResidueSequence(q, tuple(draw(elems)))


def test_accf_examples():
    assert accf(seq(2, 0, 0), seq(2, 0, 0), 1) == CyclotomicSum(2, (1, 0))
    assert accf(seq(2, 0, 1), seq(2, 0, 0), 0) == CyclotomicSum(2, (1, 1))
    a = seq(5, 3, 1, 4, 1, 0)
    assert accf(a, a, 0).counts == (5, 0, 0, 0, 0)


def test_accf_out_of_range_and_errors():
    a = seq(3, 0, 1, 2)
    assert accf(a, a, 3) == CyclotomicSum.zero(3)
    assert accf(a, a, -7) == CyclotomicSum.zero(3)
    with pytest.raises(AlphabetMismatchError):
        accf(a, seq(4, 0, 1, 2), 0)
    with pytest.raises(DimensionMismatchError):
        accf(a, seq(3, 0, 1), 0)


@settings(max_examples=200)
@given(sequence_pairs(), st.data())
def test_accf_matches_complex_oracle(pair, data):
    a, b = pair
    tau = data.draw(st.integers(-(len(a) - 1), len(a) - 1))
    re, im = cyc_to_complex(accf(a, b, tau))
    assert complex(re, im) == pytest.approx(accf_complex(a.elems, b.elems, tau, a.q), abs=1e-9)


@settings(max_examples=200)
@given(sequence_pairs(), st.data())
def test_conjugate_symmetry(pair, data):
    a, b = pair
    tau = data.draw(st.integers(-(len(a) - 1), len(a) - 1))
    assert accf(b, a, -tau) == cyc_conjugate(accf(a, b, tau))


@given(sequence_pairs())
def test_profile_swapped_equals_direct(pair):
    a, b = pair
    assert correlation_profile(a, b).swapped().values == correlation_profile(b, a).values


def test_fft_profile_matches_direct_counts():
    rng = np.random.default_rng(1)
    for q, N, L in [(2, 2, 1), (3, 3, 9), (5, 4, 31), (8, 2, 64), (7, 5, 100)]:
        x = rng.integers(0, q, size=(N, L))
        y = rng.integers(0, q, size=(N, L))
        assert np.array_equal(profile_counts(x, y, q), _profile_counts_direct(x, y, q))


def test_pair_counts_match_set_accf():
    rng = np.random.default_rng(2)
    F = SetFamily.from_array(4, rng.integers(0, 4, size=(3, 2, 7)))
    for tau in range(-6, 7):
        got = pair_counts(F.array, tau, 4)
        for i in range(3):
            for j in range(3):
                assert tuple(got[i, j]) == set_accf(F[i], F[j], tau).counts


def test_set_accf_energy_and_table1_examples():
    F = reproduce.table1_family()
    S0, S1 = F[0], F[1]
    assert set_accf(S0, S0, 0).counts == (81, 0, 0)
    assert set_accf(S0, S0, 3).is_zero()
    assert set_accf(S0, S1, 0).is_zero()
    with pytest.raises(DimensionMismatchError):
        set_accf(S0, SequenceSet(3, (S0[0],)), 0)


@given(sequence_pairs(max_len=16))
def test_set_energy_is_n_times_l(pair):
    A = SequenceSet(pair[0].q, pair)
    assert set_accf(A, A, 0).counts[0] == 2 * len(pair[0])
    assert sum(set_accf(A, A, 0).counts) == 2 * len(pair[0])


def test_is_css_examples():
    assert is_css(SequenceSet(2, ((0, 0), (0, 1))))
    assert is_css(reproduce.example2_set())
    assert not is_css(SequenceSet(2, ((0, 0), (0, 0))))


def test_is_escss_examples():
    assert is_escss(SequenceSet(2, ((0, 0), (0, 1))))
    assert not is_escss(SequenceSet(2, ((0, 0, 0),)))
    # odd-shift failures do not matter: (0,0,1) has R(1)=0 but R(2)=-1
    assert not is_escss(SequenceSet(2, ((0, 0, 1),)))
    assert is_escss(SequenceSet(2, ((0, 0),)))  # only shift 1 exists


def test_css_agrees_with_brute_force():
    rng = np.random.default_rng(3)
    for _ in range(40):
        q, N, L = int(rng.integers(2, 6)), int(rng.integers(1, 4)), int(rng.integers(1, 7))
        rows = rng.integers(0, q, size=(N, L)).tolist()
        assert is_css(SequenceSet.from_array(q, rows)) == is_css_brute(rows, q)


def test_zcz_width_examples():
    F = reproduce.table1_family()
    assert zcz_width(F) == 9
    bad = SetFamily.from_array(2, [[[0, 0]], [[0, 0]]])
    assert zcz_width(bad) == 0


def test_zcz_width_agrees_with_brute_force():
    rng = np.random.default_rng(4)
    seen = set()
    for _ in range(60):
        q = int(rng.integers(2, 5))
        M, N, L = (int(v) for v in rng.integers(1, 4, size=3))
        sets = rng.integers(0, q, size=(M, N, L)).tolist()
        z = zcz_width(SetFamily.from_array(q, sets))
        assert z == zcz_width_brute(sets, q)
        seen.add(z)
    assert 0 in seen


def test_first_violation_locates_table1_zone_edge():
    F = reproduce.table1_family()
    assert first_violation(F, 9) is None
    v = first_violation(F, 10)
    assert v.tau == 9
    exact = set_accf_complex(F[v.i].tolist(), F[v.j].tolist(), 9, 3)
    assert abs(exact) > 1e-9
    assert is_zccs(F, 9) and not is_zccs(F, 10) and not is_zccs(F, 0)


def test_classify_examples():
    r = classify(reproduce.table1_family())
    assert (r.zcz_width, r.is_mocss, r.feng_optimal) == (9, False, True)
    assert r.role == "zccs"

    single = classify(SetFamily.from_array(2, [[[0]]]))
    assert single.is_ccc and single.is_mocss and single.zcz_width == 1


def test_classify_invariants_on_random_families():
    rng = np.random.default_rng(5)
    for _ in range(30):
        q = int(rng.integers(2, 5))
        F = SetFamily.from_array(q, rng.integers(0, q, size=(2, 2, int(rng.integers(1, 5)))))
        r = classify(F)
        assert not r.is_ccc or r.is_mocss
        assert not r.is_mocss or r.zcz_width == r.length
        assert r.is_mocss == is_mocss(F)
        assert r.is_ccc == is_ccc(F)


def test_even_shift_orthogonal():
    A = SequenceSet(2, ((0, 0),))
    B = SequenceSet(2, ((0, 1),))
    # R_{A,B}(0) = 1 + (-1) = 0; only shift 0 is even and in range
    assert even_shift_orthogonal(A, B)
    assert not even_shift_orthogonal(A, A)


def test_debug_mode_checks_negative_shifts(monkeypatch):
    monkeypatch.setenv("SEQCOMP_DEBUG", "1")
    assert zcz_width(reproduce.table1_family()) == 9


def test_engines_and_audit(monkeypatch):
    F = reproduce.table1_family()
    assert zcz_width(F, engine="float") == zcz_width(F, engine="exact") == 9
    monkeypatch.setenv("SEQCOMP_ENGINE", "both")
    with engine_audit() as audit:
        assert zcz_width(F) == 9
    assert audit.compared > 0 and audit.disagreements == 0
    with pytest.raises(ValueError):
        zero_mask(np.zeros((1, 3), dtype=int), 3, engine="nope")


def test_set_correlation_profile_shape():
    A = reproduce.example2_set()
    prof = set_correlation_profile(A, A)
    assert prof.max_shift == 24
    assert prof.nonzero_shifts() == [0]
    assert prof[0].counts[0] == 125
