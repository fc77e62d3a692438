"""Profile normalization and the three algebraic h-index methods."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from citemetrics import (
    Method,
    NegativeCitation,
    h_index_counting,
    h_index_oracle,
    h_index_sort_scan,
    normalize_profile,
)
from conftest import A1, EXPECTED_H, FIXTURES, profile, random_profiles

citation_lists = st.lists(st.integers(min_value=0, max_value=10**6), max_size=200)


# ---------------------------------------------------------------------------
# normalize_profile


def test_normalize_keeps_raw_and_sorts_descending():
    p = normalize_profile(A1)
    assert p.raw == tuple(A1)
    assert p.sorted_desc == (10, 9, 8, 8, 7, 5, 4, 3, 2, 1, 1)
    assert p.n == 11


def test_normalize_ascending_input_gives_same_sorted_view():
    ascending = sorted(A1)
    assert normalize_profile(ascending).sorted_desc == normalize_profile(A1).sorted_desc


def test_normalize_empty():
    p = normalize_profile([])
    assert p.raw == () and p.sorted_desc == () and p.n == 0


def test_normalize_rejects_negative_with_position():
    with pytest.raises(NegativeCitation) as exc:
        normalize_profile([3, 1, -2, 5])
    assert exc.value.index == 2
    assert exc.value.value == -2


@given(citation_lists)
def test_normalize_invariants(values):
    p = normalize_profile(values)
    assert sorted(p.raw) == sorted(p.sorted_desc)
    assert all(p.sorted_desc[i] >= p.sorted_desc[i + 1] for i in range(p.n - 1))
    assert p.n == len(p.raw) == len(p.sorted_desc)


# ---------------------------------------------------------------------------
# fixture values for each method


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_sort_scan_fixtures(name):
    result = h_index_sort_scan(profile(FIXTURES[name]))
    assert result.h == EXPECTED_H[name]
    assert result.method is Method.SORT_SCAN


def test_sort_scan_edge_cases():
    assert h_index_sort_scan(profile([])).h == 0
    assert h_index_sort_scan(profile([0, 0, 0])).h == 0


def test_counting_fixtures():
    assert h_index_counting(profile(A1)).h == 5
    # 700 and 600 clamp into bucket n=6 without changing the answer
    assert h_index_counting(profile([700, 600, 8, 7, 7, 6])).h == 6
    assert h_index_counting(profile([1])).h == 1


def test_oracle_fixtures():
    assert h_index_oracle(profile(A1)).h == 5
    # separates >= from strict >: strict would wrongly give 2 here
    assert h_index_oracle(profile([3, 3, 3])).h == 3
    assert h_index_oracle(profile([0])).h == 0


def test_pivot_is_last_counted_paper():
    result = h_index_sort_scan(profile(A1))
    assert result.pivot == 5
    assert h_index_oracle(profile([])).pivot is None
    assert h_index_counting(profile([0, 0])).pivot is None


# ---------------------------------------------------------------------------
# invariants and properties


@given(citation_lists)
def test_methods_agree(values):
    p = normalize_profile(values)
    hs = {h_index_sort_scan(p).h, h_index_counting(p).h, h_index_oracle(p).h}
    assert len(hs) == 1


@given(citation_lists)
def test_upper_bound(values):
    p = normalize_profile(values)
    assert 0 <= h_index_oracle(p).h <= p.n


@given(citation_lists, st.randoms(use_true_random=False))
def test_order_invariance(values, rnd):
    shuffled = list(values)
    rnd.shuffle(shuffled)
    assert h_index_sort_scan(normalize_profile(shuffled)).h == h_index_sort_scan(normalize_profile(values)).h


@given(citation_lists, st.integers(min_value=0, max_value=10**6))
def test_appending_a_paper_never_decreases_h(values, extra):
    before = h_index_oracle(normalize_profile(values)).h
    after = h_index_oracle(normalize_profile(values + [extra])).h
    assert after >= before


@given(st.lists(st.integers(min_value=0, max_value=10**6), min_size=1, max_size=200), st.data())
def test_incrementing_a_citation_never_decreases_h(values, data):
    index = data.draw(st.integers(min_value=0, max_value=len(values) - 1))
    bumped = list(values)
    bumped[index] += 1
    before = h_index_oracle(normalize_profile(values)).h
    after = h_index_oracle(normalize_profile(bumped)).h
    assert after >= before


@given(citation_lists)
def test_clamping_counts_at_n_preserves_h(values):
    n = len(values)
    clamped = [min(c, n) for c in values]
    assert h_index_oracle(normalize_profile(clamped)).h == h_index_oracle(normalize_profile(values)).h


@given(citation_lists)
def test_definition_soundness(values):
    p = normalize_profile(values)
    h = h_index_oracle(p).h
    assert all(p.sorted_desc[i] >= h for i in range(h))
    if h < p.n:
        assert p.sorted_desc[h] < h + 1


@settings(max_examples=30)
@given(citation_lists)
def test_pivot_within_bounds(values):
    p = normalize_profile(values)
    for result in (h_index_sort_scan(p), h_index_counting(p), h_index_oracle(p)):
        if result.h == 0:
            assert result.pivot is None
        else:
            assert 1 <= result.pivot <= p.n


def test_large_counts_are_handled():
    big = 2**31 - 1
    p = profile([big, big, big])
    assert h_index_sort_scan(p).h == 3
    assert h_index_counting(p).h == 3
    assert h_index_oracle(p).h == 3


def test_seeded_sweep_methods_agree():
    # denser pseudo-random coverage than hypothesis defaults
    for _, p in random_profiles(seed=1729, count=2000):
        ho = h_index_oracle(p).h
        assert h_index_sort_scan(p).h == ho
        assert h_index_counting(p).h == ho
