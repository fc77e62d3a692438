"""Citation profiles and the algebraic h-index algorithms.

An author's h-index is the largest h such that at least h of their papers
have h or more citations each. This module holds the validated profile
type plus three interchangeable ways of computing the index:

* sort-and-scan: sort ascending, walk until the papers remaining at the
  current position are all cited at least that many times;
* counting: bucket counts clamped at n (the index can never exceed the
  number of papers), then a linear suffix sweep;
* a deliberately naive definition scan, kept as the ground-truth oracle
  that the other methods (including the geometric one) are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence


class NegativeCitation(ValueError):
    """A citation count below zero is invalid input."""

    def __init__(self, index: int, value: int):
        self.index = index
        self.value = value
        super().__init__(f"citation count at position {index} is negative: {value}")


class Method(Enum):
    """Which algorithm produced an h-index result."""

    SORT_SCAN = "sort_scan"
    COUNTING = "counting"
    ORACLE = "oracle"
    GEOMETRIC = "geometric"


@dataclass(frozen=True)
class CitationProfile:
    """Validated per-paper citation counts for one author.

    ``raw`` preserves the input order for provenance; ``sorted_desc`` is
    the same multiset arranged non-increasingly, which is the form every
    algorithm here works on; ``n`` is the number of papers.
    """

    raw: tuple[int, ...]
    sorted_desc: tuple[int, ...]
    n: int


@dataclass(frozen=True)
class HIndexResult:
    """An h value, the method that computed it, and the pivotal paper.

    ``pivot`` is the 1-based rank (in descending citation order) of the
    last paper counted into h; it is absent when h = 0.
    """

    h: int
    method: Method
    pivot: int | None = None


def normalize_profile(raw: Iterable[int]) -> CitationProfile:
    """Validate citation counts and build a profile.

    Accepts counts in any order; an empty input is a valid profile with
    n = 0. Raises NegativeCitation on the first count below zero.
    """
    values = tuple(raw)
    if values and min(values) < 0:
        bad = next(i for i, v in enumerate(values) if v < 0)
        raise NegativeCitation(bad, values[bad])
    return CitationProfile(
        raw=values,
        sorted_desc=tuple(sorted(values, reverse=True)),
        n=len(values),
    )


def _make_result(h: int, method: Method) -> HIndexResult:
    return HIndexResult(h=h, method=method, pivot=h if h >= 1 else None)


def _h_scan_ascending(ascending: Sequence[int]) -> int:
    """Scan an ascending-sorted citation list for the h threshold.

    At 0-based position i there are n - i papers left, each cited at
    least ascending[i] times; the first position where that remainder is
    covered by the citation count yields h. Exhausting the scan means no
    paper clears its own rank, so h = 0.
    """
    n = len(ascending)
    for i, cited in enumerate(ascending):
        remaining = n - i
        if remaining <= cited:
            return remaining
    return 0


def _h_counting(values: Sequence[int]) -> int:
    """Linear-time h from unsorted counts via clamped bucket counting.

    Counts above n clamp into bucket n, safe because h never exceeds n.
    The suffix sweep finds the largest h with at least h papers cited
    h or more times. No sorting anywhere, so worst-case work is O(n).
    """
    n = len(values)
    counts = [0] * (n + 1)
    for c in values:
        counts[c if c < n else n] += 1
    cumulative = 0
    for h in range(n, -1, -1):
        cumulative += counts[h]
        if cumulative >= h:
            return h
    return 0


def _h_definition_scan(sorted_desc: Sequence[int]) -> int:
    """Ground-truth oracle: test every rank against the definition.

    Deliberately exhaustive (no early exit, no cleverness) so it stays
    independent of the optimized paths it is used to check.
    """
    best = 0
    for rank, cited in enumerate(sorted_desc, start=1):
        if cited >= rank:
            best = rank
    return best


def h_index_sort_scan(profile: CitationProfile) -> HIndexResult:
    """h-index by the sort-and-scan recipe (O(n log n) with the sort)."""
    ascending = profile.sorted_desc[::-1]
    return _make_result(_h_scan_ascending(ascending), Method.SORT_SCAN)


def h_index_counting(profile: CitationProfile) -> HIndexResult:
    """h-index by clamped counting; linear time, needs no sorted view."""
    return _make_result(_h_counting(profile.raw), Method.COUNTING)


def h_index_oracle(profile: CitationProfile) -> HIndexResult:
    """h-index straight from the definition; the reference for tests."""
    return _make_result(_h_definition_scan(profile.sorted_desc), Method.ORACLE)
