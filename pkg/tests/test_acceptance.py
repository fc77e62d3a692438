"""Acceptance suite: every criterion at its stated tolerance.

Run with -s to see one [PASS] line per criterion; a failed assertion is
the corresponding [FAIL]. Stated runtime budgets are asserted inside the
tests themselves.
"""

import json
import subprocess
import sys
import time
import xml.etree.ElementTree as ET

import pytest

from citemetrics import (
    Method,
    build_report,
    emit_report,
    format_benchmark_report,
    geometric_h_index,
    h_index_counting,
    h_index_oracle,
    h_index_sort_scan,
    intersect_with_identity,
    estimate_h_via_trendline,
    normalize_profile,
    run_benchmark,
    scaling_exponents,
    vertical_distances,
)
from conftest import A1_CSV, EXPECTED_H, FIXTURES, profile, random_profiles


def _passed(name: str):
    print(f"\n[PASS] {name}", flush=True)


def test_five_case_fixture_suite():
    """h for a1..a5 by all four methods: exactly 5, 3, 2, 3, 6."""
    start = time.perf_counter()
    for name, values in FIXTURES.items():
        p = profile(values)
        expected = EXPECTED_H[name]
        assert h_index_sort_scan(p).h == expected, name
        assert h_index_counting(p).h == expected, name
        assert h_index_oracle(p).h == expected, name
        assert geometric_h_index(p)[0].h == expected, name
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    _passed(f"five-case fixture suite: 5,3,2,3,6 by all four methods ({elapsed:.2f}s)")


def test_trendline_reproduction_a1():
    """a1 fit: slope -0.98182 +-1e-4, intercept 11.1636 +-1e-3, x* 5.633 +-1e-3."""
    start = time.perf_counter()
    estimate, fit = estimate_h_via_trendline(profile(FIXTURES["a1"]))
    assert fit.slope == pytest.approx(-0.98182, abs=1e-4)
    assert fit.intercept == pytest.approx(11.1636, abs=1e-3)
    crossing = intersect_with_identity(fit)
    assert crossing.x == pytest.approx(5.633, abs=1e-3)
    assert estimate == 5
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    _passed(
        f"trendline reproduction: slope {fit.slope:.5f}, intercept {fit.intercept:.4f}, "
        f"x* {crossing.x:.4f}, floor 5 ({elapsed:.2f}s)"
    )


def test_distance_tables():
    """Exact distance tables for a2 and a4; both give h = 3 via iii.b."""
    a2 = profile(FIXTURES["a2"])
    a4 = profile(FIXTURES["a4"])
    assert vertical_distances(a2) == [9, 7, 4, 1, 3, 5, 6]
    assert vertical_distances(a4) == [399, 298, 197, 2]
    for p, expected_min in ((a2, 1), (a4, 2)):
        result, trace = geometric_h_index(p)
        assert min(trace.distances) == expected_min
        assert trace.argmin_index == 4
        assert trace.postulate == "iii.b"
        assert result.h == 3
    _passed("distance tables: a2 [9,7,4,1,3,5,6] and a4 [399,298,197,2], minima at journal 4, h=3 via iii.b")


def test_oracle_equivalence_property():
    """10^4 pseudo-random profiles: every method agrees with the oracle."""
    start = time.perf_counter()
    count = 0
    for _, p in random_profiles(seed=20260810, count=10_000, max_n=200, max_citation=10**6):
        expected = h_index_oracle(p).h
        assert h_index_sort_scan(p).h == expected
        assert h_index_counting(p).h == expected
        assert geometric_h_index(p)[0].h == expected
        count += 1
    elapsed = time.perf_counter() - start
    assert count == 10_000
    assert elapsed < 30.0
    _passed(f"oracle equivalence: {count} random profiles, all methods agree ({elapsed:.1f}s)")


def test_invariant_suite():
    """Bound, permutation invariance, increment monotonicity, clamp safety."""
    cases = 0
    for values, p in random_profiles(seed=1105, count=1_000, max_n=120, max_citation=10**6):
        h = h_index_oracle(p).h
        assert 0 <= h <= p.n

        reversed_values = values[::-1]
        assert h_index_oracle(normalize_profile(reversed_values)).h == h
        interleaved = values[0::2] + values[1::2]
        assert h_index_oracle(normalize_profile(interleaved)).h == h

        if values:
            bumped = list(values)
            bumped[len(bumped) // 2] += 1
            assert h_index_oracle(normalize_profile(bumped)).h >= h

        clamped = [min(c, p.n) for c in values]
        assert h_index_oracle(normalize_profile(clamped)).h == h
        cases += 1
    assert cases == 1_000
    _passed(f"invariant suite: bound, permutation, monotonicity, clamp over {cases} cases")


def test_benchmark_sanity():
    """Counting method scales with exponent in [0.7, 1.3] over 1e4..1e6."""
    start = time.perf_counter()
    rows = run_benchmark([10**4, 10**5, 10**6], [Method.COUNTING, Method.SORT_SCAN], seed=11, runs=5)
    report = format_benchmark_report(rows)
    assert "counting" in report
    exponents = scaling_exponents(rows)
    counting = exponents[Method.COUNTING]
    assert 0.7 <= counting <= 1.3
    sort_scan = exponents[Method.SORT_SCAN]
    assert 1.0 <= sort_scan <= 1.4
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0
    _passed(
        f"benchmark sanity: counting exponent {counting:.3f} in [0.7, 1.3], "
        f"sort-scan {sort_scan:.3f} in [1.0, 1.4] ({elapsed:.1f}s)"
    )


def test_cli_end_to_end(tmp_path):
    """compute emits h=5/agreement on a1 CSV; plot is deterministic SVG; bad CSV exits 1."""

    def cli(*args):
        return subprocess.run(
            [sys.executable, "-m", "citemetrics", *args], capture_output=True, text=True
        )

    a1_path = tmp_path / "a1.csv"
    a1_path.write_bytes(A1_CSV)

    proc = cli("compute", "--input", str(a1_path), "--format", "csv", "--output", "json")
    assert proc.returncode == 0, proc.stderr
    payload = json.loads(proc.stdout)
    assert payload["h"] == 5
    assert payload["agreement"] is True

    svg_a = tmp_path / "a.svg"
    svg_b = tmp_path / "b.svg"
    for out in (svg_a, svg_b):
        proc = cli("plot", "--input", str(a1_path), "--output", str(out))
        assert proc.returncode == 0, proc.stderr
    assert svg_a.read_bytes() == svg_b.read_bytes()
    root = ET.fromstring(svg_a.read_text())
    assert root.tag.endswith("svg")

    bad_path = tmp_path / "bad.csv"
    bad_path.write_bytes(b"10\nbanana\n")
    proc = cli("compute", "--input", str(bad_path))
    assert proc.returncode == 1

    _passed("CLI end-to-end: compute h=5 agreement, deterministic valid SVG plot, malformed CSV exits 1")


def test_report_surfaces_are_exercised():
    """Both report formats render every fixture without error."""
    for values in FIXTURES.values():
        report = build_report(profile(values))
        assert emit_report(report, "json")
        assert emit_report(report, "text")
        assert report.agreement
    _passed("report emission: JSON and text render all fixtures, agreement holds")
