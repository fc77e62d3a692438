"""citemetrics: compute, draw, and benchmark the h-index.

Three independent algebraic routes (sort-and-scan, linear counting, and a
brute-force definition oracle) plus a Cartesian-geometric determination,
cross-validated against each other, with CSV/JSON ingestion, report and
SVG emission, and a scaling benchmark harness.
"""

from .cli_io import (
    BenchmarkRow,
    DuplicatePaperId,
    InvalidSize,
    MetricsReport,
    ParseError,
    ProfileSummary,
    UnknownMethod,
    build_report,
    emit_citations_json,
    emit_plot_svg,
    emit_report,
    format_benchmark_report,
    generate_citations,
    main,
    parse_citations,
    report_to_dict,
    run_benchmark,
    scaling_exponents,
)
from .core import (
    CitationProfile,
    HIndexResult,
    Method,
    NegativeCitation,
    h_index_counting,
    h_index_oracle,
    h_index_sort_scan,
    normalize_profile,
)
from .geometry import (
    CoincidentLines,
    DegenerateFit,
    EmptyProfile,
    GeometricCase,
    GeometricTrace,
    LineFit,
    NotApplicable,
    ParallelLines,
    Point2,
    citation_points,
    classify_profile,
    estimate_h_via_trendline,
    euclidean_distance,
    fit_trendline,
    geometric_h_index,
    intersect_with_identity,
    trendline_applicable,
    vertical_distances,
)

__version__ = "0.1.0"

__all__ = [
    "BenchmarkRow",
    "CitationProfile",
    "CoincidentLines",
    "DegenerateFit",
    "DuplicatePaperId",
    "EmptyProfile",
    "GeometricCase",
    "GeometricTrace",
    "HIndexResult",
    "InvalidSize",
    "LineFit",
    "Method",
    "MetricsReport",
    "NegativeCitation",
    "NotApplicable",
    "ParallelLines",
    "ParseError",
    "Point2",
    "ProfileSummary",
    "UnknownMethod",
    "build_report",
    "citation_points",
    "classify_profile",
    "emit_citations_json",
    "emit_plot_svg",
    "emit_report",
    "estimate_h_via_trendline",
    "euclidean_distance",
    "fit_trendline",
    "format_benchmark_report",
    "generate_citations",
    "geometric_h_index",
    "h_index_counting",
    "h_index_oracle",
    "h_index_sort_scan",
    "intersect_with_identity",
    "main",
    "normalize_profile",
    "parse_citations",
    "report_to_dict",
    "run_benchmark",
    "scaling_exponents",
    "trendline_applicable",
    "vertical_distances",
]
