"""Exact effectiveness scoring and measurement-scale analysis for ranked
retrieval: SERP enumeration, the non-inferiority partial order, metric
consistency audits, distinct-score sets and intervalization."""

from ._core import (
    ExactValue,
    GainMap,
    GradeCensus,
    Intervalizer,
    MetricSpec,
    Serp,
    SerpUniverse,
    SerpscaleError,
    audit_metric,
    build_intervalizer,
    distinct_scores,
    equispacing_check,
    evaluate_files,
    gain_vector,
    hasse_dot,
    rule1_non_inferior,
    rule2_non_inferior,
    score,
)

__version__ = "0.1.0"

__all__ = [
    "ExactValue",
    "GainMap",
    "GradeCensus",
    "Intervalizer",
    "MetricSpec",
    "Serp",
    "SerpUniverse",
    "SerpscaleError",
    "audit_metric",
    "build_intervalizer",
    "distinct_scores",
    "equispacing_check",
    "evaluate_files",
    "gain_vector",
    "hasse_dot",
    "rule1_non_inferior",
    "rule2_non_inferior",
    "score",
]
