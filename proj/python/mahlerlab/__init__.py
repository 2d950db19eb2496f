"""Mahler measures of integer polynomials: certified roots, inequality
checks against the measure, and searches for small measures.

Coefficient lists are ascending, a_0 first.
"""

import json as _json

from ._core import (
    CorpusParseError,
    MeasureMethod,
    MeasureResult,
    NumericError,
    SearchSizeError,
    classify_etheta,
    constants,
    cyclotomic,
    cyclotomic_factor,
    mahler_graeffe,
    mahler_measure,
    norms,
    parse_corpus,
    report_json,
    roots,
    search,
    verify,
)

__version__ = "0.1.0"


def analyze(text, precision=128, theta=1.3, bounds=False, descending=False):
    """Report for every polynomial of a corpus, as parsed JSON."""
    return _json.loads(report_json(text, precision, theta, bounds, descending))


__all__ = [
    "CorpusParseError",
    "MeasureMethod",
    "MeasureResult",
    "NumericError",
    "SearchSizeError",
    "analyze",
    "classify_etheta",
    "constants",
    "cyclotomic",
    "cyclotomic_factor",
    "mahler_graeffe",
    "mahler_measure",
    "norms",
    "parse_corpus",
    "report_json",
    "roots",
    "search",
    "verify",
]
