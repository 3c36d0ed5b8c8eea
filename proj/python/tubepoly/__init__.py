"""Exact Steiner and Weyl tube polynomials of convex bodies."""

import json

from ._tubepoly import (
    BodyParseError,
    ScalarParseError,
    body_distance,
    canonical_body,
    canonical_scalar,
    classify_json,
    cross_measures,
    find_roots,
    jensen,
    mc_tube_volume,
    report_json,
    series_coeff,
    steiner,
    weyl,
)


def classify(body, weyl=None):
    """Classification report as a dict; weyl is an index such as 2 or "inf"."""
    return json.loads(classify_json(body, None if weyl is None else str(weyl)))


def report(body, bits=128, samples=20000, seed=1):
    return json.loads(report_json(body, bits, samples, seed))


__all__ = [
    "BodyParseError",
    "ScalarParseError",
    "body_distance",
    "canonical_body",
    "canonical_scalar",
    "classify",
    "cross_measures",
    "find_roots",
    "jensen",
    "mc_tube_volume",
    "report",
    "series_coeff",
    "steiner",
    "weyl",
]
