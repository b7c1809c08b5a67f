"""Spreads from Abelian non-cyclic orbit codes.

Codes are passed around as text in the same format the command-line tool
writes, so files and strings are interchangeable.
"""

import json

from ._spreadforge import (
    SpreadforgeError,
    codes_equal,
    construct,
    header,
    oracle,
    validate_params,
)
from ._spreadforge import classify_json as _classify_json

__all__ = [
    "SpreadforgeError",
    "classify",
    "codes_equal",
    "construct",
    "error_code",
    "header",
    "oracle",
    "validate_params",
]


def classify(text, workers=1):
    """Verification report of a code, as a dict."""
    return json.loads(_classify_json(text, workers))


def error_code(exc):
    """The error code name carried by a SpreadforgeError."""
    return str(exc).split(":", 1)[0]
