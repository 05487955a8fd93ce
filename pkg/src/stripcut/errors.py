"""Error type carrying a stable machine-readable code."""

from __future__ import annotations


class StripcutError(Exception):
    """Raised for malformed input or failed validation.

    ``code`` is a stable identifier (e.g. SIMPLICITY_VIOLATION); ``kind``
    distinguishes malformed input ("format") from geometric/structural
    validation failures ("validation") for exit-code mapping.
    """

    def __init__(self, code: str, message: str, kind: str = "validation"):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.kind = kind


def format_error(code: str, message: str) -> StripcutError:
    return StripcutError(code, message, kind="format")
