"""Exception types shared across the analyzer."""

from __future__ import annotations


class AnalyzerError(Exception):
    """Base class for all errors raised by this package."""


class FeatureError(AnalyzerError):
    """A morphological feature string or bag violates the feature schema."""


class FormatError(AnalyzerError):
    """Input is not well-formed JSON.

    ``byte_offset`` locates the first offending byte in the UTF-8 stream.
    """

    def __init__(self, message: str, byte_offset: int | None = None):
        super().__init__(message)
        self.byte_offset = byte_offset


class ValidationError(AnalyzerError):
    """A record violates the entry/annotation schema.

    ``violations`` holds the individual field-level problems.
    """

    def __init__(self, message: str, violations: list | None = None):
        super().__init__(message)
        self.violations = violations or []


class DuplicateEntryError(AnalyzerError):
    """Two lexicon records share a case-folded surface form."""

    def __init__(self, first: str, second: str):
        super().__init__(
            f"duplicate lexicon surface: {second!r} collides with {first!r} "
            "after case folding"
        )
        self.first = first
        self.second = second


class TableError(AnalyzerError):
    """A rule-table file violates the table invariants."""


class AlignmentError(AnalyzerError):
    """System and gold annotations do not line up token for token."""
