"""Exception types shared across the package."""

from __future__ import annotations


class StarGenusError(Exception):
    """Base class for all errors raised by this package."""


class StgParseError(StarGenusError):
    """Malformed .stg text. Carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class InvalidGraphError(StarGenusError):
    """A graph failed structural validation. Carries the violation list."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations) if violations else "invalid graph")
        self.violations = list(violations)


class NotSourceSinkError(StarGenusError):
    """The graph admits no source-sink orientation, so the pipeline stops."""


class OracleCapExceeded(StarGenusError):
    """Brute-force enumeration refused: vertex count above the configured cap."""


class InvariantViolation(StarGenusError):
    """An internal invariant that should be unreachable was broken."""
