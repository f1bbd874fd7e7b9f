"""Exception hierarchy shared across the package."""

from __future__ import annotations


class GroundgateError(Exception):
    """Base class for all package errors."""


class ValidationError(GroundgateError, ValueError):
    """A domain invariant was violated (empty text, bad label, bad ratio, ...)."""


class ParseError(GroundgateError, ValueError):
    """A source dataset record could not be ingested."""


class CorpusFormatError(GroundgateError, ValueError):
    """A canonical corpus file is malformed; carries the offending line number."""

    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class UnclassifiableInput(GroundgateError, ValueError):
    """The query alone exceeds the classifier's token budget."""


class TransportError(GroundgateError):
    """A remote call failed at the transport level (timeout, connection). Retriable."""


class ProtocolError(GroundgateError):
    """A remote peer answered, but the payload violates the wire contract."""


class ClassifierUnavailable(GroundgateError):
    """Classification failed, so the gate fails closed: no downstream call."""


class DownstreamError(GroundgateError):
    """The downstream answer endpoint failed for a request already classified grounded.

    The groundedness verdict is attached so callers can still surface it.
    """

    def __init__(self, message: str, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class SweepAborted(GroundgateError):
    """A judge sweep stopped early; the response log holds all completed calls."""

    def __init__(self, message: str, completed: int = 0):
        super().__init__(message)
        self.completed = completed


class ExportParityError(GroundgateError):
    """An exported model disagreed with its native counterpart beyond tolerance."""
