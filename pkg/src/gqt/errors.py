"""Typed errors; the CLI maps each class onto a distinct exit code."""

from __future__ import annotations


class GqtError(Exception):
    """Base class for all package errors."""


class InputError(GqtError):
    """Malformed input: bad flags, files, descriptors, or dimensions (exit 1)."""


class UnsupportedRegimeError(InputError):
    """Operation requested for a spec regime that has no such construction."""


class ValidityError(GqtError):
    """A validity check failed (exit 2).  Carries the offending report."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class NotUnitaryError(GqtError):
    """A dense matrix failed its unitarity invariant (exit 2)."""


class CapExceededError(GqtError):
    """A configured size cap would be exceeded (exit 3)."""
