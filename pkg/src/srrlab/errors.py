"""Exception hierarchy shared by every srrlab module."""

from __future__ import annotations


class SrrError(Exception):
    """Base class for all srrlab errors."""


class CapExceeded(SrrError):
    """An enumeration would exceed a configured cap."""

    def __init__(self, what: str, needed: int, cap: int, name: str = ""):
        self.what = what
        self.needed = needed
        self.cap = cap
        self.name = name
        label = f" ({name})" if name else ""
        super().__init__(f"{what} too large: needs {needed} > cap {cap}{label}")


class RankDeficientError(SrrError):
    """A generator matrix does not have full row rank."""

    def __init__(self, row: int):
        self.row = row
        super().__init__(f"generator not full rank: row {row} is dependent on earlier rows")


class ParseError(SrrError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class InvariantViolation(SrrError):
    """A computed object failed one of its own consistency checks."""
