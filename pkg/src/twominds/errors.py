"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class GameError(Exception):
    """Base class for every error raised by twominds."""


class InvalidArgumentError(GameError, ValueError):
    """An argument does not fit the game it is used with."""


class UnsupportedConfigurationError(GameError):
    """A well-formed request the built-in machinery cannot handle."""


class SpecParseError(GameError):
    """A spec or export document failed to parse or validate.

    ``field`` is a dotted path into the document when the problem can be
    pinned to one location, ``line`` the 1-based source line for syntax
    errors.
    """

    def __init__(self, message: str, *, field: str | None = None, line: int | None = None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field '{field}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
