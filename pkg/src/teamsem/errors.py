"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class TeamsemError(Exception):
    """Base class for all errors raised by teamsem."""


class FragmentError(TeamsemError):
    """A formula uses a construct outside the fragment an operation accepts."""


class DomainError(TeamsemError):
    """Variable sets do not fit the operation (wrong domain, missing variable)."""


class DomainMismatch(DomainError):
    """Two teams or lower sets that must share a domain do not."""


class BoundExceeded(TeamsemError):
    """An exhaustive search would exceed a configured limit."""

    def __init__(self, what: str, count: int, bound: int) -> None:
        super().__init__(f"{what}: {count} exceeds configured bound {bound}")
        self.what = what
        self.count = count
        self.bound = bound


class MissingValue(TeamsemError):
    """A choice function is undefined on some member of a team."""


class NotASentence(TeamsemError):
    """A formula with free variables was given where a sentence is required."""


class UnboundName(TeamsemError):
    """A term names neither a variable in context nor a declared constant."""


class NoWitness(TeamsemError):
    """Two formulas cannot be separated: the first denotation is included in the second."""


class StructureError(TeamsemError):
    """Malformed structure or team document."""
