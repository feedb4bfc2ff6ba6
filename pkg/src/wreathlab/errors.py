"""Exception hierarchy shared by every module.

The CLI maps these onto exit statuses: DomainError -> 1,
ResourceCapError -> 2, InvariantError -> 3.
"""


class WreathlabError(Exception):
    """Base class for all errors raised by wreathlab."""


class DomainError(WreathlabError, ValueError):
    """An input violates a documented precondition."""


class ParseError(DomainError):
    """A JSON document does not match the expected schema."""


class ResourceCapError(WreathlabError):
    """An enumeration exceeded its configured cap."""


class InvariantError(WreathlabError, AssertionError):
    """An internal invariant failed. Indicates a bug, never bad input."""
