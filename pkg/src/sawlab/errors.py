"""Exception hierarchy.

Everything raised on purpose by this package derives from SawlabError, so
callers can catch one type at the CLI boundary and map it to an exit code.
"""

from __future__ import annotations


class SawlabError(Exception):
    """Base class for all package errors."""


class DomainError(SawlabError):
    """A point or interval lies outside the map's domain [0, 1]."""


class ConstraintViolation(SawlabError):
    """Input data violates a structural constraint (shape, heights, config)."""


class StructureError(SawlabError):
    """Internal structure is inconsistent (bad breakpoints, bad partition)."""


class BudgetExceeded(SawlabError):
    """A computation hit its resource budget before finishing.

    kind:   which budget ("pieces", "steps", "partition", "frontier", "depth")
    limit:  the budget that was in force
    needed: a lower bound on what the computation wanted, when known
    """

    def __init__(self, kind: str, limit: int, needed: int | None = None):
        self.kind = kind
        self.limit = limit
        self.needed = needed
        msg = f"budget exceeded: {kind} (limit {limit}"
        if needed is not None:
            msg += f", needed >= {needed}"
        msg += ")"
        super().__init__(msg)


class KneadingNotRealizable(SawlabError):
    """No parameter vector in the family realizes the requested kneading data."""
