"""Exception hierarchy.

Every error that a caller might want to catch programmatically lives here.
CLI exit codes: MalformedInput -> 2, PreconditionError -> 3; everything else
is a bug and propagates.
"""


class FaceCoverError(Exception):
    """Base class for all package errors."""


class MalformedInput(FaceCoverError):
    """Input file or data structure violates the format contract."""


class PreconditionError(FaceCoverError):
    """A stated hypothesis of the requested operation does not hold.

    The message names the violated hypothesis (e.g. "not 3-connected",
    "Euler genus 2, expected 0").
    """


class RegionError(FaceCoverError):
    """A face set does not bound a region of the required shape."""


class NestError(FaceCoverError):
    """Nest construction could not reach the requested depth."""


class WoodError(FaceCoverError):
    """Schnyder wood construction failed on an unsupported instance."""


class ModelError(FaceCoverError):
    """A claimed rooted K_{2,t} model failed verification."""


class BudgetExceeded(FaceCoverError):
    """An exhaustive search ran out of its node budget (distinct from absence)."""
