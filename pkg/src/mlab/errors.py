"""Exception types shared across the library.

Every error raised on purpose by this package derives from MlabError, so
callers (in particular the CLI) can distinguish "the input was bad" from
"the math went wrong" from genuine bugs.
"""

from __future__ import annotations


class MlabError(Exception):
    """Base class for all errors raised deliberately by this package."""


# ---------------------------------------------------------------------------
# input / usage errors


class DimensionMismatch(MlabError):
    """Objects living in different ambient dimensions were combined."""


class EmptyGenerators(MlabError):
    """An ideal was built from an empty generating set."""


class NotPrimary(MlabError):
    """The ideal is not primary to the homogeneous maximal ideal."""


class ZeroImage(MlabError):
    """A ring element maps to zero in the quotient under consideration."""


class UnitIdeal(MlabError):
    """The operation is undefined for the unit ideal."""


class NotMinimalPrime(MlabError):
    """The given coordinate prime is not a minimal prime of the quotient."""


class SchemaError(MlabError):
    """An input file does not match the expected schema."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class ScaleLimit(MlabError):
    """Exponents or intermediate lattice boxes exceed safe integer bounds."""


# ---------------------------------------------------------------------------
# geometry errors


class UnboundedComplement(MlabError):
    """The complement of the Newton polyhedron has infinite volume."""


class UnboundedFacet(MlabError):
    """A lattice volume was requested for an unbounded face."""


# ---------------------------------------------------------------------------
# numeric-fit errors


class NotStabilized(MlabError):
    """A length sequence did not become polynomial within the search window."""


class WrongDimension(MlabError):
    """A sequence stabilized, but to a polynomial of unexpected degree."""


class GridInconsistent(MlabError):
    """Multigraded interpolation failed its own validation grid."""


class IntegralityError(MlabError):
    """A quantity that must be an integer came out fractional or negative."""


# ---------------------------------------------------------------------------
# verification errors


class IdentityViolation(MlabError):
    """Two independent computations of the same invariant disagree.

    This is the error the whole package exists to never raise.  When it does
    fire it carries enough detail to reproduce the disagreement.
    """

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.details = dict(details) if details else {}
