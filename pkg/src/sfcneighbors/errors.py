"""Exception hierarchy shared by all modules."""


class SFCError(Exception):
    """Base class for every error raised by this package."""


class ContractError(SFCError, ValueError):
    """An argument violates an operation's precondition."""


class DimensionMismatchError(ContractError):
    """Points or matrices of different ambient dimension were mixed."""


class ShapeError(ContractError):
    """Matrix shapes are incompatible."""


class DegenerateHullError(ContractError):
    """A point set that must be full-dimensional is not."""


class UnsupportedTreeError(SFCError):
    """The requested tree operation needs state history or an invertible system."""


class UnsupportedDimensionError(SFCError):
    """The operation is only defined for some dimensions."""


class CatalogError(SFCError, KeyError):
    """Unknown builtin curve name or bad builtin parameters."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class SpecParseError(SFCError, ValueError):
    """A spec document is malformed."""


class SpecValidationError(SFCError, ValueError):
    """A specification failed validation; ``report`` holds the violations."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class RegularityError(SFCError):
    """Table generation was refused because a regularity clause fails."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ResourceError(SFCError):
    """A size cap (cells, table rows) would be exceeded."""


class OracleInconsistencyError(SFCError):
    """The geometric oracle found more than one neighbor candidate."""


class TableConflictError(SFCError):
    """Two geometric witnesses disagree on a table entry."""
