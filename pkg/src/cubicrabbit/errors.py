"""Exceptions shared across the package."""


class InternalInconsistencyError(RuntimeError):
    """Two routes that must agree disagreed, or an iteration escaped its
    guaranteed terminal set.  Always a bug (or corrupted rule data), never a
    valid classification outcome."""


class ContractionBudgetError(RuntimeError):
    """The nucleus computation exceeded its vertex budget; the action is not
    contracting at that scale, or the recursion data is wrong."""
