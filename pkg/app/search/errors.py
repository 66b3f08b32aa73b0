"""
Exceptions raised by the configuration search.
"""

from kernel.errors import PmlError


class SearchError(PmlError):
    """Base class for search errors."""


class ArityMismatch(SearchError):
    """The two inductives have different numbers of constructors."""


class SelectionError(SearchError):
    """A mapping was requested by an index that is not in the list."""
