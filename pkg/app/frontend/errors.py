"""
Exceptions raised while reading and elaborating .pml text.
"""

from kernel.errors import PmlError


class FrontendError(PmlError):
    """Base class for frontend errors."""


class ParseError(FrontendError):
    """Syntax error at a 1-based line and column."""

    def __init__(self, message, line, column):
        super().__init__(f'{message} (line {line}, column {column})')
        self.line = line
        self.column = column


class ElaborationError(FrontendError):
    """A well-formed command refers to unknown names or is malformed."""
