"""
Exceptions raised while transporting and repairing terms.
"""

from kernel.errors import PmlError


class TransformError(PmlError):
    """Base class for transformation errors."""


class TransformFailed(TransformError):
    """A term could not be transported.

    `path` locates the offending subterm, `completed` lists the
    definitions repaired before the failure.
    """

    def __init__(self, path, reason, completed=()):
        self.path = tuple(path)
        self.reason = reason
        self.completed = tuple(completed)
        super().__init__(str(self))

    def __str__(self):
        if not self.path:
            return self.reason
        where = ', '.join(str(step) for step in self.path)
        return f'{self.reason} (at [{where}])'


class TerminationGuardTriggered(TransformError):
    """The result is ill-typed after the guard kept parts of B unchanged."""

    def __init__(self, message, hits=0):
        super().__init__(message)
        self.hits = hits


class DependencyError(TransformError):
    """Definitions to repair cannot be put in dependency order."""
