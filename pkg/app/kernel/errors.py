"""
Exceptions raised by the kernel.
"""


class PmlError(Exception):
    """Base class for every error raised by the proof engine."""


class KernelError(PmlError):
    """Base class for kernel errors."""


class TypeCheckError(KernelError):
    """A term failed to type check.

    `path` is the child-index path from the checked term down to the
    offending subterm.
    """

    def __init__(self, message, path=()):
        super().__init__(message)
        self.message = message
        self.path = tuple(path)

    def __str__(self):
        if not self.path:
            return self.message
        where = ', '.join(str(step) for step in self.path)
        return f'{self.message} (at [{where}])'


class PositivityViolation(KernelError):
    """An inductive occurs in a non strictly positive position."""


class UniverseError(KernelError):
    """A constructor argument lives in a universe too large for its type."""


class DuplicateName(KernelError):
    """A global name is declared twice."""


class UnknownName(KernelError):
    """A global name is not declared."""


class UnknownInductive(UnknownName):
    """A name does not refer to an inductive type."""
