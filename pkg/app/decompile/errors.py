"""
Exceptions raised by the decompiler and the script replayer.
"""

from kernel.errors import PmlError


class DecompileError(PmlError):
    """Base class for decompiler errors."""


class ReplayFailed(DecompileError):
    """A tactic could not be applied to the goal it was given.

    `step` is the failing tactic, or None when the script ended with the
    goal still open; `goal` is the goal at the point of failure.
    """

    def __init__(self, step, goal, reason):
        self.step = step
        self.goal = goal
        self.reason = reason
        where = 'end of script' if step is None else f'`{step}`'
        super().__init__(f'{where}: {reason}')


class ScriptSyntaxError(DecompileError):
    """A script text is not laid out as the printer lays scripts out."""

    def __init__(self, message, line):
        super().__init__(f'{message} (line {line})')
        self.line = line
