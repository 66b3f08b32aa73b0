"""
Simplification of decompiled scripts.

Every change is checked by replaying the whole script; a change that
breaks replay is dropped and the original kept.
"""

import logging
from dataclasses import replace
from typing import Iterable, Mapping, Tuple, Union

from decompile.replay import replays
from decompile.tactics import (
    BRANCHING,
    Goal,
    Induction,
    Intro,
    Intros,
    Rewrite,
    Script,
    Split,
)
from kernel.env import GlobalEnv

logger = logging.getLogger(__name__)

Hints = Union[Mapping[str, Script], Iterable[Tuple[str, Script]]]


def merge_intros(script: Script) -> Script:
    """Adjacent intro steps as one intros step, in every branch."""
    steps = []
    pending = []

    def flush():
        if len(pending) == 1:
            steps.append(Intro(pending[0]))
        elif pending:
            steps.append(Intros(tuple(pending)))
        pending.clear()

    for step in script:
        if isinstance(step, Intro):
            pending.append(step.name)
            continue
        if isinstance(step, Intros):
            pending.extend(step.names)
            continue
        flush()
        if isinstance(step, BRANCHING):
            step = with_branches(
                step, [merge_intros(branch) for branch in step.branches])
        steps.append(step)
    flush()
    return Script(tuple(steps))


def with_branches(step, branches):
    if isinstance(step, Induction):
        return replace(step, branches=tuple(branches))
    return Split(tuple(branches))


class Simplifier:

    def __init__(self, env: GlobalEnv, goal: Goal, hints: Hints = ()):
        self.env = env
        self.goal = goal
        self.hints = list(dict(hints).items())
        self.replaced = 0
        self.dropped = 0

    def ok(self, script: Script) -> bool:
        return replays(self.env, self.goal, script)

    def simplify(self, script: Script) -> Script:
        merged = merge_intros(script)
        if not self.ok(merged):
            logger.debug('script does not replay; left as it is')
            return script
        result = merge_intros(self._walk(merged, lambda whole: whole))
        logger.info(
            'simplified %d tactics to %d (%d motives dropped, %d hints used)',
            script.size, result.size, self.dropped, self.replaced)
        return result

    def _walk(self, script, wrap):
        """Simplify script, where wrap(sub) is the whole script around sub."""
        steps = list(script.steps)
        i = 0
        while i < len(steps):
            steps = self._hint(steps, i, wrap)
            step = steps[i]
            if isinstance(step, (Rewrite, Induction)) \
                    and step.motive is not None:
                lighter = replace(step, motive=None)
                candidate = steps[:i] + [lighter] + steps[i + 1:]
                if self.ok(wrap(Script(tuple(candidate)))):
                    self.dropped += 1
                    steps, step = candidate, lighter
            if isinstance(step, BRANCHING):
                step = self._branches(steps, i, step, wrap)
                steps[i] = step
            i += 1
        return Script(tuple(steps))

    def _hint(self, steps, i, wrap):
        """steps with the suffix from i replaced by a hint that replays."""
        current = Script(tuple(steps))
        for name, hint in self.hints:
            if not len(hint):
                continue
            candidate = Script(tuple(steps[:i]) + hint.steps)
            if candidate == current or candidate.size > current.size:
                continue
            if self.ok(wrap(candidate)):
                logger.debug('hint %s replaces %d tactics', name,
                             current.size - Script(tuple(steps[:i])).size)
                self.replaced += 1
                return list(candidate.steps)
        return steps

    def _branches(self, steps, i, step, wrap):
        branches = list(step.branches)
        for b in range(len(branches)):
            def around(sub, b=b):
                trial = branches[:b] + [sub] + branches[b + 1:]
                rebuilt = steps[:i] + [with_branches(step, trial)] \
                    + steps[i + 1:]
                return wrap(Script(tuple(rebuilt)))

            branches[b] = self._walk(branches[b], around)
        return with_branches(step, branches)


def simplify_script(
        env: GlobalEnv, goal: Goal, script: Script,
        hints: Hints = ()) -> Script:
    """A shorter script proving goal; hints are tried on every subtree."""
    return Simplifier(env, goal, hints).simplify(script)
