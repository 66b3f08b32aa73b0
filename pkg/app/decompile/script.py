"""
Text form of tactic scripts.

One tactic per line. The branches of induction and split follow the
tactic as bullet blocks; bullets cycle through -, + and * with nesting
depth, then double up. Continuation lines of a branch are indented to
the width of its bullet.
"""

import re
from typing import List, Optional, Sequence

from decompile.errors import ScriptSyntaxError
from decompile.tactics import (
    BACKWARD,
    BRANCHING,
    FORWARD,
    Apply,
    Induction,
    Intro,
    Intros,
    Left,
    Reflexivity,
    Rewrite,
    Right,
    Script,
    Split,
    Symmetry,
)
from frontend.elaborate import Elaborator
from frontend.errors import FrontendError
from frontend.parser import parse_tactic
from frontend.printer import TermPrinter
from kernel.env import GlobalEnv

BULLETS = '-+*'
_COMMENT = re.compile(r'\s*\(\*.*\*\)\s*$')


def bullet(depth: int) -> str:
    return BULLETS[depth % 3] * (depth // 3 + 1)


class ScriptPrinter:

    def __init__(self, env: Optional[GlobalEnv] = None):
        self.printer = TermPrinter(env)

    def lines(self, script: Script, names: List[str], depth=0) -> List[str]:
        out = []
        names = list(names)
        for step in script:
            out.append(self.tactic(step, names) + '.')
            if isinstance(step, Intro):
                names.append(step.name)
            elif isinstance(step, Intros):
                names.extend(step.names)
            if isinstance(step, BRANCHING):
                mark = bullet(depth)
                indent = ' ' * (len(mark) + 1)
                for branch in step.branches:
                    inner = self.lines(branch, names, depth + 1)
                    out.append(f'{mark} {inner[0]}')
                    out.extend(indent + line for line in inner[1:])
        return out

    def term(self, t, names):
        return self.printer.print(t, names)

    def tactic(self, step, names) -> str:
        if isinstance(step, Apply):
            return f'apply ({self.term(step.term, names)})'
        if isinstance(step, Rewrite):
            text = (f'rewrite {step.direction} '
                    f'({self.term(step.equation, names)})')
            return text + self._motive(step.motive, names)
        if isinstance(step, Induction):
            text = f'induction ({self.term(step.term, names)})'
            return text + self._motive(step.motive, names)
        return str(step)

    def _motive(self, motive, names):
        if motive is None:
            return ''
        return f' with ({self.term(motive, names)})'


def print_script(
        script: Script, names: Sequence[str] = (),
        env: Optional[GlobalEnv] = None) -> str:
    """The script as text; names are the locals of the goal."""
    return '\n'.join(ScriptPrinter(env).lines(script, list(names))) + '\n'


class ScriptReader:
    """Reads scripts laid out by ScriptPrinter."""

    def __init__(self, env: GlobalEnv):
        self.elaborator = Elaborator(env)

    def read(self, lines, names, depth=0, first=1) -> Script:
        steps = []
        i = 0
        while i < len(lines):
            line = lines[i]
            lineno = first + i
            if line[:1] in BULLETS:
                raise ScriptSyntaxError('unexpected bullet', lineno)
            step = self.tactic(line, names, lineno)
            i += 1
            if isinstance(step, BRANCHING):
                blocks = self._blocks(lines[i:], depth, first + i)
                branches = tuple(
                    self.read(block, names, depth + 1, start)
                    for start, block in blocks)
                i = len(lines)
                if isinstance(step, Induction):
                    step = Induction(step.term, step.motive, branches)
                else:
                    step = Split(branches)
            elif isinstance(step, Intro):
                names = names + [step.name]
            elif isinstance(step, Intros):
                names = names + list(step.names)
            steps.append(step)
        return Script(tuple(steps))

    def _blocks(self, lines, depth, first):
        mark = bullet(depth)
        indent = ' ' * (len(mark) + 1)
        blocks = []
        for offset, line in enumerate(lines):
            if line.startswith(mark + ' '):
                blocks.append((first + offset, [line[len(mark) + 1:]]))
            elif line.startswith(indent) and blocks:
                blocks[-1][1].append(line[len(indent):])
            else:
                raise ScriptSyntaxError(
                    f'expected a `{mark}` branch', first + offset)
        return blocks

    def tactic(self, line, names, lineno):
        try:
            raw = parse_tactic(line)
            term = None if raw.term is None else \
                self.elaborator.term(raw.term, names)
            motive = None if raw.motive is None else \
                self.elaborator.term(raw.motive, names)
        except FrontendError as error:
            raise ScriptSyntaxError(str(error), lineno) from None
        kind = raw.kind
        if kind == 'intro':
            return Intro(raw.names[0])
        if kind == 'intros':
            return Intros(raw.names)
        if kind == 'apply':
            return Apply(term)
        if kind == 'rewrite->':
            return Rewrite(term, motive, FORWARD)
        if kind == 'rewrite<-':
            return Rewrite(term, motive, BACKWARD)
        if kind == 'induction':
            return Induction(term, motive, ())
        if kind == 'split':
            return Split(())
        simple = {
            'symmetry': Symmetry, 'left': Left, 'right': Right,
            'reflexivity': Reflexivity}
        return simple[kind]()


def parse_script(
        text: str, env: GlobalEnv, names: Sequence[str] = ()) -> Script:
    """Read a printed script back; names are the locals of the goal."""
    lines = [line.rstrip() for line in text.split('\n')]
    numbered = [
        (n, line) for n, line in enumerate(lines, 1)
        if line.strip() and not _COMMENT.match(line)]
    if not numbered:
        return Script()
    reader = ScriptReader(env)
    first = numbered[0][0]
    return reader.read([line for _, line in numbered], list(names), 0, first)
