"""
A scratch pad for building terms under a growing list of binders.

Binders are addressed by level (their position from the outside), so a
variable can be referenced without recomputing de Bruijn indices at every
depth. Terms handed to `bind` or returned by `var` are valid at the
current depth.
"""

from typing import Iterable, List, Sequence

from kernel.env import Context
from kernel.substitution import lift
from kernel.terms import Binder, Term, Var, lams, pis


class Telescope:

    def __init__(self, binders: Iterable[Binder] = ()):
        self.binders: List[Binder] = list(binders)

    def __len__(self):
        return len(self.binders)

    def bind(self, name: str, type: Term) -> int:
        """Push a binder whose type is valid at the current depth."""
        self.binders.append((name, type))
        return len(self.binders) - 1

    def extend(self, binders: Sequence[Binder]) -> List[int]:
        """Push a telescope whose types are relative to one another."""
        return [self.bind(name, type) for name, type in binders]

    def var(self, level: int) -> Term:
        return Var(len(self.binders) - 1 - level, self.binders[level][0])

    def vars(self, levels: Iterable[int]) -> List[Term]:
        return [self.var(level) for level in levels]

    def shift(self, t: Term, depth: int) -> Term:
        """Move t, built when the telescope had `depth` binders, to now."""
        return lift(t, len(self.binders) - depth)

    def _close(self, build, body, level):
        closed = self.binders[level:]
        del self.binders[level:]
        return build(closed, body)

    def lams(self, body: Term, level: int = 0) -> Term:
        """Abstract body over the binders from level on and drop them."""
        return self._close(lams, body, level)

    def pis(self, body: Term, level: int = 0) -> Term:
        return self._close(pis, body, level)

    def context(self, base: Context = Context()) -> Context:
        return base.extend(self.binders)
