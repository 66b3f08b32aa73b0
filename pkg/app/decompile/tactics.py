"""
Tactic scripts and goals.

Terms inside tactics are de Bruijn terms valid in the context of the
goal the tactic is applied to. A script is a sequence of tactics; the
tactics that branch (induction and split) end their script and carry
one sub-script per generated goal.
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union

from kernel.env import Context
from kernel.terms import Term

FORWARD = '->'
BACKWARD = '<-'


@dataclass(frozen=True)
class Goal:
    ctx: Context
    target: Term


@dataclass(frozen=True)
class Intro:
    name: str

    def __str__(self):
        return f'intro {self.name}'


@dataclass(frozen=True)
class Intros:
    names: Tuple[str, ...]

    def __str__(self):
        return 'intros ' + ' '.join(self.names)


@dataclass(frozen=True)
class Symmetry:

    def __str__(self):
        return 'symmetry'


@dataclass(frozen=True)
class Rewrite:
    """Elimination of an equation into the current goal.

    Backward rewriting eliminates the equation itself, forward rewriting
    its symmetric; a missing motive is inferred on replay.
    """
    equation: Term
    motive: Optional[Term] = None
    direction: str = BACKWARD

    def __str__(self):
        return f'rewrite {self.direction} {self.equation}'


@dataclass(frozen=True)
class Apply:
    term: Term

    def __str__(self):
        return f'apply {self.term}'


@dataclass(frozen=True)
class Induction:
    term: Term
    motive: Optional[Term]
    branches: Tuple['Script', ...]

    def __str__(self):
        return f'induction {self.term}'


@dataclass(frozen=True)
class Split:
    branches: Tuple['Script', ...]

    def __str__(self):
        return 'split'


@dataclass(frozen=True)
class Left:

    def __str__(self):
        return 'left'


@dataclass(frozen=True)
class Right:

    def __str__(self):
        return 'right'


@dataclass(frozen=True)
class Reflexivity:

    def __str__(self):
        return 'reflexivity'


Tactic = Union[
    Intro, Intros, Symmetry, Rewrite, Apply, Induction, Split, Left, Right,
    Reflexivity]

BRANCHING = (Induction, Split)


@dataclass(frozen=True)
class Script:
    steps: Tuple[Tactic, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'steps', tuple(self.steps))

    @classmethod
    def of(cls, *steps: Tactic) -> 'Script':
        return cls(steps)

    def then(self, other: 'Script') -> 'Script':
        """Sequential composition."""
        return Script(self.steps + other.steps)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    @property
    def size(self) -> int:
        """Number of tactics, branches included."""
        total = 0
        for step in self.steps:
            total += 1
            if isinstance(step, BRANCHING):
                total += sum(branch.size for branch in step.branches)
        return total

    def tactics(self):
        """Every tactic, depth first."""
        for step in self.steps:
            yield step
            if isinstance(step, BRANCHING):
                for branch in step.branches:
                    yield from branch.tactics()
