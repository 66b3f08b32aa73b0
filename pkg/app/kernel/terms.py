"""
Terms of the calculus.

Variables are de Bruijn indices. Binder names are kept as printing hints
only and never take part in equality, so `==` on terms is alpha-equality.
Every term caches its hash and `loose`, one more than its largest loose
de Bruijn index (zero for closed terms).
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Iterable, List, Sequence, Tuple


class Term:
    """Base class for all terms."""

    loose: int

    def _finish(self, *parts):
        object.__setattr__(self, '_hash', hash((type(self).__name__,) + parts))

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        # The cached hash is process specific and must not be pickled.
        return (type(self), tuple(getattr(self, f.name) for f in fields(self)))


@dataclass(frozen=True)
class Var(Term):
    """A bound variable (de Bruijn index)."""
    index: int
    name: str = field(default='x', compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'loose', self.index + 1)
        self._finish(self.index)

    __hash__ = Term.__hash__

    def __str__(self):
        return self.name or f'#{self.index}'


@dataclass(frozen=True)
class Sort(Term):
    """The universe Type<level>."""
    level: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError('universe levels are non-negative')
        object.__setattr__(self, 'loose', 0)
        self._finish(self.level)

    __hash__ = Term.__hash__

    def __str__(self):
        return f'Type{self.level}'


@dataclass(frozen=True)
class Pi(Term):
    """Dependent function type."""
    name: str = field(compare=False)
    domain: Term
    codomain: Term

    def __post_init__(self):
        object.__setattr__(
            self, 'loose',
            max(self.domain.loose, self.codomain.loose - 1, 0))
        self._finish(self.domain, self.codomain)

    __hash__ = Term.__hash__

    @property
    def body(self):
        return self.codomain

    def __str__(self):
        return f'forall ({self.name} : {self.domain}), {self.codomain}'


@dataclass(frozen=True)
class Lambda(Term):
    """Function abstraction."""
    name: str = field(compare=False)
    domain: Term
    body: Term

    def __post_init__(self):
        object.__setattr__(
            self, 'loose', max(self.domain.loose, self.body.loose - 1, 0))
        self._finish(self.domain, self.body)

    __hash__ = Term.__hash__

    def __str__(self):
        return f'fun ({self.name} : {self.domain}) => {self.body}'


@dataclass(frozen=True)
class App(Term):
    """Function application."""
    fn: Term
    arg: Term

    def __post_init__(self):
        object.__setattr__(self, 'loose', max(self.fn.loose, self.arg.loose))
        self._finish(self.fn, self.arg)

    __hash__ = Term.__hash__

    def __str__(self):
        fn = str(self.fn)
        if isinstance(self.fn, (Lambda, Pi)):
            fn = f'({fn})'
        arg = str(self.arg)
        if isinstance(self.arg, (Lambda, Pi, App)):
            arg = f'({arg})'
        return f'{fn} {arg}'


@dataclass(frozen=True)
class IndRef(Term):
    """Reference to a declared inductive type."""
    name: str

    def __post_init__(self):
        object.__setattr__(self, 'loose', 0)
        self._finish(self.name)

    __hash__ = Term.__hash__

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class ConstrRef(Term):
    """The index-th constructor of an inductive applied to its parameters."""
    index: int
    inductive: Term

    def __post_init__(self):
        object.__setattr__(self, 'loose', self.inductive.loose)
        self._finish(self.index, self.inductive)

    __hash__ = Term.__hash__

    def __str__(self):
        return f'Constr({self.index}, {self.inductive})'


@dataclass(frozen=True)
class Elim(Term):
    """Primitive dependent eliminator."""
    scrutinee: Term
    motive: Term
    cases: Tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, 'cases', tuple(self.cases))
        object.__setattr__(self, 'loose', max(
            [self.scrutinee.loose, self.motive.loose]
            + [case.loose for case in self.cases]))
        self._finish(self.scrutinee, self.motive, self.cases)

    __hash__ = Term.__hash__

    def __str__(self):
        cases = ' | '.join(str(case) for case in self.cases)
        return f'Elim({self.scrutinee}, {self.motive}) {{ {cases} }}'


@dataclass(frozen=True)
class ConstRef(Term):
    """Reference to a global definition or assumption."""
    name: str

    def __post_init__(self):
        object.__setattr__(self, 'loose', 0)
        self._finish(self.name)

    __hash__ = Term.__hash__

    def __str__(self):
        return self.name


Binder = Tuple[str, Term]


def apps(fn: Term, *args: Term) -> Term:
    """Apply fn to args left to right."""
    for arg in args:
        fn = App(fn, arg)
    return fn


def unfold_app(t: Term) -> Tuple[Term, List[Term]]:
    """Split an application spine into its head and arguments."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def pis(binders: Sequence[Binder], body: Term) -> Term:
    for name, domain in reversed(binders):
        body = Pi(name, domain, body)
    return body


def lams(binders: Sequence[Binder], body: Term) -> Term:
    for name, domain in reversed(binders):
        body = Lambda(name, domain, body)
    return body


def strip_pis(t: Term, count: int = -1) -> Tuple[List[Binder], Term]:
    """Peel up to count syntactic Pi binders (all of them when negative)."""
    binders = []
    while isinstance(t, Pi) and count != 0:
        binders.append((t.name, t.domain))
        t = t.codomain
        count -= 1
    return binders, t


def strip_lams(t: Term, count: int = -1) -> Tuple[List[Binder], Term]:
    binders = []
    while isinstance(t, Lambda) and count != 0:
        binders.append((t.name, t.domain))
        t = t.body
        count -= 1
    return binders, t


def bound_vars(count: int, names: Iterable[str] = ()) -> List[Term]:
    """Variables for the innermost count binders, outermost first."""
    names = list(names) or ['x'] * count
    return [Var(count - 1 - i, names[i]) for i in range(count)]


def children(t: Term) -> Tuple[Term, ...]:
    """Immediate subterms, in child-index order."""
    if isinstance(t, Pi):
        return (t.domain, t.codomain)
    if isinstance(t, Lambda):
        return (t.domain, t.body)
    if isinstance(t, App):
        return (t.fn, t.arg)
    if isinstance(t, ConstrRef):
        return (t.inductive,)
    if isinstance(t, Elim):
        return (t.scrutinee, t.motive) + t.cases
    return ()


def binders_at(t: Term, index: int) -> int:
    """Number of binders entered when descending into child index."""
    return 1 if isinstance(t, (Pi, Lambda)) and index == 1 else 0


def rebuild(t: Term, kids: Sequence[Term]) -> Term:
    """Same node as t with new children."""
    if isinstance(t, Pi):
        return Pi(t.name, kids[0], kids[1])
    if isinstance(t, Lambda):
        return Lambda(t.name, kids[0], kids[1])
    if isinstance(t, App):
        return App(kids[0], kids[1])
    if isinstance(t, ConstrRef):
        return ConstrRef(t.index, kids[0])
    if isinstance(t, Elim):
        return Elim(kids[0], kids[1], tuple(kids[2:]))
    return t


def subterm_at(t: Term, path: Sequence[int]) -> Term:
    """Follow a child-index path; raises IndexError off the tree."""
    for step in path:
        t = children(t)[step]
    return t


def global_names(t: Term) -> frozenset:
    """Names of every inductive and constant mentioned by t."""
    found = set()
    stack = [t]
    while stack:
        current = stack.pop()
        if isinstance(current, (IndRef, ConstRef)):
            found.add(current.name)
        else:
            stack.extend(children(current))
    return frozenset(found)


def mentions(t: Term, name: str) -> bool:
    return name in global_names(t)
