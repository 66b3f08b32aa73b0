"""
Global environments and local contexts.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Optional, Tuple, Union

from kernel.errors import DuplicateName, UnknownInductive, UnknownName
from kernel.substitution import lift
from kernel.terms import Binder, Term, pis

logger = logging.getLogger(__name__)

_versions = itertools.count(1)


@dataclass(frozen=True)
class InductiveDecl:
    """An inductive family.

    `params` is a telescope; `arity` and every constructor type live
    under it. The arity is a Pi over the indices ending in a Sort.
    """
    name: str
    params: Tuple[Binder, ...]
    arity: Term
    constructors: Tuple[Binder, ...]

    @property
    def constructor_names(self):
        return tuple(name for name, _ in self.constructors)

    @property
    def type(self):
        return pis(self.params, self.arity)


@dataclass(frozen=True)
class Definition:
    name: str
    type: Term
    body: Term


@dataclass(frozen=True)
class Assumption:
    name: str
    type: Term


Entry = Union[InductiveDecl, Definition, Assumption]


@dataclass(frozen=True, eq=False)
class GlobalEnv:
    """An immutable, ordered set of global declarations.

    Environments are values: `extend` and `set_opaque` return new ones.
    Each environment owns its reduction and typing memo tables, so the
    tables are implicitly keyed by `version`.
    """
    entries: Dict[str, Entry] = field(default_factory=dict)
    constructors: Dict[str, Tuple[str, int]] = field(default_factory=dict)
    opaque: frozenset = frozenset()
    version: int = 0

    @classmethod
    def empty(cls):
        return cls(version=next(_versions))

    def extend(self, entry: Entry) -> 'GlobalEnv':
        """Add an entry without checking it."""
        names = [entry.name]
        if isinstance(entry, InductiveDecl):
            names.extend(entry.constructor_names)
        for name in names:
            if name in self.entries or name in self.constructors:
                raise DuplicateName(f'{name} is already declared')
        if len(set(names)) != len(names):
            raise DuplicateName(f'{entry.name} repeats a constructor name')
        constructors = dict(self.constructors)
        if isinstance(entry, InductiveDecl):
            for j, cname in enumerate(entry.constructor_names):
                constructors[cname] = (entry.name, j)
        entries = dict(self.entries)
        entries[entry.name] = entry
        return GlobalEnv(entries, constructors, self.opaque, next(_versions))

    def set_opaque(self, names: Iterable[str], opaque=True) -> 'GlobalEnv':
        names = frozenset(names)
        for name in names:
            self.lookup(name)
        updated = self.opaque | names if opaque else self.opaque - names
        return GlobalEnv(
            self.entries, self.constructors, updated, next(_versions))

    def __contains__(self, name):
        return name in self.entries

    def __iter__(self):
        return iter(self.entries.values())

    def names(self):
        return list(self.entries)

    def lookup(self, name: str) -> Entry:
        try:
            return self.entries[name]
        except KeyError:
            raise UnknownName(f'{name} is not declared') from None

    def get(self, name: str) -> Optional[Entry]:
        return self.entries.get(name)

    def inductive(self, name: str) -> InductiveDecl:
        entry = self.entries.get(name)
        if not isinstance(entry, InductiveDecl):
            raise UnknownInductive(f'{name} is not an inductive type')
        return entry

    def constructor(self, name: str) -> Optional[Tuple[str, int]]:
        """(inductive name, index) for a constructor name."""
        return self.constructors.get(name)

    def definition(self, name: str) -> Optional[Definition]:
        entry = self.entries.get(name)
        return entry if isinstance(entry, Definition) else None

    @cached_property
    def reducer(self):
        from kernel.reduction import Reducer
        return Reducer(self)

    @cached_property
    def checker(self):
        from kernel.typing import TypeChecker
        return TypeChecker(self)


@dataclass(frozen=True)
class Context:
    """A local typing context, outermost binding first."""
    entries: Tuple[Binder, ...] = ()

    def push(self, name: str, type: Term) -> 'Context':
        return Context(self.entries + ((name, type),))

    def extend(self, binders: Iterable[Binder]) -> 'Context':
        return Context(self.entries + tuple(binders))

    def lookup(self, index: int) -> Term:
        """Type of Var(index), valid in this whole context."""
        _, type = self.entries[-1 - index]
        return lift(type, index + 1)

    def name(self, index: int) -> str:
        return self.entries[-1 - index][0]

    def names(self):
        return [name for name, _ in self.entries]

    def __len__(self):
        return len(self.entries)
