"""
Named syntax produced by the parser, before elaboration to kernel terms.
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union


class RawTerm:
    """A term as written, with names instead of de Bruijn indices."""


@dataclass(frozen=True)
class RName(RawTerm):
    name: str


@dataclass(frozen=True)
class RSort(RawTerm):
    level: int


@dataclass(frozen=True)
class RApp(RawTerm):
    fn: RawTerm
    arg: RawTerm


@dataclass(frozen=True)
class BinderGroup:
    """`(x y : T)`: every name shares one type written in the outer scope."""
    names: Tuple[str, ...]
    type: RawTerm


@dataclass(frozen=True)
class RFun(RawTerm):
    binders: Tuple[BinderGroup, ...]
    body: RawTerm


@dataclass(frozen=True)
class RForall(RawTerm):
    binders: Tuple[BinderGroup, ...]
    body: RawTerm


@dataclass(frozen=True)
class RArrow(RawTerm):
    domain: RawTerm
    codomain: RawTerm


@dataclass(frozen=True)
class RConstr(RawTerm):
    index: int
    family: RawTerm


@dataclass(frozen=True)
class RElim(RawTerm):
    scrutinee: RawTerm
    motive: RawTerm
    cases: Tuple[RawTerm, ...]


def raw_spine(t: RawTerm):
    """Head and arguments of a raw application."""
    args = []
    while isinstance(t, RApp):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


# Vernacular commands

@dataclass(frozen=True)
class TermList:
    items: Tuple[RawTerm, ...]


@dataclass(frozen=True)
class LabelList:
    items: Tuple[str, ...]


FieldValue = Union[RawTerm, TermList, LabelList]


@dataclass(frozen=True)
class RequireCmd:
    path: str


@dataclass(frozen=True)
class InductiveCmd:
    name: str
    params: Tuple[BinderGroup, ...]
    arity: RawTerm
    constructors: Tuple[Tuple[str, RawTerm], ...]


@dataclass(frozen=True)
class DefinitionCmd:
    name: str
    params: Tuple[BinderGroup, ...]
    type: RawTerm
    body: RawTerm


@dataclass(frozen=True)
class AxiomCmd:
    name: str
    params: Tuple[BinderGroup, ...]
    type: RawTerm


@dataclass(frozen=True)
class OpaqueCmd:
    names: Tuple[str, ...]


@dataclass(frozen=True)
class ConfigureCmd:
    name: str
    params: Tuple[BinderGroup, ...]
    type_a: RawTerm
    type_b: RawTerm
    fields: Tuple[Tuple[str, FieldValue], ...]


@dataclass(frozen=True)
class RepairCmd:
    type_a: str
    type_b: str
    target: str
    new_name: Optional[str] = None
    config: Optional[str] = None
    mapping: Optional[int] = None
    suggest: bool = False


@dataclass(frozen=True)
class RepairModuleCmd:
    type_a: str
    type_b: str
    targets: Tuple[str, ...]
    config: Optional[str] = None
    mapping: Optional[int] = None
    suggest: bool = False


@dataclass(frozen=True)
class DecompileCmd:
    name: str


@dataclass(frozen=True)
class AnnotateCmd:
    name: str
    path: Tuple[int, ...]
    role: str
    index: Optional[int] = None


Command = Union[
    RequireCmd, InductiveCmd, DefinitionCmd, AxiomCmd, OpaqueCmd,
    ConfigureCmd, RepairCmd, RepairModuleCmd, DecompileCmd, AnnotateCmd]


@dataclass(frozen=True)
class RawTactic:
    """One tactic line as written; terms are still named."""
    kind: str
    names: Tuple[str, ...] = ()
    term: Optional[RawTerm] = None
    motive: Optional[RawTerm] = None
