"""
Configurations: the deconstructed equivalence between two types.

A configuration relates `type_a` and `type_b`, both open under the
telescope `params`. Every component is a closed term that first takes
the parameters:

    constr_x[j] : forall params x..., type_x
    elim_x      : forall params (P : type_x -> Type0) f... a, P (eta_x a)
    eta_x       : forall params, type_x -> type_x
    eta_ok_x    : forall params (a : type_x), eq type_x (eta_x a) a
    iota_x[j]   : the iota obligation of constructor j (see `obligations`)
"""

import hashlib
import logging
import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Optional, Sequence, Tuple

from config.equality import eq_refl
from config.errors import ConfigurationShapeError
from config.obligations import iota_type
from kernel.env import GlobalEnv, InductiveDecl
from kernel.errors import PmlError, UnknownInductive
from kernel.inductive import case_type, indices_of
from kernel.substitution import arrow
from kernel.telescope import Telescope
from kernel.terms import (
    Binder,
    ConstrRef,
    Elim,
    IndRef,
    Sort,
    Term,
    Var,
    lams,
    strip_pis,
    unfold_app,
)

logger = logging.getLogger(__name__)

FORWARD, BACKWARD = 'forward', 'backward'

_SIDE_LABEL = re.compile(r'_(a|b)(?=\.|$)')


def swap_label(label: str) -> str:
    """iota_b.1 -> iota_a.1, eta_ok_a -> eta_ok_b."""
    return _SIDE_LABEL.sub(
        lambda m: '_b' if m.group(1) == 'a' else '_a', label)


@dataclass(frozen=True)
class Side:
    """One side of a configuration."""
    label: str
    type: Term
    constrs: Tuple[Term, ...]
    elim: Term
    eta: Term
    eta_ok: Term
    iotas: Tuple[Term, ...]


@dataclass(frozen=True)
class Configuration:
    name: str
    params: Tuple[Binder, ...]
    type_a: Term
    type_b: Term
    constr_a: Tuple[Term, ...]
    constr_b: Tuple[Term, ...]
    elim_a: Term
    elim_b: Term
    eta_a: Term
    eta_b: Term
    eta_ok_a: Term
    eta_ok_b: Term
    iota_a: Tuple[Term, ...]
    iota_b: Tuple[Term, ...]
    trusted: frozenset = field(default_factory=frozenset)
    direction: str = FORWARD

    def __post_init__(self):
        n = len(self.constr_a)
        counts = (
            len(self.constr_b), len(self.iota_a), len(self.iota_b))
        if any(count != n for count in counts):
            raise ConfigurationShapeError(
                f'{self.name}: {n} dependent constructors for A but '
                f'{counts[0]} for B and {counts[1]}/{counts[2]} iotas')

    @property
    def ncases(self):
        return len(self.constr_a)

    @property
    def a(self) -> Side:
        return self.side('a')

    @property
    def b(self) -> Side:
        return self.side('b')

    def side(self, label: str) -> Side:
        if label not in ('a', 'b'):
            raise ValueError(f'unknown side {label!r}')
        return Side(
            label,
            getattr(self, 'type_' + label),
            getattr(self, 'constr_' + label),
            getattr(self, 'elim_' + label),
            getattr(self, 'eta_' + label),
            getattr(self, 'eta_ok_' + label),
            getattr(self, 'iota_' + label))

    def reversed(self) -> 'Configuration':
        """The same equivalence read from B to A."""
        return replace(
            self,
            type_a=self.type_b, type_b=self.type_a,
            constr_a=self.constr_b, constr_b=self.constr_a,
            elim_a=self.elim_b, elim_b=self.elim_a,
            eta_a=self.eta_b, eta_b=self.eta_a,
            eta_ok_a=self.eta_ok_b, eta_ok_b=self.eta_ok_a,
            iota_a=self.iota_b, iota_b=self.iota_a,
            trusted=frozenset(swap_label(label) for label in self.trusted),
            direction=BACKWARD if self.direction == FORWARD else FORWARD)

    @cached_property
    def fingerprint(self) -> str:
        """Stable identifier of the components, used as a cache key."""
        parts = [
            self.params, self.type_a, self.type_b, self.constr_a,
            self.constr_b, self.elim_a, self.elim_b, self.eta_a,
            self.eta_b, self.eta_ok_a, self.eta_ok_b, self.iota_a,
            self.iota_b, sorted(self.trusted)]
        return hashlib.sha256(repr(parts).encode()).hexdigest()


def native_inductive(
        env: GlobalEnv, family: Term) -> Tuple[InductiveDecl, list]:
    """Declaration and parameters of a non-indexed family `I args`."""
    head, args = unfold_app(family)
    if not isinstance(head, IndRef):
        raise ConfigurationShapeError(
            f'{family} is not an inductive type; give its components')
    try:
        decl = env.inductive(head.name)
    except UnknownInductive as error:
        raise ConfigurationShapeError(str(error)) from None
    if len(args) != len(decl.params):
        raise ConfigurationShapeError(
            f'{head.name} expects {len(decl.params)} parameters')
    if indices_of(decl, args)[0]:
        raise ConfigurationShapeError(
            f'{head.name} is an indexed family; give its components')
    return decl, args


def native_constructors(env, params, family) -> Tuple[Term, ...]:
    decl, _ = native_inductive(env, family)
    return tuple(
        lams(params, ConstrRef(j, family))
        for j in range(len(decl.constructors)))


def native_eliminator(env, params, family) -> Term:
    """fun params P f... a => Elim(a, P) { f... }, motives in Type0."""
    decl, args = native_inductive(env, family)
    np = len(params)
    tel = Telescope(params)
    motive = tel.bind('P', arrow(tel.shift(family, np), Sort(0)))
    cases = []
    for j in range(len(decl.constructors)):
        cases.append(tel.bind('f' + str(j), case_type(
            env, decl, [tel.shift(arg, np) for arg in args],
            tel.var(motive), j)))
    target = tel.bind('a', tel.shift(family, np))
    return tel.lams(Elim(
        tel.var(target), tel.var(motive), tuple(tel.vars(cases))))


def identity_eta(params, family) -> Term:
    return lams(list(params) + [('a', family)], Var(0, 'a'))


def reflexive_eta_ok(params, family) -> Term:
    """fun params a => eq_refl family a, for a definitional Eta."""
    tel = Telescope(params)
    np = len(params)
    target = tel.bind('a', tel.shift(family, np))
    return tel.lams(eq_refl(tel.shift(family, np), tel.var(target)))


def build_configuration(
        env: GlobalEnv, name: str, params: Sequence[Binder],
        type_a: Term, type_b: Term, *,
        constr_a: Optional[Sequence[Term]] = None,
        constr_b: Optional[Sequence[Term]] = None,
        elim_a: Optional[Term] = None, elim_b: Optional[Term] = None,
        eta_a: Optional[Term] = None, eta_b: Optional[Term] = None,
        eta_ok_a: Optional[Term] = None, eta_ok_b: Optional[Term] = None,
        iota_a: Optional[Sequence[Term]] = None,
        iota_b: Optional[Sequence[Term]] = None,
        trusted: Sequence[str] = ()) -> Configuration:
    """Assemble a configuration, filling missing components.

    A missing constructor or eliminator is the native one of a
    non-indexed inductive, a missing Eta is the identity with eq_refl as
    its proof, and a missing Iota is the identity at its obligation type
    (which holds when Iota is definitional).
    """
    params = tuple(params)
    given = {
        'a': dict(constrs=constr_a, elim=elim_a, eta=eta_a,
                  eta_ok=eta_ok_a, iotas=iota_a),
        'b': dict(constrs=constr_b, elim=elim_b, eta=eta_b,
                  eta_ok=eta_ok_b, iotas=iota_b),
    }
    families = {'a': type_a, 'b': type_b}
    parts = {}
    for label, components in given.items():
        family = families[label]
        constrs = components['constrs']
        if constrs is None:
            constrs = native_constructors(env, params, family)
        elim = components['elim']
        if elim is None:
            elim = native_eliminator(env, params, family)
        eta = components['eta']
        if eta is None:
            eta = identity_eta(params, family)
        eta_ok = components['eta_ok']
        if eta_ok is None:
            eta_ok = reflexive_eta_ok(params, family)
        parts[label] = (tuple(constrs), elim, eta, eta_ok)

    n = len(parts['a'][0])
    if len(parts['b'][0]) != n:
        raise ConfigurationShapeError(
            f'{name}: {n} dependent constructors for A but '
            f'{len(parts["b"][0])} for B')
    iotas = {}
    for label in ('a', 'b'):
        supplied = given[label]['iotas']
        if supplied is not None and len(supplied) != n:
            raise ConfigurationShapeError(
                f'{name}: iota_{label} has {len(supplied)} entries, '
                f'expected {n}')
        iotas[label] = supplied

    draft = Configuration(
        name, params, type_a, type_b,
        constr_a=parts['a'][0], constr_b=parts['b'][0],
        elim_a=parts['a'][1], elim_b=parts['b'][1],
        eta_a=parts['a'][2], eta_b=parts['b'][2],
        eta_ok_a=parts['a'][3], eta_ok_b=parts['b'][3],
        iota_a=tuple(iotas['a'] or [Var(0)] * n),
        iota_b=tuple(iotas['b'] or [Var(0)] * n),
        trusted=frozenset(trusted))
    filled = {
        label: tuple(iotas[label]) if iotas[label] is not None
        else _identity_iotas(env, draft, label)
        for label in ('a', 'b')}
    cfg = replace(draft, iota_a=filled['a'], iota_b=filled['b'])
    logger.debug('built configuration %s with %d cases', name, n)
    return cfg


def _identity_iotas(env, cfg, label):
    result = []
    for j in range(cfg.ncases):
        try:
            expected = iota_type(env, cfg, label, j)
        except PmlError as error:
            raise ConfigurationShapeError(
                f'{cfg.name}: cannot state iota_{label}.{j}: {error}'
            ) from None
        binders, _ = strip_pis(expected)
        result.append(lams(binders, Var(0, binders[-1][0])))
    return tuple(result)
