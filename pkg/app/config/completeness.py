"""
From an equivalence back to a configuration.

Given f : A -> B with inverse g, where A is a native inductive, B gets
dependent constructors and an eliminator defined through f and g, with
Eta_B = f o g and the retraction as eta_ok_B. The Iota obligations of
B hold only propositionally in general, so they are declared as
assumptions and marked trusted.
"""

import logging
from dataclasses import replace
from typing import Tuple

from config.configuration import Configuration, build_configuration
from config.equality import eq_type
from config.obligations import Obligations
from config.synthesis import Equivalence
from kernel.declarations import declare_assumption, declare_definition
from kernel.env import Context, GlobalEnv
from kernel.substitution import arrow, instantiate_many
from kernel.terms import App, ConstRef, Elim, Lambda, Term, Var, apps
from kernel.typing import infer_type

logger = logging.getLogger(__name__)


class Completion:

    def __init__(self, env: GlobalEnv, name: str, equivalence: Equivalence):
        self.env = env
        self.name = name
        self.equivalence = equivalence
        self.draft = build_configuration(
            env, name, equivalence.params, equivalence.type_a,
            equivalence.type_a)
        self.a = Obligations(env, self.draft, 'a')

    def f(self, tel, t):
        return apps(self.equivalence.f, *self.a.params(tel), t)

    def g(self, tel, t):
        return apps(self.equivalence.g, *self.a.params(tel), t)

    def b_family(self, tel):
        return instantiate_many(
            self.equivalence.type_b, self.a.params(tel))

    def _values(self, tel, j, levels, replaced=None, through=None):
        """Arguments of A's constructor j.

        Recursive arguments not in `replaced` go through `through`.
        """
        sig = self.a.signature(j)
        replaced = replaced or {}
        values = []
        for i, level in enumerate(levels):
            if i in replaced:
                values.append(tel.var(replaced[i]))
            elif sig.recursive[i] and through is not None:
                values.append(through(tel, tel.var(level)))
            else:
                values.append(tel.var(level))
        return values

    def dependent_constructor(self, j: int) -> Term:
        """fun params y... => f (c_j (y with recursive := g y))."""
        a = self.a
        tel = a.start()
        sig = a.signature(j)
        levels = []
        for i, (name, raw) in enumerate(sig.binders):
            if sig.recursive[i]:
                type = self.b_family(tel)
            else:
                earlier = self._values(tel, j, levels, through=self.g)
                type = instantiate_many(raw, a.params(tel) + earlier)
            levels.append(tel.bind(name, type))
        built = a.constr(tel, j, self._values(tel, j, levels, through=self.g))
        return tel.lams(self.f(tel, built))

    def eta(self) -> Term:
        tel = self.a.start()
        target = tel.bind('b', self.b_family(tel))
        return tel.lams(self.f(tel, self.g(tel, tel.var(target))))

    def dependent_eliminator(self, b: Obligations) -> Term:
        """fun params P f... b => DepElim_A (fun a => P (f a)) f'... (g b)"""
        a = self.a
        tel = b.start()
        motive, cases = b.bind_eliminator_inputs(tel)
        target = tel.bind('b', b.family(tel))

        def lifted(tel, t):
            return App(tel.var(motive), self.f(tel, t))

        depth = len(tel)
        x = tel.bind('a', a.family(tel))
        a_motive = tel.lams(lifted(tel, tel.var(x)), depth)
        a_cases = [
            self._eliminator_case(tel, j, cases[j], lifted)
            for j in range(self.draft.ncases)]
        body = a.at(
            tel, a.side.elim, a_motive, *a_cases,
            self.g(tel, tel.var(target)))
        return tel.lams(body)

    def _section(self, tel, t):
        return apps(self.equivalence.section, *self.a.params(tel), t)

    def _eliminator_case(self, tel, j, case, lifted):
        a = self.a
        depth = len(tel)
        xs, ihs = a.bind_arguments(
            tel, j, lambda tel, level: lifted(tel, tel.var(level)))
        args = []
        recursive = []
        for i, (level, ih) in enumerate(zip(xs, ihs)):
            if ih is None:
                args.append(tel.var(level))
                continue
            recursive.append(i)
            args.append(self.f(tel, tel.var(level)))
            args.append(self._round_trip_hypothesis(tel, level, ih, lifted))
        value = apps(tel.var(case), *args)

        done = {}
        for i in recursive:
            x = tel.var(xs[i])
            d = len(tel)
            y = tel.bind('y', a.family(tel))
            tel.bind('_', eq_type(
                a.family(tel), self.g(tel, self.f(tel, tel.var(xs[i]))),
                tel.var(y)))
            body = lifted(tel, a.constr(tel, j, self._values(
                tel, j, xs, {**done, i: y}, self._round_trip)))
            value = Elim(
                self._section(tel, x), tel.lams(body, d), (value,))
            done[i] = xs[i]
        return tel.lams(value, depth)

    def _round_trip(self, tel, t):
        return self.g(tel, self.f(tel, t))

    def _round_trip_hypothesis(self, tel, level, ih, lifted):
        """P (f (g (f x))) from IH : P (f x)."""
        a = self.a
        x = tel.var(level)
        round_trip = self._round_trip(tel, x)
        d = len(tel)
        y = tel.bind('y', a.family(tel))
        tel.bind('_', eq_type(
            a.family(tel), tel.shift(round_trip, d), tel.var(y)))
        body = arrow(
            lifted(tel, tel.var(y)),
            lifted(tel, tel.shift(round_trip, d)))
        motive = tel.lams(body, d)
        identity = Lambda('w', lifted(tel, round_trip), Var(0, 'w'))
        return App(
            Elim(self._section(tel, x), motive, (identity,)), tel.var(ih))


def configuration_from_equivalence(
        env: GlobalEnv, name: str,
        equivalence: Equivalence) -> Tuple[GlobalEnv, Configuration]:
    """Declare B's components under `name` and return the configuration.

    A must be a non-indexed native inductive.
    """
    completion = Completion(env, name, equivalence)
    draft = completion.draft
    np = len(equivalence.params)

    def declare(env, suffix, body):
        full = f'{name}.{suffix}'
        type = infer_type(env, Context(), body)
        return declare_definition(env, full, type, body), ConstRef(full)

    constrs = []
    for j in range(draft.ncases):
        env, ref = declare(
            env, f'dep_constr_b_{j}', completion.dependent_constructor(j))
        constrs.append(ref)
    env, eta = declare(env, 'eta_b', completion.eta())
    env, eta_ok = declare(env, 'eta_ok_b', equivalence.retraction)

    stage = replace(
        draft, type_b=equivalence.type_b, constr_b=tuple(constrs),
        eta_b=eta, eta_ok_b=eta_ok)
    b = Obligations(env, stage, 'b')
    env, elim = declare(env, 'dep_elim_b', completion.dependent_eliminator(b))
    stage = replace(stage, elim_b=elim)

    b = Obligations(env, stage, 'b')
    iotas = []
    for j in range(draft.ncases):
        full = f'{name}.iota_b_{j}'
        env = declare_assumption(env, full, b.iota_type(j))
        iotas.append(ConstRef(full))
    cfg = replace(
        stage, iota_b=tuple(iotas),
        trusted=frozenset(f'iota_b.{j}' for j in range(draft.ncases)))
    logger.info(
        'derived configuration %s from an equivalence (%d parameters)',
        name, np)
    return env, cfg
