"""
Synthesis of the equivalence induced by a configuration.

f eliminates A with DepElim and rebuilds with DepConstr of B; g does the
converse. The section is proved by rewriting with eta_ok, inducting with
DepElim, expanding both functions with Iota and closing each case with
the inductive hypotheses and reflexivity. The retraction is the section
of the reversed configuration.

Synthesis needs eta_ok to compute on dependent constructors, which holds
whenever Eta is definitional or eta_ok is proved by eliminating its
argument.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from config.configuration import Configuration
from config.equality import eq_refl, eq_type, rew_fwd
from config.errors import SynthesisFailed
from config.obligations import Obligations
from config.validation import assumptions_allowed
from kernel.declarations import declare_definition, uses_assumptions
from kernel.env import Context, GlobalEnv
from kernel.errors import KernelError, PmlError
from kernel.substitution import arrow, lift
from kernel.telescope import Telescope
from kernel.terms import (
    App,
    Binder,
    ConstRef,
    Elim,
    Lambda,
    Term,
    apps,
    pis,
)
from kernel.typing import check_type

logger = logging.getLogger(__name__)

COMPONENTS = ('f', 'g', 'section', 'retraction')


@dataclass(frozen=True)
class Equivalence:
    params: Tuple[Binder, ...]
    type_a: Term
    type_b: Term
    f: Term
    g: Term
    section: Term
    retraction: Term

    def reversed(self) -> 'Equivalence':
        return Equivalence(
            self.params, self.type_b, self.type_a,
            self.g, self.f, self.retraction, self.section)


def equivalence_types(
        params, type_a: Term, type_b: Term,
        f: Term, g: Term) -> Dict[str, Term]:
    """Statements of the four components for given f and g."""
    params = tuple(params)
    np = len(params)

    def round_trip(source, there, back):
        tel = Telescope(params)
        target = tel.bind('a', tel.shift(source, np))
        args = tel.vars(range(np))
        return tel.pis(eq_type(
            tel.shift(source, np),
            apps(back, *args, apps(there, *args, tel.var(target))),
            tel.var(target)))

    return {
        'f': pis(params, arrow(type_a, type_b)),
        'g': pis(params, arrow(type_b, type_a)),
        'section': round_trip(type_a, f, g),
        'retraction': round_trip(type_b, g, f),
    }


class Synthesizer:
    """Builds f and the section for one direction of a configuration."""

    def __init__(self, env: GlobalEnv, cfg: Configuration):
        self.env = env
        self.cfg = cfg
        self.source = Obligations(env, cfg, 'a')
        self.target = Obligations(env, cfg, 'b')

    def transfer_case(self, tel: Telescope, j: int, src=None, dst=None):
        """fun x... IH... => DepConstr_dst j (x with recursive := IH)."""
        src = src or self.source
        dst = dst or self.target
        depth = len(tel)
        xs, ihs = src.bind_arguments(
            tel, j, lambda tel, level: dst.family(tel))
        args = [
            tel.var(level if ih is None else ih)
            for level, ih in zip(xs, ihs)]
        return tel.lams(dst.constr(tel, j, args), depth)

    def transfer_cases(self, tel, src=None, dst=None):
        return [
            self.transfer_case(tel, j, src, dst)
            for j in range(self.cfg.ncases)]

    def constant_motive(self, tel, src, dst) -> Term:
        return Lambda('_', src.family(tel), lift(dst.family(tel), 1))

    def function(self) -> Term:
        src, dst = self.source, self.target
        tel = src.start()
        target = tel.bind('a', src.family(tel))
        body = src.at(
            tel, src.side.elim, self.constant_motive(tel, src, dst),
            *self.transfer_cases(tel), tel.var(target))
        return tel.lams(body)

    def section(self, f: Term, g: Term) -> Term:
        """forall params a, eq A (g (f a)) a."""
        src = self.source
        tel = src.start()
        target = tel.bind('a', src.family(tel))
        cases = [
            self._section_case(tel, j, f, g)
            for j in range(self.cfg.ncases)]
        motive = self._section_motive(tel, f, g)
        inducted = src.at(
            tel, src.side.elim, motive, *cases, tel.var(target))
        body = rew_fwd(
            src.family(tel), src.at(tel, src.side.eta), motive,
            tel.var(target), src.at(tel, src.side.eta_ok, tel.var(target)),
            inducted)
        return tel.lams(body)

    def _round_trip(self, tel, f, g, t):
        params = self.source.params(tel)
        return apps(g, *params, apps(f, *params, t))

    def _section_motive(self, tel, f, g):
        """fun a => eq A (g (f a)) a"""
        src = self.source
        depth = len(tel)
        a = tel.bind('a', src.family(tel))
        body = eq_type(
            src.family(tel), self._round_trip(tel, f, g, tel.var(a)),
            tel.var(a))
        return tel.lams(body, depth)

    def _section_case(self, tel, j, f, g):
        src, dst = self.source, self.target
        depth = len(tel)
        sig = src.signature(j)

        def hypothesis(tel, level):
            return App(
                self._section_motive(tel, f, g), src.eta(tel, tel.var(level)))

        xs, ihs = src.bind_arguments(tel, j, hypothesis)

        def built(tel):
            return src.constr(tel, j, tel.vars(xs))

        # Q1 y := eq A (g y) (c x...)
        d = len(tel)
        y = tel.bind('y', dst.family(tel))
        q1 = tel.lams(eq_type(
            src.family(tel), apps(g, *src.params(tel), tel.var(y)),
            built(tel)), d)
        # Q2 z := eq A z (c x...)
        d = len(tel)
        z = tel.bind('z', src.family(tel))
        q2 = tel.lams(
            eq_type(src.family(tel), tel.var(z), built(tel)), d)

        images = [
            apps(f, *src.params(tel), tel.var(level))
            if sig.recursive[i] else tel.var(level)
            for i, level in enumerate(xs)]
        closed = self._close_case(tel, j, xs, ihs, f, g)
        inner = dst.at(
            tel, dst.side.iotas[j], self.constant_motive(tel, dst, src),
            *self.transfer_cases(tel, dst, src), *images, q2, closed)
        outer = src.at(
            tel, src.side.iotas[j], self.constant_motive(tel, src, dst),
            *self.transfer_cases(tel), *tel.vars(xs), q1, inner)
        return tel.lams(outer, depth)

    def _close_case(self, tel, j, xs, ihs, f, g):
        """eq A (c (g (f x))...) (c x...), one rewrite per hypothesis."""
        src = self.source
        recursive = [i for i, ih in enumerate(ihs) if ih is not None]

        def built(tel, replaced):
            args = []
            for i, level in enumerate(xs):
                if i in replaced:
                    args.append(tel.var(replaced[i]))
                elif i in recursive:
                    args.append(self._round_trip(tel, f, g, tel.var(level)))
                else:
                    args.append(tel.var(level))
            return src.constr(tel, j, args)

        proof = eq_refl(src.family(tel), built(tel, {}))
        done = {}
        for i in recursive:
            x = tel.var(xs[i])
            # eq A (g (f x)) x, from IH : eq A (g (f (Eta x))) (Eta x)
            step = rew_fwd(
                src.family(tel), src.at(tel, src.side.eta),
                self._section_motive(tel, f, g), x,
                src.at(tel, src.side.eta_ok, x), tel.var(ihs[i]))
            depth = len(tel)
            y = tel.bind('y', src.family(tel))
            tel.bind('_', eq_type(
                src.family(tel), self._round_trip(
                    tel, f, g, tel.var(xs[i])), tel.var(y)))
            body = eq_type(
                src.family(tel), built(tel, {}),
                built(tel, {**done, i: y}))
            proof = Elim(step, tel.lams(body, depth), (proof,))
            done[i] = xs[i]
        return proof


def synthesize_equivalence(env: GlobalEnv, cfg: Configuration) -> Equivalence:
    """f, g, section and retraction of cfg, type checked."""
    forward = Synthesizer(env, cfg)
    backward = Synthesizer(env, cfg.reversed())
    built = {}
    try:
        built['f'] = forward.function()
        built['g'] = backward.function()
    except PmlError as error:
        raise SynthesisFailed('f', str(error)) from None
    for name, make in (
            ('section', lambda: forward.section(built['f'], built['g'])),
            ('retraction',
             lambda: backward.section(built['g'], built['f']))):
        try:
            built[name] = make()
        except PmlError as error:
            raise SynthesisFailed(name, str(error)) from None
    equivalence = Equivalence(
        cfg.params, cfg.type_a, cfg.type_b, built['f'], built['g'],
        built['section'], built['retraction'])
    expected = equivalence_types(
        cfg.params, cfg.type_a, cfg.type_b, equivalence.f, equivalence.g)
    for name in COMPONENTS:
        try:
            check_type(
                env, Context(), getattr(equivalence, name), expected[name])
        except KernelError as error:
            raise SynthesisFailed(name, str(error)) from None
    logger.info('synthesized the equivalence of %s', cfg.name)
    return equivalence


def check_equivalence(
        env: GlobalEnv, equivalence: Equivalence,
        type_a: Optional[Term] = None, type_b: Optional[Term] = None,
        allow_assumptions: Optional[bool] = None) -> bool:
    """Whether all four components have their stated types."""
    type_a = equivalence.type_a if type_a is None else type_a
    type_b = equivalence.type_b if type_b is None else type_b
    if allow_assumptions is None:
        allow_assumptions = assumptions_allowed()
    expected = equivalence_types(
        equivalence.params, type_a, type_b, equivalence.f, equivalence.g)
    for name in COMPONENTS:
        term = getattr(equivalence, name)
        try:
            check_type(env, Context(), term, expected[name])
        except KernelError as error:
            logger.debug('%s does not check: %s', name, error)
            return False
        if not allow_assumptions and uses_assumptions(env, term):
            logger.debug('%s depends on assumptions', name)
            return False
    return True


def equivalence_names(name: str) -> Dict[str, str]:
    return {component: f'{name}.{component}' for component in COMPONENTS}


def register_equivalence(
        env: GlobalEnv, name: str, equivalence: Equivalence) -> GlobalEnv:
    """Declare `<name>.f`, `<name>.g`, `<name>.section`, `<name>.retraction`.

    The statements of the proofs refer to the declared functions.
    """
    names = equivalence_names(name)
    expected = equivalence_types(
        equivalence.params, equivalence.type_a, equivalence.type_b,
        ConstRef(names['f']), ConstRef(names['g']))
    for component in COMPONENTS:
        env = declare_definition(
            env, names[component], expected[component],
            getattr(equivalence, component))
    logger.info('registered the equivalence %s', name)
    return env
