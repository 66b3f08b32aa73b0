"""
Types the components of a configuration must inhabit.

Every obligation is stated for one side of a configuration and is
closed: it quantifies over the parameters first. Inductive hypotheses
are stated about `Eta x`, so an eliminator that only computes up to Eta
still fits.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from config.equality import eq_type, rew_bwd
from kernel.env import Context, GlobalEnv
from kernel.errors import TypeCheckError
from kernel.reduction import conv, whnf_pi
from kernel.substitution import arrow, instantiate_many, lift
from kernel.telescope import Telescope
from kernel.terms import App, Binder, Sort, Term, apps, pis
from kernel.typing import infer_type


@dataclass(frozen=True)
class Signature:
    """Arguments of a dependent constructor after the parameters.

    Each binder type is open under the parameters and the earlier
    arguments. An argument is recursive when its type is the family
    itself.
    """
    binders: Tuple[Binder, ...]
    recursive: Tuple[bool, ...]
    result: Term

    @property
    def arity(self):
        return len(self.binders)


class Obligations:
    """Builds obligation types and helper terms for one side."""

    def __init__(self, env: GlobalEnv, cfg, label: str):
        self.env = env
        self.cfg = cfg
        self.label = label
        self.side = cfg.side(label)
        self.np = len(cfg.params)
        self._signatures: Dict[int, Signature] = {}

    # Telescope helpers. Parameters always occupy the first levels.

    def start(self) -> Telescope:
        tel = Telescope()
        tel.extend(self.cfg.params)
        return tel

    def params(self, tel: Telescope) -> List[Term]:
        return tel.vars(range(self.np))

    def family(self, tel: Telescope) -> Term:
        return instantiate_many(self.side.type, self.params(tel))

    def at(self, tel: Telescope, component: Term, *args: Term) -> Term:
        """A closed component applied to the parameters, then args."""
        return apps(component, *self.params(tel), *args)

    def eta(self, tel, t):
        return self.at(tel, self.side.eta, t)

    def constr(self, tel, j, args):
        return self.at(tel, self.side.constrs[j], *args)

    def dep_elim(self, tel, motive, cases, target):
        return self.at(
            tel, self.side.elim, tel.var(motive), *tel.vars(cases), target)

    # Constructors

    def signature(self, j: int) -> Signature:
        if j not in self._signatures:
            self._signatures[j] = self._signature(j)
        return self._signatures[j]

    def _signature(self, j):
        ctype = infer_type(self.env, Context(), self.side.constrs[j])
        binders, result = whnf_pi(self.env, ctype)
        if len(binders) < self.np:
            raise TypeCheckError(
                f'dep_constr_{self.label}.{j} does not take the '
                f'{self.np} parameters')
        args = binders[self.np:]
        recursive = tuple(
            conv(self.env, Context(), type, lift(self.side.type, i))
            for i, (_, type) in enumerate(args))
        return Signature(tuple(args), recursive, result)

    def constructor_type(self, j: int) -> Term:
        """forall params x..., type: what dep_constr j must have."""
        sig = self.signature(j)
        return pis(
            tuple(self.cfg.params) + sig.binders,
            lift(self.side.type, sig.arity))

    def bind_arguments(self, tel: Telescope, j: int, hypothesis=None):
        """Bind the arguments of constructor j.

        When `hypothesis` is given, each recursive argument is followed by
        an inductive hypothesis whose type is hypothesis(tel, level of the
        argument). Returns the argument levels and, per argument, the
        hypothesis level or None.
        """
        sig = self.signature(j)
        xs, ihs = [], []
        for i, (name, raw) in enumerate(sig.binders):
            type = instantiate_many(raw, self.params(tel) + tel.vars(xs))
            xs.append(tel.bind(name, type))
            if hypothesis is None or not sig.recursive[i]:
                ihs.append(None)
                continue
            ihs.append(tel.bind(
                'IH' + name.strip('_'), hypothesis(tel, xs[-1])))
        return xs, ihs

    def eta_hypothesis(self, motive: int):
        """IH : P (Eta x) for the motive bound at level motive."""
        def build(tel, level):
            return App(tel.var(motive), self.eta(tel, tel.var(level)))
        return build

    def case_type(self, tel: Telescope, j: int, motive: int) -> Term:
        depth = len(tel)
        xs, _ = self.bind_arguments(tel, j, self.eta_hypothesis(motive))
        body = App(tel.var(motive), self.constr(tel, j, tel.vars(xs)))
        return tel.pis(body, depth)

    def bind_eliminator_inputs(self, tel: Telescope):
        """Bind P : family -> Type0 and one case per constructor."""
        motive = tel.bind('P', arrow(self.family(tel), Sort(0)))
        cases = []
        for j in range(self.cfg.ncases):
            case = self.case_type(tel, j, motive)
            cases.append(tel.bind('f' + str(j), case))
        return motive, cases

    # Obligations

    def elim_eta_type(self) -> Term:
        tel = self.start()
        motive, _ = self.bind_eliminator_inputs(tel)
        target = tel.bind('a', self.family(tel))
        return tel.pis(
            App(tel.var(motive), self.eta(tel, tel.var(target))))

    def eta_type(self) -> Term:
        tel = self.start()
        tel.bind('a', self.family(tel))
        return tel.pis(self.family(tel))

    def eta_ok_type(self) -> Term:
        tel = self.start()
        target = tel.bind('a', self.family(tel))
        return tel.pis(eq_type(
            self.family(tel), self.eta(tel, tel.var(target)),
            tel.var(target)))

    def iota_type(self, j: int) -> Term:
        """forall params P f... x... (Q : P (Eta c) -> Type0),
        Q (rew <- eta_ok c in f_j x... ) -> Q (DepElim c P f...)

        where c is dep_constr j applied to x... and each inductive
        hypothesis given to f_j is DepElim of the recursive argument.
        """
        tel = self.start()
        motive, cases = self.bind_eliminator_inputs(tel)
        xs, _ = self.bind_arguments(tel, j)
        sig = self.signature(j)

        def built():
            return self.constr(tel, j, tel.vars(xs))

        q = tel.bind('Q', arrow(
            App(tel.var(motive), self.eta(tel, built())), Sort(0)))
        case_args = []
        for i, level in enumerate(xs):
            case_args.append(tel.var(level))
            if sig.recursive[i]:
                case_args.append(
                    self.dep_elim(tel, motive, cases, tel.var(level)))
        value = apps(tel.var(cases[j]), *case_args)
        rewritten = rew_bwd(
            self.family(tel), self.at(tel, self.side.eta), tel.var(motive),
            built(), self.at(tel, self.side.eta_ok, built()), value)
        tel.bind('h', App(tel.var(q), rewritten))
        return tel.pis(App(
            tel.var(q), self.dep_elim(tel, motive, cases, built())))


def constructor_signature(env, cfg, label, j) -> Signature:
    return Obligations(env, cfg, label).signature(j)


def elim_eta_type(env, cfg, label) -> Term:
    return Obligations(env, cfg, label).elim_eta_type()


def eta_type(env, cfg, label) -> Term:
    return Obligations(env, cfg, label).eta_type()


def eta_ok_type(env, cfg, label) -> Term:
    return Obligations(env, cfg, label).eta_ok_type()


def iota_type(env, cfg, label, j) -> Term:
    return Obligations(env, cfg, label).iota_type(j)
