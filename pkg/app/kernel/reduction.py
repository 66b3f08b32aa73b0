"""
Reduction and definitional equality.

`whnf` performs beta, iota (an eliminator applied to a constructor) and
delta (unfolding of non-opaque definitions) at the head of a term.
Ill-typed terms are never rejected here; they are returned stuck.
"""

import logging
import threading
from typing import List, Optional, Tuple

from kernel.env import Context, Definition, GlobalEnv
from kernel.substitution import instantiate, instantiate_many, lift
from kernel.terms import (
    App,
    Binder,
    ConstRef,
    ConstrRef,
    Elim,
    IndRef,
    Lambda,
    Pi,
    Sort,
    Term,
    Var,
    apps,
    bound_vars,
    lams,
    mentions,
    unfold_app,
)

logger = logging.getLogger(__name__)


class Reducer:
    """Memoized reduction for one environment."""

    def __init__(self, env: GlobalEnv):
        self.env = env
        self._lock = threading.Lock()
        self._whnf = ({}, {})
        self._normal = ({}, {})
        self._conv = {}

    def _remember(self, table, key, value):
        with self._lock:
            table[key] = value
        return value

    def whnf(self, t: Term, delta: bool = True) -> Term:
        table = self._whnf[delta]
        cached = table.get(t)
        if cached is not None:
            return cached
        return self._remember(table, t, self._whnf_step(t, delta))

    def _whnf_step(self, t, delta):
        while True:
            head, args = unfold_app(t)
            if isinstance(head, Lambda) and args:
                t = apps(instantiate(head.body, args[0]), *args[1:])
                continue
            if isinstance(head, Elim):
                scrutinee = self.whnf(head.scrutinee, delta)
                reduced = self.iota(head, scrutinee)
                if reduced is not None:
                    t = apps(reduced, *args)
                    continue
                if scrutinee is not head.scrutinee:
                    head = Elim(scrutinee, head.motive, head.cases)
                    return apps(head, *args)
                return t
            if isinstance(head, ConstRef) and delta:
                entry = self.env.get(head.name)
                if (isinstance(entry, Definition)
                        and head.name not in self.env.opaque):
                    t = apps(entry.body, *args)
                    continue
            return t

    def iota(self, elim: Elim, scrutinee: Term) -> Optional[Term]:
        """Fire the case for a constructor scrutinee, or None when stuck."""
        head, args = unfold_app(scrutinee)
        if not isinstance(head, ConstrRef):
            return None
        ind, params = unfold_app(head.inductive)
        if not isinstance(ind, IndRef):
            return None
        decl = self.env.get(ind.name)
        if decl is None or head.index >= len(decl.constructors):
            return None
        if len(elim.cases) != len(decl.constructors):
            return None
        ctype = instantiate_many(decl.constructors[head.index][1], params)
        case_args = []
        for arg in args:
            ctype = self.whnf(ctype)
            if not isinstance(ctype, Pi):
                return None
            case_args.append(arg)
            nested = recursive_binders(self.env, ctype.domain, ind.name)
            if nested is not None:
                case_args.append(
                    _inductive_hypothesis(arg, nested, elim))
            ctype = instantiate(ctype.codomain, arg)
        if isinstance(self.whnf(ctype), Pi):
            return None
        return apps(elim.cases[head.index], *case_args)

    def normalize(self, t: Term, delta: bool = True) -> Term:
        table = self._normal[delta]
        cached = table.get(t)
        if cached is not None:
            return cached
        return self._remember(table, t, self._normalize(t, delta))

    def _normalize(self, t, delta):
        head, args = unfold_app(self.whnf(t, delta))
        if isinstance(head, Lambda):
            head = Lambda(
                head.name,
                self.normalize(head.domain, delta),
                self.normalize(head.body, delta))
        elif isinstance(head, Pi):
            head = Pi(
                head.name,
                self.normalize(head.domain, delta),
                self.normalize(head.codomain, delta))
        elif isinstance(head, Elim):
            head = Elim(
                self.normalize(head.scrutinee, delta),
                self.normalize(head.motive, delta),
                tuple(self.normalize(case, delta) for case in head.cases))
        elif isinstance(head, ConstrRef):
            head = ConstrRef(
                head.index, self.normalize(head.inductive, delta))
        return apps(head, *(self.normalize(arg, delta) for arg in args))

    def conv(self, a: Term, b: Term) -> bool:
        if a == b:
            return True
        key = (a, b)
        if key in self._conv:
            return True
        result = self._conv_step(a, b)
        if result:
            self._remember(self._conv, key, True)
        return result

    def _conv_step(self, a, b):
        a0 = self.whnf(a, False)
        b0 = self.whnf(b, False)
        if a0 == b0:
            return True
        if self._same_constant_spine(a0, b0):
            return True
        a1 = self.whnf(a0)
        b1 = self.whnf(b0)
        if a1 == b1:
            return True
        return self._conv_whnf(a1, b1)

    def _same_constant_spine(self, a, b):
        head_a, args_a = unfold_app(a)
        head_b, args_b = unfold_app(b)
        return (
            isinstance(head_a, ConstRef) and head_a == head_b
            and len(args_a) == len(args_b)
            and all(self.conv(x, y) for x, y in zip(args_a, args_b)))

    def _conv_whnf(self, a, b):
        if isinstance(a, Sort) and isinstance(b, Sort):
            return a.level == b.level
        if isinstance(a, Pi) and isinstance(b, Pi):
            return (self.conv(a.domain, b.domain)
                    and self.conv(a.codomain, b.codomain))
        if isinstance(a, Lambda) and isinstance(b, Lambda):
            return self.conv(a.body, b.body)
        if isinstance(a, Lambda):
            return self.conv(a.body, App(lift(b, 1), Var(0)))
        if isinstance(b, Lambda):
            return self.conv(App(lift(a, 1), Var(0)), b.body)
        head_a, args_a = unfold_app(a)
        head_b, args_b = unfold_app(b)
        if len(args_a) != len(args_b) or not self._conv_head(head_a, head_b):
            return False
        return all(self.conv(x, y) for x, y in zip(args_a, args_b))

    def _conv_head(self, a, b):
        if isinstance(a, ConstrRef) and isinstance(b, ConstrRef):
            return a.index == b.index and self.conv(a.inductive, b.inductive)
        if isinstance(a, Elim) and isinstance(b, Elim):
            return (
                len(a.cases) == len(b.cases)
                and self.conv(a.scrutinee, b.scrutinee)
                and self.conv(a.motive, b.motive)
                and all(self.conv(x, y) for x, y in zip(a.cases, b.cases)))
        return a == b


def recursive_binders(
        env: GlobalEnv, domain: Term, name: str) -> Optional[List[Binder]]:
    """Binders y of a recursive argument type `forall y, name ...`.

    Returns None when the argument is not recursive.
    """
    if not mentions(domain, name):
        return None
    binders = []
    current = env.reducer.whnf(domain)
    while isinstance(current, Pi):
        binders.append((current.name, current.domain))
        current = env.reducer.whnf(current.codomain)
    head, _ = unfold_app(current)
    if isinstance(head, IndRef) and head.name == name:
        return binders
    return None


def _inductive_hypothesis(arg, nested, elim):
    count = len(nested)
    if count == 0:
        return Elim(arg, elim.motive, elim.cases)
    body = Elim(
        apps(lift(arg, count), *bound_vars(count)),
        lift(elim.motive, count),
        tuple(lift(case, count) for case in elim.cases))
    return lams(nested, body)


def whnf(env: GlobalEnv, ctx: Context, t: Term) -> Term:
    """Weak head normal form of t."""
    return env.reducer.whnf(t)


def normalize(env: GlobalEnv, ctx: Context, t: Term) -> Term:
    """Full normal form of t."""
    return env.reducer.normalize(t)


def beta_iota(env: GlobalEnv, t: Term) -> Term:
    """Normal form of t without unfolding any definition."""
    return env.reducer.normalize(t, delta=False)


def conv(env: GlobalEnv, ctx: Context, a: Term, b: Term) -> bool:
    """Definitional equality of a and b."""
    return env.reducer.conv(a, b)


def whnf_pi(env: GlobalEnv, t: Term) -> Tuple[List[Binder], Term]:
    """Peel Pi binders, reducing between them."""
    binders = []
    current = env.reducer.whnf(t)
    while isinstance(current, Pi):
        binders.append((current.name, current.domain))
        current = env.reducer.whnf(current.codomain)
    return binders, current
