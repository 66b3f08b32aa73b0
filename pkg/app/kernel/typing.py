"""
Type inference.

Errors carry the child-index path from the checked term to the subterm
at fault (see `kernel.terms.children` for the numbering).
"""

import logging
import threading
from typing import Sequence

from kernel.env import Assumption, Context, Definition, GlobalEnv
from kernel.errors import KernelError, TypeCheckError, UnknownName
from kernel.inductive import case_type, motive_type
from kernel.substitution import instantiate, instantiate_many
from kernel.terms import (
    App,
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
    unfold_app,
)

logger = logging.getLogger(__name__)


class TypeChecker:
    """Memoized type inference for one environment."""

    def __init__(self, env: GlobalEnv):
        self.env = env
        self.reducer = env.reducer
        self._lock = threading.Lock()
        self._types = {}

    def infer(self, ctx: Context, t: Term, path=()) -> Term:
        key = (ctx.entries, t)
        cached = self._types.get(key)
        if cached is not None:
            return cached
        result = self._infer(ctx, t, tuple(path))
        with self._lock:
            self._types[key] = result
        return result

    def check(self, ctx: Context, t: Term, expected: Term, path=()):
        actual = self.infer(ctx, t, path)
        if not self.reducer.conv(actual, expected):
            raise TypeCheckError(
                f'{t} has type {actual} but {expected} was expected', path)

    def sort_of(self, ctx: Context, t: Term, path=()) -> int:
        """Universe level of the type t."""
        sort = self.reducer.whnf(self.infer(ctx, t, path))
        if not isinstance(sort, Sort):
            raise TypeCheckError(f'{t} is not a type', path)
        return sort.level

    def _infer(self, ctx, t, path):
        if isinstance(t, Var):
            if t.index >= len(ctx):
                raise TypeCheckError(f'unbound variable #{t.index}', path)
            return ctx.lookup(t.index)
        if isinstance(t, Sort):
            return Sort(t.level + 1)
        if isinstance(t, Pi):
            domain = self.sort_of(ctx, t.domain, path + (0,))
            codomain = self.sort_of(
                ctx.push(t.name, t.domain), t.codomain, path + (1,))
            return Sort(max(domain, codomain))
        if isinstance(t, Lambda):
            self.sort_of(ctx, t.domain, path + (0,))
            body = self.infer(ctx.push(t.name, t.domain), t.body, path + (1,))
            return Pi(t.name, t.domain, body)
        if isinstance(t, App):
            return self._infer_app(ctx, t, path)
        if isinstance(t, IndRef):
            return self.env.inductive(t.name).type
        if isinstance(t, ConstrRef):
            return self._infer_constructor(ctx, t, path)
        if isinstance(t, ConstRef):
            entry = self.env.get(t.name)
            if not isinstance(entry, (Definition, Assumption)):
                raise UnknownName(f'{t.name} is not a constant')
            return entry.type
        if isinstance(t, Elim):
            return self._infer_elim(ctx, t, path)
        raise TypeCheckError(f'unknown term {t!r}', path)

    def _infer_app(self, ctx, t, path):
        fn_type = self.reducer.whnf(self.infer(ctx, t.fn, path + (0,)))
        if not isinstance(fn_type, Pi):
            raise TypeCheckError(
                f'{t.fn} is applied but has type {fn_type}', path + (0,))
        self.check(ctx, t.arg, fn_type.domain, path + (1,))
        return instantiate(fn_type.codomain, t.arg)

    def _inductive_params(self, ctx, family, path):
        head, args = unfold_app(family)
        if not isinstance(head, IndRef):
            raise TypeCheckError(f'{family} is not an inductive type', path)
        decl = self.env.inductive(head.name)
        return decl, args

    def _check_params(self, ctx, decl, params: Sequence[Term], path):
        for i, (name, ptype) in enumerate(decl.params):
            self.check(
                ctx, params[i], instantiate_many(ptype, params[:i]), path)

    def _infer_constructor(self, ctx, t, path):
        decl, params = self._inductive_params(ctx, t.inductive, path + (0,))
        if len(params) != len(decl.params):
            raise TypeCheckError(
                f'constructor of {decl.name} expects {len(decl.params)} '
                f'parameters, got {len(params)}', path + (0,))
        if not 0 <= t.index < len(decl.constructors):
            raise TypeCheckError(
                f'{decl.name} has no constructor {t.index}', path)
        self._check_params(ctx, decl, params, path + (0,))
        return instantiate_many(decl.constructors[t.index][1], params)

    def _infer_elim(self, ctx, t, path):
        scrutinee_type = self.reducer.whnf(
            self.infer(ctx, t.scrutinee, path + (0,)))
        decl, args = self._inductive_params(
            ctx, scrutinee_type, path + (0,))
        nparams = len(decl.params)
        params, indices = args[:nparams], args[nparams:]
        if len(t.cases) != len(decl.constructors):
            raise TypeCheckError(
                f'eliminator over {decl.name} expects '
                f'{len(decl.constructors)} cases, got {len(t.cases)}', path)
        level = self._motive_level(ctx, t.motive, len(indices) + 1, path)
        expected = motive_type(decl, params, level)
        self.check(ctx, t.motive, expected, path + (1,))
        for j, case in enumerate(t.cases):
            self.check(
                ctx, case, case_type(self.env, decl, params, t.motive, j),
                path + (2 + j,))
        return apps(t.motive, *indices, t.scrutinee)

    def _motive_level(self, ctx, motive, arity, path):
        current = self.reducer.whnf(self.infer(ctx, motive, path + (1,)))
        for _ in range(arity):
            if not isinstance(current, Pi):
                break
            current = self.reducer.whnf(current.codomain)
        if not isinstance(current, Sort):
            raise TypeCheckError(
                f'motive {motive} does not end in a sort', path + (1,))
        return current.level


def infer_type(env: GlobalEnv, ctx: Context, t: Term) -> Term:
    """Principal type of t under ctx."""
    return env.checker.infer(ctx, t)


def check_type(env: GlobalEnv, ctx: Context, t: Term, expected: Term):
    """Raise TypeCheckError unless t has a type convertible with expected."""
    env.checker.check(ctx, t, expected)


def is_well_typed(env: GlobalEnv, ctx: Context, t: Term) -> bool:
    try:
        env.checker.infer(ctx, t)
    except KernelError:
        return False
    return True


def alpha_eq(a: Term, b: Term) -> bool:
    """Structural equality ignoring binder names."""
    return a == b

