"""
Checked extension of global environments.
"""

import logging

from kernel.env import (
    Assumption,
    Context,
    Definition,
    GlobalEnv,
    InductiveDecl,
)
from kernel.errors import (
    DuplicateName,
    PositivityViolation,
    TypeCheckError,
    UniverseError,
)
from kernel.terms import (
    IndRef,
    Pi,
    Sort,
    Term,
    Var,
    global_names,
    mentions,
    unfold_app,
)

logger = logging.getLogger(__name__)


def _ensure_fresh(env: GlobalEnv, *names):
    for name in names:
        if name in env or env.constructor(name) is not None:
            raise DuplicateName(f'{name} is already declared')


def declare_inductive(env: GlobalEnv, decl: InductiveDecl) -> GlobalEnv:
    """Check decl against env and return env extended with it."""
    _ensure_fresh(env, decl.name, *decl.constructor_names)
    extended = env.extend(decl)
    checker = extended.checker
    reducer = extended.reducer

    ctx = Context()
    for name, ptype in decl.params:
        checker.sort_of(ctx, ptype)
        ctx = ctx.push(name, ptype)
    params_ctx = ctx

    checker.sort_of(params_ctx, decl.arity)
    arity = reducer.whnf(decl.arity)
    index_count = 0
    while isinstance(arity, Pi):
        index_count += 1
        arity = reducer.whnf(arity.codomain)
    if not isinstance(arity, Sort):
        raise UniverseError(f'the arity of {decl.name} must end in a sort')
    level = arity.level

    for cname, ctype in decl.constructors:
        _check_constructor(
            extended, decl, params_ctx, cname, ctype, level, index_count)

    logger.info(
        'declared inductive %s with %d constructors',
        decl.name, len(decl.constructors))
    return extended


def _check_constructor(env, decl, ctx, cname, ctype, level, index_count):
    checker = env.checker
    reducer = env.reducer
    nparams = len(decl.params)
    checker.sort_of(ctx, ctype)
    rest = reducer.whnf(ctype)
    while isinstance(rest, Pi):
        if mentions(rest.domain, decl.name):
            _check_positive(env, decl, ctx, cname, rest.domain)
        arg_level = checker.sort_of(ctx, rest.domain)
        if arg_level > level:
            raise UniverseError(
                f'argument of {cname} lives in Type{arg_level}, above '
                f'Type{level} of {decl.name}')
        ctx = ctx.push(rest.name, rest.domain)
        rest = reducer.whnf(rest.codomain)
    _check_result(decl, ctx, cname, rest, nparams, index_count)


def _check_positive(env, decl, ctx, cname, domain):
    reducer = env.reducer
    current = reducer.whnf(domain)
    while isinstance(current, Pi):
        if mentions(current.domain, decl.name):
            raise PositivityViolation(
                f'{decl.name} occurs negatively in constructor {cname}')
        ctx = ctx.push(current.name, current.domain)
        current = reducer.whnf(current.codomain)
    _check_result(decl, ctx, cname, current, len(decl.params), None)


def _check_result(decl, ctx, cname, result, nparams, index_count):
    head, args = unfold_app(result)
    if not isinstance(head, IndRef) or head.name != decl.name:
        if mentions(result, decl.name):
            raise PositivityViolation(
                f'{decl.name} occurs in a non strictly positive position '
                f'in constructor {cname}')
        raise TypeCheckError(
            f'constructor {cname} must build {decl.name}')
    depth = len(ctx)
    expected = [depth - 1 - i for i in range(nparams)]
    params = args[:nparams]
    if params != [Var(index) for index in expected]:
        raise TypeCheckError(
            f'{decl.name} must be applied to its parameters in {cname}')
    indices = args[nparams:]
    if index_count is not None and len(indices) != index_count:
        raise TypeCheckError(
            f'constructor {cname} gives {len(indices)} indices to '
            f'{decl.name}')
    if any(mentions(index, decl.name) for index in indices):
        raise PositivityViolation(
            f'{decl.name} occurs in an index of constructor {cname}')


def declare_definition(
        env: GlobalEnv, name: str, type: Term, body: Term) -> GlobalEnv:
    """Check body against type and return env extended with the definition."""
    _ensure_fresh(env, name)
    ctx = Context()
    env.checker.sort_of(ctx, type)
    env.checker.check(ctx, body, type)
    logger.debug('declared definition %s', name)
    return env.extend(Definition(name, type, body))


def declare_assumption(env: GlobalEnv, name: str, type: Term) -> GlobalEnv:
    _ensure_fresh(env, name)
    env.checker.sort_of(Context(), type)
    logger.debug('declared assumption %s', name)
    return env.extend(Assumption(name, type))


def uses_assumptions(env: GlobalEnv, t: Term) -> frozenset:
    """Assumptions t depends on, through definitions."""
    seen = set()
    found = set()
    pending = list(global_names(t))
    while pending:
        name = pending.pop()
        if name in seen:
            continue
        seen.add(name)
        entry = env.get(name)
        if isinstance(entry, Assumption):
            found.add(name)
        elif isinstance(entry, Definition):
            pending.extend(global_names(entry.body))
            pending.extend(global_names(entry.type))
    return frozenset(found)
