"""
Eliminator schemes for inductive families.

Case types follow the usual layout: each inductive hypothesis comes
immediately after the recursive argument it is about.
"""

from typing import List, Sequence

from kernel.env import GlobalEnv, InductiveDecl
from kernel.reduction import recursive_binders
from kernel.substitution import instantiate_many, lift
from kernel.terms import (
    ConstrRef,
    Elim,
    IndRef,
    Pi,
    Sort,
    Term,
    Var,
    apps,
    bound_vars,
    lams,
    pis,
    strip_pis,
    unfold_app,
)


def indices_of(decl: InductiveDecl, params: Sequence[Term]):
    """Index binders and the sort of decl instantiated at params."""
    binders, sort = strip_pis(instantiate_many(decl.arity, params))
    return binders, sort


def motive_type(decl: InductiveDecl, params: Sequence[Term], level: int):
    """forall indices (x : I params indices), Type<level>."""
    binders, _ = indices_of(decl, params)
    count = len(binders)
    target = apps(
        IndRef(decl.name),
        *(lift(p, count) for p in params),
        *bound_vars(count, [name for name, _ in binders]))
    return pis(binders + [('x', target)], Sort(level))


def constructor_type(decl: InductiveDecl, params: Sequence[Term], j: int):
    return instantiate_many(decl.constructors[j][1], params)


def case_type(
        env: GlobalEnv, decl: InductiveDecl, params: Sequence[Term],
        motive: Term, j: int) -> Term:
    """Type of the j-th case of an elimination into motive."""
    rest = constructor_type(decl, params, j)
    binders = []
    arg_positions = []
    while True:
        rest = env.reducer.whnf(rest)
        if not isinstance(rest, Pi):
            break
        depth = len(binders)
        arg_positions.append(depth)
        binders.append((rest.name, rest.domain))
        nested = recursive_binders(env, rest.domain, decl.name)
        if nested is None:
            rest = rest.codomain
            continue
        inner_binders = []
        inner = env.reducer.whnf(lift(rest.domain, 1))
        while len(inner_binders) < len(nested):
            inner_binders.append((inner.name, inner.domain))
            inner = env.reducer.whnf(inner.codomain)
        k = len(inner_binders)
        _, inner_args = unfold_app(inner)
        indices = inner_args[len(decl.params):]
        hypothesis = pis(inner_binders, apps(
            lift(motive, depth + 1 + k),
            *indices,
            apps(Var(k, rest.name), *bound_vars(k))))
        binders.append(('IH' + rest.name, hypothesis))
        rest = lift(rest.codomain, 1)
    total = len(binders)
    _, result_args = unfold_app(rest)
    indices = result_args[len(decl.params):]
    arguments = [
        Var(total - 1 - position, binders[position][0])
        for position in arg_positions]
    constructor = apps(
        ConstrRef(j, apps(
            IndRef(decl.name), *(lift(p, total) for p in params))),
        *arguments)
    return pis(binders, apps(lift(motive, total), *indices, constructor))


def _scheme_binders(env: GlobalEnv, decl: InductiveDecl, level: int):
    binders = list(decl.params)
    nparams = len(binders)
    params = bound_vars(nparams, [name for name, _ in decl.params])
    binders.append(('P', motive_type(decl, params, level)))
    ncases = len(decl.constructors)
    for j in range(ncases):
        binders.append(('f' + str(j), case_type(
            env, decl, [lift(p, 1 + j) for p in params],
            Var(j, 'P'), j)))
    shifted = [lift(p, 1 + ncases) for p in params]
    index_binders, _ = indices_of(decl, shifted)
    binders.extend(index_binders)
    count = len(index_binders)
    target = apps(
        IndRef(decl.name),
        *(lift(p, count) for p in shifted),
        *bound_vars(count, [name for name, _ in index_binders]))
    binders.append(('x', target))
    return binders, nparams, ncases, count


def eliminator_type(env: GlobalEnv, name: str, level: int = 0) -> Term:
    """Closed type of the dependent eliminator of an inductive family."""
    decl = env.inductive(name)
    binders, _, ncases, count = _scheme_binders(env, decl, level)
    motive = Var(ncases + count + 1, 'P')
    return pis(binders, apps(motive, *bound_vars(count + 1)))


def eliminator_term(env: GlobalEnv, name: str, level: int = 0) -> Term:
    """The eliminator as a closed lambda whose type is eliminator_type."""
    decl = env.inductive(name)
    binders, _, ncases, count = _scheme_binders(env, decl, level)
    motive = Var(ncases + count + 1, 'P')
    cases = [Var(ncases + count - j, 'f' + str(j)) for j in range(ncases)]
    return lams(binders, Elim(Var(0, 'x'), motive, tuple(cases)))


def constructor_arity(env: GlobalEnv, decl: InductiveDecl, j: int) -> int:
    """Number of arguments of constructor j beyond the parameters."""
    params = bound_vars(len(decl.params))
    rest = constructor_type(decl, params, j)
    count = 0
    while True:
        rest = env.reducer.whnf(rest)
        if not isinstance(rest, Pi):
            return count
        count += 1
        rest = rest.codomain


def recursive_flags(env: GlobalEnv, decl: InductiveDecl, j: int) -> List[bool]:
    """For each argument of constructor j, whether it is recursive."""
    params = bound_vars(len(decl.params))
    rest = constructor_type(decl, params, j)
    flags = []
    while True:
        rest = env.reducer.whnf(rest)
        if not isinstance(rest, Pi):
            return flags
        flags.append(
            recursive_binders(env, rest.domain, decl.name) is not None)
        rest = rest.codomain
