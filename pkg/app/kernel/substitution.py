"""
Capture-free operations on de Bruijn terms.
"""

from typing import Sequence

from kernel.terms import (
    Pi,
    Term,
    Var,
    binders_at,
    children,
    rebuild,
)


def _map_children(t, fn, depth):
    kids = children(t)
    new = [fn(kid, depth + binders_at(t, i)) for i, kid in enumerate(kids)]
    if all(a is b for a, b in zip(kids, new)):
        return t
    return rebuild(t, new)


def lift(t: Term, by: int, cutoff: int = 0) -> Term:
    """Shift every variable at or above cutoff by `by`."""
    if by == 0 or t.loose <= cutoff:
        return t

    def go(term, depth):
        if term.loose <= depth:
            return term
        if isinstance(term, Var):
            return Var(term.index + by, term.name)
        return _map_children(term, go, depth)

    return go(t, cutoff)


def instantiate(body: Term, value: Term) -> Term:
    """Substitute value for the innermost bound variable of body."""
    return instantiate_many(body, [value])


def instantiate_many(body: Term, values: Sequence[Term]) -> Term:
    """Substitute values, outermost binder first, for the innermost binders."""
    count = len(values)
    if count == 0 or body.loose == 0:
        return body

    def go(term, depth):
        if term.loose <= depth:
            return term
        if isinstance(term, Var):
            offset = term.index - depth
            if offset < count:
                return lift(values[count - 1 - offset], depth)
            return Var(term.index - count, term.name)
        return _map_children(term, go, depth)

    return go(body, 0)


def has_loose(t: Term, index: int) -> bool:
    """Whether Var(index) occurs free in t."""
    def go(term, depth):
        if term.loose <= index + depth:
            return False
        if isinstance(term, Var):
            return term.index == index + depth
        return any(
            go(kid, depth + binders_at(term, i))
            for i, kid in enumerate(children(term)))

    return go(t, 0)


def occurs(t: Term, target: Term) -> bool:
    """Whether target (valid at the root of t) occurs inside t."""
    def go(term, depth):
        if term == (lift(target, depth) if depth else target):
            return True
        return any(
            go(kid, depth + binders_at(term, i))
            for i, kid in enumerate(children(term)))

    return go(t, 0)


def abstract(t: Term, target: Term, name: str = 'x') -> Term:
    """Return t under a fresh binder, with target replaced by that binder.

    The result is the body of a lambda or Pi whose bound variable stands
    for every occurrence of target in t.
    """
    shifted = lift(t, 1)
    pattern = lift(target, 1)

    def go(term, depth):
        if term == (lift(pattern, depth) if depth else pattern):
            return Var(depth, name)
        return _map_children(term, go, depth)

    return go(shifted, 0)


def lower(t: Term, by: int = 1) -> Term:
    """Inverse of lift for terms whose innermost `by` variables are unused."""
    if by == 0 or t.loose == 0:
        return t

    def go(term, depth):
        if term.loose <= depth:
            return term
        if isinstance(term, Var):
            if term.index - depth < by:
                raise ValueError('variable escapes its scope')
            return Var(term.index - by, term.name)
        return _map_children(term, go, depth)

    return go(t, 0)


def arrow(domain: Term, codomain: Term) -> Term:
    """Non-dependent function type; codomain is given outside the binder."""
    return Pi('_', domain, lift(codomain, 1))
