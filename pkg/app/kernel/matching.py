"""
First-order matching and eta-reduction.
"""

from typing import List, Optional

from kernel.substitution import lower
from kernel.terms import (
    App,
    ConstRef,
    ConstrRef,
    Elim,
    IndRef,
    Lambda,
    Sort,
    Term,
    Var,
    binders_at,
    children,
)


def match_pattern(
        pattern: Term, term: Term, nvars: int) -> Optional[List[Term]]:
    """Solve the innermost nvars variables of pattern so that it equals term.

    pattern lives under nvars extra binders (the metavariables); term lives
    outside them. Returns the solutions outermost first, with None for a
    metavariable the pattern does not mention, or None when there is no
    syntactic match.
    """
    solution: List[Optional[Term]] = [None] * nvars

    def go(p, t, depth):
        if isinstance(p, Var):
            if p.index < depth:
                return isinstance(t, Var) and t.index == p.index
            if p.index < depth + nvars:
                try:
                    value = lower(t, depth)
                except ValueError:
                    return False
                slot = nvars - 1 - (p.index - depth)
                if solution[slot] is None:
                    solution[slot] = value
                    return True
                return solution[slot] == value
            return isinstance(t, Var) and t.index == p.index - nvars
        if type(p) is not type(t):
            return False
        if isinstance(p, Sort):
            return p.level == t.level
        if isinstance(p, (IndRef, ConstRef)):
            return p.name == t.name
        if isinstance(p, ConstrRef) and p.index != t.index:
            return False
        if isinstance(p, Elim) and len(p.cases) != len(t.cases):
            return False
        if p.loose <= depth:
            return p == t
        return all(
            go(pk, tk, depth + binders_at(p, i))
            for i, (pk, tk) in enumerate(zip(children(p), children(t))))

    if not go(pattern, term, 0):
        return None
    return solution


def eta_reduce(t: Term) -> Term:
    """Remove outer lambdas of the form fun x => f x where x is unused in f."""
    body = t
    count = 0
    while isinstance(body, Lambda):
        body = body.body
        count += 1
    if count == 0:
        return t
    reduced = _eta_spine(body, count)
    return t if reduced is None else reduced


def _eta_spine(body, count):
    # The last `count` arguments must be Var(count - 1) ... Var(0).
    args = []
    head = body
    while isinstance(head, App) and len(args) < count:
        args.append(head.arg)
        head = head.fn
    if len(args) != count:
        return None
    if any(arg != Var(i) for i, arg in enumerate(args)):
        return None
    try:
        return lower(head, count)
    except ValueError:
        return None
