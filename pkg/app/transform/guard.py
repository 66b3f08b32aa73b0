"""
Termination guard for configurations whose B refers back to A.

When B unfolds to a term mentioning A (nat against sigT nat unit), the
parts of B that mention A must not be transformed again: transforming
them yields more B, whose unfolding mentions A, and so on. The guard
keeps such terms unchanged and counts each time it does.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Set

from config.configuration import Configuration
from kernel.env import Assumption, Definition, GlobalEnv
from kernel.matching import match_pattern
from kernel.terms import (
    ConstRef,
    Sort,
    Term,
    Var,
    children,
    global_names,
    unfold_app,
)

logger = logging.getLogger(__name__)


def head_name(t: Term) -> Optional[str]:
    head, _ = unfold_app(t)
    return getattr(head, 'name', None) if not isinstance(head, Var) else None


def subterms(t: Term):
    stack = [t]
    while stack:
        current = stack.pop()
        yield current
        stack.extend(children(current))


@dataclass
class GuardState:
    """What the transformation must leave alone.

    b_constants are constants of B's interface, b_subterms the pieces of
    B's unfolding that mention A, and produced the terms this
    transformation already returned.
    """
    a_names: frozenset
    b_constants: frozenset = frozenset()
    b_subterms: frozenset = frozenset()
    b_unfolding: Optional[Term] = None
    nparams: int = 0
    produced: Set[Term] = field(default_factory=set)
    hits: int = 0

    @property
    def b_mentions_a(self):
        return self.b_unfolding is not None

    def hit(self, t: Term):
        self.hits += 1
        logger.debug('guard keeps %s', t)

    def remember(self, source: Term, result: Term):
        if result != source and not isinstance(result, (Var, Sort)):
            self.produced.add(result)


def guard_termination(state: GuardState, t: Term) -> bool:
    """Whether t must be kept as it is.

    Holds for a term this transformation produced, for a constant of B's
    interface and for a piece of B's unfolding that mentions A.
    """
    if t in state.produced:
        return True
    if isinstance(t, ConstRef) and t.name in state.b_constants:
        return True
    return state.b_mentions_a and t in state.b_subterms


def type_is_b(env: GlobalEnv, state: GuardState, type: Term) -> bool:
    """Whether a type is B itself, seen through its unfolding."""
    if not state.b_mentions_a:
        return False
    unfolded = env.reducer.whnf(type)
    return match_pattern(
        state.b_unfolding, unfolded, state.nparams) is not None


def build_guard(env: GlobalEnv, cfg: Configuration) -> GuardState:
    a_names = frozenset(
        name for name in [head_name(cfg.type_a)] if name is not None)
    b_constants = set()
    b_head = head_name(cfg.type_b)
    if isinstance(unfold_app(cfg.type_b)[0], ConstRef):
        b_constants.add(b_head)
    b_side = cfg.b
    components = (
        list(b_side.constrs) + [b_side.elim, b_side.eta, b_side.eta_ok]
        + list(b_side.iotas))
    for component in components:
        for name in global_names(component):
            entry = env.get(name)
            if isinstance(entry, (Definition, Assumption)) and b_head \
                    and b_head in global_names(entry.type):
                b_constants.add(name)
    b_constants -= a_names

    reducer = env.reducer
    unfolded = reducer.normalize(cfg.type_b)
    mentioned = global_names(unfolded) & a_names
    if not mentioned:
        return GuardState(a_names, frozenset(b_constants))
    pieces = frozenset(
        piece for piece in subterms(unfolded)
        if global_names(piece) & a_names and piece != cfg.type_a)
    logger.info(
        '%s unfolds to a term mentioning %s; guarding %d subterms',
        cfg.type_b, ', '.join(sorted(mentioned)), len(pieces))
    return GuardState(
        a_names, frozenset(b_constants), pieces,
        reducer.whnf(cfg.type_b), len(cfg.params))
