"""
Recognition of configuration roles in terms over A.

Every A-side component of a configuration is turned into a pattern by
eta-reducing it and stripping its lambdas; the stripped binders become
metavariables. A term matches a role when a prefix of its application
spine is an instance of the pattern; the remaining arguments are kept as
extra arguments of the role.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from config.configuration import Configuration
from kernel.env import Context, GlobalEnv
from kernel.errors import PmlError
from kernel.matching import eta_reduce, match_pattern
from kernel.reduction import whnf
from kernel.terms import (
    Term,
    Var,
    apps,
    binders_at,
    children,
    strip_lams,
    unfold_app,
)
from kernel.typing import infer_type

logger = logging.getLogger(__name__)

DEP_CONSTR = 'DepConstr'
DEP_ELIM = 'DepElim'
ETA = 'Eta'
IOTA = 'Iota'
TYPE_A = 'TypeA'

ROLES = (DEP_CONSTR, DEP_ELIM, ETA, IOTA, TYPE_A)
INDEXED_ROLES = (DEP_CONSTR, IOTA)


def spine_paths(nargs: int):
    """Child-index paths from an application to its head and arguments."""
    head = (0,) * nargs
    args = [(0,) * (nargs - 1 - i) + (1,) for i in range(nargs)]
    return head, args


@dataclass(frozen=True)
class ConfigMatch:
    """A role found in a term.

    `args` are the arguments of the role in binder order, parameters
    first, followed by any extra arguments of the application.
    `paths` locate each argument inside the matched term, or are None
    for parameters recovered from a type.
    """
    role: str
    index: Optional[int]
    args: Tuple[Term, ...]
    paths: Tuple[Optional[Tuple[int, ...]], ...] = ()

    def __str__(self):
        if self.index is None:
            return self.role
        return f'{self.role} {self.index}'


@dataclass(frozen=True)
class Pattern:
    role: str
    index: Optional[int]
    body: Term
    nvars: int
    arity: int

    @classmethod
    def of(cls, role, index, component: Term, nvars=None):
        if nvars is None:
            binders, body = strip_lams(eta_reduce(component))
            nvars = len(binders)
        else:
            body = component
        _, args = unfold_app(body)
        return cls(role, index, body, nvars, len(args))

    def slot_paths(self):
        """Where each metavariable occurs outside any binder of the body."""
        found = {}

        def walk(t, path, depth):
            if isinstance(t, Var):
                if depth == 0 and t.index < self.nvars:
                    found.setdefault(self.nvars - 1 - t.index, path)
                return
            for i, kid in enumerate(children(t)):
                walk(kid, path + (i,), depth + binders_at(t, i))

        walk(self.body, (), 0)
        return [found.get(slot) for slot in range(self.nvars)]

    @property
    def flexible(self):
        """Whether the head is a metavariable, as for an identity."""
        head, _ = unfold_app(self.body)
        return isinstance(head, Var) and head.index < self.nvars


def role_patterns(cfg: Configuration) -> List[Pattern]:
    """Rigid patterns of the A side, constructors first, TypeA last."""
    patterns = [
        Pattern.of(DEP_CONSTR, j, constr)
        for j, constr in enumerate(cfg.constr_a)]
    patterns.append(Pattern.of(DEP_ELIM, None, cfg.elim_a))
    patterns.append(Pattern.of(ETA, None, cfg.eta_a))
    patterns.extend(
        Pattern.of(IOTA, j, iota) for j, iota in enumerate(cfg.iota_a))
    patterns.append(
        Pattern.of(TYPE_A, None, cfg.type_a, nvars=len(cfg.params)))
    return [pattern for pattern in patterns if not pattern.flexible]


class Unifier:
    """Matches terms against the roles of one configuration."""

    def __init__(self, env: GlobalEnv, cfg: Configuration):
        self.env = env
        self.cfg = cfg
        self.np = len(cfg.params)
        self.patterns = role_patterns(cfg)
        self.type_pattern = Pattern.of(
            TYPE_A, None, cfg.type_a, nvars=self.np)

    def params_of_type(self, ctx: Context, t: Term) -> Optional[List[Term]]:
        """The parameters making type_a the type of t."""
        try:
            type = infer_type(self.env, ctx, t)
        except PmlError:
            return None
        for candidate in (type, whnf(self.env, ctx, type)):
            solution = match_pattern(
                self.type_pattern.body, candidate, self.np)
            if solution is not None and None not in solution:
                return solution
        return None

    def unify(self, ctx: Context, t: Term) -> Optional[ConfigMatch]:
        head, args = unfold_app(t)
        for pattern in self.patterns:
            if len(args) < pattern.arity:
                continue
            candidate = apps(head, *args[:pattern.arity])
            solution = match_pattern(pattern.body, candidate, pattern.nvars)
            if solution is None:
                continue
            if None in solution or (
                    solution and pattern.role in (DEP_ELIM, ETA)):
                solution = self._complete(ctx, pattern, solution)
                if solution is None:
                    continue
            extras = args[pattern.arity:]
            logger.debug('matched %s with %d extra arguments',
                         pattern.role, len(extras))
            return ConfigMatch(
                pattern.role, pattern.index,
                tuple(solution) + tuple(extras),
                self._paths(pattern, len(args)))
        return None

    def _paths(self, pattern, nargs):
        _, spine = spine_paths(nargs)
        root = (0,) * (nargs - pattern.arity)
        slots = [
            None if path is None else root + path
            for path in pattern.slot_paths()]
        return tuple(slots) + tuple(spine[pattern.arity:])

    def _complete(self, ctx, pattern, solution):
        """Check the target has type A and fill unmentioned parameters.

        The target of an eliminator or of Eta is its last argument.
        """
        if pattern.role not in (DEP_ELIM, ETA) or solution[-1] is None:
            return None
        params = self.params_of_type(ctx, solution[-1])
        if params is None:
            return None
        filled = list(solution)
        for i, value in enumerate(params):
            if filled[i] is None:
                filled[i] = value
        return None if None in filled else filled


def unify_config(
        env: GlobalEnv, cfg: Configuration, t: Term,
        ctx: Context = Context()) -> Optional[ConfigMatch]:
    """The configuration role t is an instance of, if any."""
    return Unifier(env, cfg).unify(ctx, t)


def annotated_match(
        role: str, index: Optional[int], t: Term) -> ConfigMatch:
    """An annotation forces the role; every spine argument is an argument."""
    _, args = unfold_app(t)
    _, paths = spine_paths(len(args))
    return ConfigMatch(role, index, tuple(args), tuple(paths))