"""
Transport of terms along a configuration.

Lifting walks a term over A. Annotated subterms and subterms matching a
role of A are replaced by the same role of B applied to the lifted
arguments; occurrences of A become B; everything else is rebuilt
homomorphically. The result is beta-iota reduced, which folds B's
dependent constructors and eliminators back into native ones wherever
they are definitional.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

from config.configuration import BACKWARD, FORWARD, Configuration
from kernel.env import Assumption, Context, Definition, GlobalEnv
from kernel.errors import PmlError
from kernel.reduction import beta_iota, whnf_pi
from kernel.substitution import instantiate_many, lift
from kernel.terms import (
    App,
    ConstRef,
    Elim,
    IndRef,
    Term,
    Var,
    apps,
    binders_at,
    bound_vars,
    children,
    global_names,
    lams,
    rebuild,
    unfold_app,
)
from kernel.typing import infer_type
from transform.cache import LiftCache, LiftStats
from transform.errors import TransformFailed
from transform.guard import (
    GuardState,
    build_guard,
    guard_termination,
    type_is_b,
)
from transform.unify import (
    DEP_CONSTR,
    DEP_ELIM,
    ETA,
    IOTA,
    TYPE_A,
    ConfigMatch,
    Unifier,
    annotated_match,
)

logger = logging.getLogger(__name__)

Path = Tuple[int, ...]
Annotations = Dict[Path, Tuple[str, Optional[int]]]


@dataclass(frozen=True)
class LiftRequest:
    """A term to transport, with annotations keyed by child-index path."""
    cfg: Configuration
    target: Term
    direction: str = FORWARD
    annotations: Annotations = field(default_factory=dict)

    @property
    def configuration(self) -> Configuration:
        if self.direction == BACKWARD:
            return self.cfg.reversed()
        return self.cfg


class Lifter:
    """Transports terms over A to terms over B.

    `renamed` maps constants already repaired to their new names and
    `on_dependency` is called with any other constant that mentions A;
    it returns the name to use instead.
    """

    def __init__(
            self, env: GlobalEnv, cfg: Configuration, *,
            annotations: Optional[Annotations] = None,
            renamed: Optional[Dict[str, str]] = None,
            on_dependency: Optional[Callable[[str], str]] = None,
            cache: Optional[LiftCache] = None,
            stats: Optional[LiftStats] = None,
            guard: Optional[GuardState] = None):
        self.env = env
        self.cfg = cfg
        self.annotations = dict(annotations or {})
        self.renamed = renamed if renamed is not None else {}
        self.on_dependency = on_dependency
        self.cache = cache
        self.stats = stats if stats is not None else LiftStats()
        self.guard = guard or build_guard(env, cfg)
        self.unifier = Unifier(env, cfg)
        self._depends: Dict[str, bool] = {}

    def lift(self, t: Term, ctx: Context = Context(),
             path: Optional[Path] = ()) -> Term:
        """Lift t without normalizing.

        Annotations apply to paths below `path`; pass None to ignore them.
        """
        return self._lift(t, ctx, path)

    def transport(self, t: Term, ctx: Context = Context(),
                  path: Optional[Path] = ()) -> Term:
        return beta_iota(self.env, self._lift(t, ctx, path))

    def depends_on_a(self, name: str) -> bool:
        """Whether the constant name mentions A, possibly through others."""
        if name in self._depends:
            return self._depends[name]
        self._depends[name] = False
        entry = self.env.get(name)
        names = set()
        if isinstance(entry, (Definition, Assumption)):
            names |= global_names(entry.type)
        if isinstance(entry, Definition):
            names |= global_names(entry.body)
        result = bool(names & self.guard.a_names) or any(
            self.depends_on_a(other) for other in names
            if other not in self.guard.b_constants)
        self._depends[name] = result
        return result

    # Traversal

    def _lift(self, t, ctx, path):
        annotated = None if path is None else self.annotations.get(path)
        if annotated is not None:
            role, index = annotated
            logger.debug('annotation %s %s at %s', role, index, path)
            match = annotated_match(role, index, t)
            return self._replace(match, ctx, path)

        if guard_termination(self.guard, t):
            self._guard_hit(t)
            return t

        key = None
        if self.cache is not None and not self._annotated_below(path):
            key = LiftCache.key(self.cfg.fingerprint, t, ctx)
            found = self.cache.get(key)
            if found is not None:
                self.stats.hits += 1
                return found
            self.stats.misses += 1

        result = self._lift_uncached(t, ctx, path)
        self.guard.remember(t, result)
        if key is not None:
            self.cache.put(key, result)
        return result

    def _guard_hit(self, t):
        self.guard.hit(t)
        self.stats.guard_hits += 1

    def _annotated_below(self, path):
        if path is None or not self.annotations:
            return False
        n = len(path)
        return any(p[:n] == path for p in self.annotations)

    def _lift_uncached(self, t, ctx, path):
        if self.guard.b_mentions_a and self._already_b(t, ctx):
            self._guard_hit(t)
            return t

        match = self.unifier.unify(ctx, t)
        if match is not None:
            logger.debug('rule %s', match)
            return self._replace(match, ctx, path)

        expanded = self._eta_expand(t, ctx)
        if expanded is not None:
            return self._lift(expanded, ctx, None)
        return self._homomorphic(t, ctx, path)

    def _already_b(self, t, ctx):
        if isinstance(t, Var):
            return False
        try:
            type = infer_type(self.env, ctx, t)
        except PmlError:
            return False
        return type_is_b(self.env, self.guard, type)

    def _missing_arguments(self, t):
        """How many arguments a rigid role head lacks, or zero."""
        head, args = unfold_app(t)
        if not isinstance(head, (IndRef, ConstRef)):
            return 0
        missing = [
            pattern.arity - len(args) for pattern in self.unifier.patterns
            if pattern.arity > len(args)
            and unfold_app(pattern.body)[0] == head]
        return min(missing, default=0)

    def _eta_expand(self, t, ctx):
        """fun x... => t x... when t is a role applied partially."""
        missing = self._missing_arguments(t)
        if not missing:
            return None
        binders, _ = whnf_pi(self.env, infer_type(self.env, ctx, t))
        if len(binders) < missing:
            return None
        binders = binders[:missing]
        body = apps(lift(t, missing), *bound_vars(
            missing, [name for name, _ in binders]))
        logger.debug('eta-expanded a partial application by %d', missing)
        return lams(binders, body)

    def _replace(self, match: ConfigMatch, ctx, path):
        lifted = []
        for arg, arg_path in zip(match.args, match.paths):
            if path is None or arg_path is None:
                lifted.append(self._lift(arg, ctx, None))
            else:
                lifted.append(self._lift(arg, ctx, path + arg_path))
        return self.component(match.role, match.index, lifted)

    def component(self, role, index, args):
        """B's counterpart of a role applied to lifted arguments."""
        side = self.cfg.b
        if role == DEP_CONSTR:
            return apps(side.constrs[index], *args)
        if role == DEP_ELIM:
            return apps(side.elim, *args)
        if role == ETA:
            return apps(side.eta, *args)
        if role == IOTA:
            return apps(side.iotas[index], *args)
        if role == TYPE_A:
            np = len(self.cfg.params)
            return apps(instantiate_many(side.type, args[:np]), *args[np:])
        raise TransformFailed((), f'unknown role {role}')

    def _homomorphic(self, t, ctx, path):
        if isinstance(t, ConstRef):
            return self._constant(t)
        kids = children(t)
        if not kids:
            return t
        lifted = []
        for i, kid in enumerate(kids):
            inner = ctx.push(t.name, t.domain) if binders_at(t, i) else ctx
            lifted.append(self._lift(
                kid, inner, None if path is None else path + (i,)))
        return rebuild(t, lifted)

    def _constant(self, t: ConstRef):
        if t.name in self.renamed:
            return ConstRef(self.renamed[t.name])
        if t.name in self.guard.b_constants:
            self._guard_hit(t)
            return t
        if self.on_dependency is not None and self.depends_on_a(t.name):
            return ConstRef(self.on_dependency(t.name))
        return t


def first_mention(t: Term, names, path: Path = ()) -> Optional[Path]:
    """Child-index path of the first reference to one of names."""
    if isinstance(t, (IndRef, ConstRef)) and t.name in names:
        return path
    for i, kid in enumerate(children(t)):
        found = first_mention(kid, names, path + (i,))
        if found is not None:
            return found
    return None


def nearest_application(t: Term, path: Path) -> Path:
    """The longest prefix of path ending at the root of an application."""
    nodes = [t]
    for step in path:
        nodes.append(children(nodes[-1])[step])
    for depth in range(len(path), -1, -1):
        node = nodes[depth]
        in_spine = depth > 0 and isinstance(nodes[depth - 1], App) \
            and path[depth - 1] == 0
        if isinstance(node, (App, Elim)) and not in_spine:
            return path[:depth]
    return ()


def transport(
        env: GlobalEnv, cfg: Configuration, t: Term, *,
        ctx: Context = Context(), annotations: Optional[Annotations] = None,
        cache: Optional[LiftCache] = None,
        stats: Optional[LiftStats] = None) -> Term:
    """Transport t from A to B and beta-iota reduce the result.

    Raises TransformFailed when the result is ill-typed or still refers
    to A, for instance through a constant over A that was not repaired.
    """
    lifter = Lifter(
        env, cfg, annotations=annotations, cache=cache, stats=stats)
    result = lifter.transport(t, ctx)
    check_transported(lifter, result, lift_context(lifter, ctx))
    return result


def lift_context(lifter: Lifter, ctx: Context) -> Context:
    """ctx with every binding type transported."""
    lifted = Context()
    for i, (name, type) in enumerate(ctx.entries):
        lifted = lifted.push(
            name, lifter.transport(type, Context(ctx.entries[:i]), None))
    return lifted


def check_transported(lifter: Lifter, result: Term, ctx: Context):
    """Fail unless result is a well-typed term over B."""
    a_names = lifter.guard.a_names
    b_names = global_names(lifter.cfg.type_b)
    strict = not lifter.guard.b_mentions_a and not a_names & b_names
    pending = [
        name for name in sorted(global_names(result))
        if strict and name not in a_names and name not in lifter.renamed
        and name not in lifter.guard.b_constants
        and lifter.depends_on_a(name)]
    try:
        type = infer_type(lifter.env, ctx, result)
    except PmlError as error:
        if pending:
            raise TransformFailed(
                first_mention(result, pending) or (),
                f'{pending[0]} mentions {", ".join(sorted(a_names))} and '
                f'was not transported; repair it first') from None
        raise TransformFailed(
            (), f'the transported term does not type check: {error}'
        ) from None
    if not strict:
        return
    for term in (result, type):
        path = first_mention(term, a_names)
        if path is not None:
            raise TransformFailed(
                path, f'the transported term still mentions '
                      f'{", ".join(sorted(a_names))}')


def run_request(env: GlobalEnv, request: LiftRequest, **kwargs) -> Term:
    return transport(
        env, request.configuration, request.target,
        annotations=request.annotations, **kwargs)
