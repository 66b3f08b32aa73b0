"""
Repair of definitions and modules along a configuration.
"""

import logging
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Dict, List, Optional, Sequence

from config.configuration import Configuration
from kernel.declarations import declare_definition
from kernel.env import Assumption, Definition, GlobalEnv
from kernel.errors import KernelError, TypeCheckError
from kernel.reduction import beta_iota
from kernel.terms import Term, children, global_names
from transform.cache import (
    LiftCache,
    LiftStats,
    caching_enabled,
    load_repaired,
    repaired_key,
    store_repaired,
)
from transform.errors import (
    DependencyError,
    TerminationGuardTriggered,
    TransformFailed,
)
from transform.guard import build_guard, head_name
from transform.lift import (
    Annotations,
    Lifter,
    first_mention,
    nearest_application,
)
from transform.unify import IOTA

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RepairResult:
    name: str
    new_name: str
    type: Term
    body: Term
    env: GlobalEnv

    @property
    def changed(self):
        return self.name != self.new_name


def derive_name(name: str, type_a: str, type_b: str) -> str:
    """Old.rev -> New.rev for Old.list ~ New.list, else add -> add_N."""
    prefix_a, _, _ = type_a.rpartition('.')
    prefix_b, _, short_b = type_b.rpartition('.')
    if prefix_a and prefix_b and name.startswith(prefix_a + '.'):
        return prefix_b + name[len(prefix_a):]
    return f'{name}_{short_b or type_b}'


class Repairer:
    """Repairs definitions one after another, sharing caches.

    Constants a repaired definition depends on are repaired first when
    they mention A; constants that do not are reused as they are.
    """

    def __init__(
            self, env: GlobalEnv, cfg: Configuration, *,
            annotations: Optional[Dict[str, Annotations]] = None,
            use_cache: Optional[bool] = None):
        self.env = env
        self.cfg = cfg
        self.annotations = annotations or {}
        if use_cache is None:
            use_cache = caching_enabled()
        self.use_cache = use_cache
        self.cache = LiftCache() if use_cache else None
        self.stats = LiftStats()
        self.guard = build_guard(env, cfg)
        self.renamed: Dict[str, str] = {}
        self.results: List[RepairResult] = []
        self._in_progress: List[str] = []
        self.type_a = head_name(cfg.type_a) or cfg.name
        self.type_b = head_name(cfg.type_b) or cfg.name

    def lifter(self, name: str) -> Lifter:
        return Lifter(
            self.env, self.cfg,
            annotations=self.annotations.get(name),
            renamed=self.renamed,
            on_dependency=self._dependency,
            cache=self.cache, stats=self.stats, guard=self.guard)

    def _dependency(self, name: str) -> str:
        if name in self._in_progress:
            raise DependencyError(
                f'{name} depends on itself through '
                + ' -> '.join(self._in_progress))
        logger.info('repairing dependency %s', name)
        return self.repair(name).new_name

    def fresh_name(self, name: str) -> str:
        candidate = derive_name(name, self.type_a, self.type_b)
        while candidate in self.env:
            candidate += "'"
        return candidate

    def repair(self, name: str, new_name: Optional[str] = None
               ) -> RepairResult:
        """Repair one definition and declare it under its new name."""
        for result in self.results:
            if result.name == name:
                return result
        entry = self.env.lookup(name)
        lifter = self.lifter(name)
        if isinstance(entry, Assumption):
            if lifter.depends_on_a(name):
                raise TransformFailed(
                    (), f'{name} is an assumption and cannot be repaired')
            return self._unchanged(entry.name, entry.type, None)
        if not isinstance(entry, Definition):
            raise TransformFailed((), f'{name} is not a definition')
        if not lifter.depends_on_a(name):
            logger.info('%s does not mention %s', name, self.type_a)
            return self._unchanged(name, entry.type, entry.body)

        guard_before = self.stats.guard_hits
        self._in_progress.append(name)
        try:
            new_type, new_body, key = self._transform(name, entry, lifter)
        finally:
            self._in_progress.pop()
        new_name = new_name or self.fresh_name(name)
        self._declare(
            name, new_name, new_type, new_body,
            self.stats.guard_hits - guard_before)
        if key is not None:
            store_repaired(key, new_type, new_body)
        result = RepairResult(name, new_name, new_type, new_body, self.env)
        self.renamed[name] = new_name
        self.results.append(result)
        logger.info('repaired %s as %s', name, new_name)
        return result

    def _unchanged(self, name, type, body):
        result = RepairResult(name, name, type, body, self.env)
        self.results.append(result)
        return result

    def _transform(self, name, entry, lifter):
        key = None
        if self.use_cache:
            key = repaired_key(
                self.cfg.fingerprint, name, entry.type, entry.body,
                lifter.annotations)
            stored = load_repaired(key)
            if stored is not None and self._stored_names_known(stored):
                self.stats.hits += 1
                return stored[0], stored[1], None
        new_type = beta_iota(self.env, lifter.lift(entry.type, path=None))
        raw_body = lifter.lift(entry.body)
        new_body = beta_iota(self.env, raw_body)
        self._check_a_free(name, new_type, new_body, raw_body)
        return new_type, new_body, key

    def _stored_names_known(self, stored):
        names = global_names(stored[0]) | global_names(stored[1])
        return all(name in self.env for name in names)

    def _check_a_free(self, name, new_type, new_body, raw_body):
        if self.guard.b_mentions_a:
            return
        a_names = self.guard.a_names
        for term in (new_type, new_body):
            path = first_mention(term, a_names)
            if path is None:
                continue
            raw_path = first_mention(raw_body, a_names)
            hint = nearest_application(raw_body, raw_path or ())
            raise TransformFailed(
                raw_path or path,
                f'{name} still mentions {self.type_a} after transport; '
                f'annotate the subterm at [{_join(hint)}], for instance '
                f'`Annotate {name} at [{_join(hint)}] as {IOTA} <j>.`')

    def _declare(self, name, new_name, new_type, new_body, guard_hits):
        try:
            self.env = declare_definition(
                self.env, new_name, new_type, new_body)
        except KernelError as error:
            if guard_hits:
                logger.warning(
                    'termination guard fired %d times while repairing %s',
                    guard_hits, name)
                raise TerminationGuardTriggered(
                    f'{name}: the guard kept {guard_hits} subterms of '
                    f'{self.type_b} unchanged and the result does not type '
                    f'check: {error}', guard_hits) from None
            path = error.path if isinstance(error, TypeCheckError) else ()
            hint = _join(nearest_application(new_body, _valid(
                new_body, path)))
            raise TransformFailed(
                path,
                f'{name} does not type check after transport: {error}; '
                f'a propositional Iota may need an annotation near '
                f'[{hint}]') from None

    def repair_module(self, names: Sequence[str]) -> GlobalEnv:
        """Repair names in dependency order.

        On failure the raised TransformFailed lists what was repaired.
        """
        for name in dependency_order(self.env, names):
            done = [r.new_name for r in self.results if r.changed]
            try:
                self.repair(name)
            except TransformFailed as error:
                raise TransformFailed(
                    error.path, error.reason, completed=done) from None
            except TerminationGuardTriggered as error:
                raise TransformFailed(
                    (), str(error), completed=done) from None
        return self.env


def _join(path):
    return ', '.join(str(step) for step in path)


def _valid(t, path):
    """The longest prefix of path that exists in t."""
    valid = []
    for step in path:
        kids = children(t)
        if step >= len(kids):
            break
        t = kids[step]
        valid.append(step)
    return tuple(valid)


def dependency_order(env: GlobalEnv, names: Sequence[str]) -> List[str]:
    """names sorted so that every definition follows those it uses."""
    wanted = list(dict.fromkeys(names))
    sorter = TopologicalSorter()
    for name in wanted:
        entry = env.lookup(name)
        used = set()
        if isinstance(entry, (Definition, Assumption)):
            used |= global_names(entry.type)
        if isinstance(entry, Definition):
            used |= global_names(entry.body)
        sorter.add(name, *(other for other in wanted
                           if other in used and other != name))
    try:
        order = list(sorter.static_order())
    except CycleError as error:
        raise DependencyError(
            'definitions depend on each other: '
            + ' -> '.join(error.args[1])) from None
    return order


def repair_definition(
        env: GlobalEnv, cfg: Configuration, name: str, *,
        new_name: Optional[str] = None,
        annotations: Optional[Dict[str, Annotations]] = None,
        use_cache: Optional[bool] = None) -> RepairResult:
    """Repair name along cfg; the result carries the extended environment."""
    repairer = Repairer(env, cfg, annotations=annotations, use_cache=use_cache)
    return repairer.repair(name, new_name)


def repair_module(
        env: GlobalEnv, cfg: Configuration, names: Sequence[str], *,
        annotations: Optional[Dict[str, Annotations]] = None,
        use_cache: Optional[bool] = None) -> GlobalEnv:
    """Repair every name with one shared cache; returns the new env."""
    repairer = Repairer(env, cfg, annotations=annotations, use_cache=use_cache)
    return repairer.repair_module(names)
