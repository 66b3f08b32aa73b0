"""
Discovery of constructor permutations between two inductive types.

Two inductives of the same shape differ only in the order (and names)
of their constructors. Every bijection that maps each constructor of A
to a constructor of B with the same type (once A is read as B) yields a
configuration.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from config.configuration import Configuration, build_configuration
from kernel.env import GlobalEnv, InductiveDecl
from kernel.inductive import case_type
from kernel.substitution import arrow
from kernel.telescope import Telescope
from kernel.terms import (
    ConstrRef,
    Elim,
    IndRef,
    Sort,
    Term,
    apps,
    children,
    lams,
    rebuild,
)
from search.errors import ArityMismatch, SelectionError
from search.levenshtein import levenshtein, short_name

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConstructorMapping:
    """Constructor j of A corresponds to constructor permutation[j] of B."""
    permutation: Tuple[int, ...]
    names: Tuple[Tuple[str, str], ...] = ()
    score: Tuple[int, int] = (0, 0)

    def __call__(self, j: int) -> int:
        return self.permutation[j]

    def inverse(self) -> 'ConstructorMapping':
        inverse = [0] * len(self.permutation)
        for j, k in enumerate(self.permutation):
            inverse[k] = j
        names = tuple(
            (b, a) for _, (a, b) in sorted(
                zip(self.permutation, self.names)))
        return ConstructorMapping(tuple(inverse), names, self.score)

    @property
    def is_identity(self):
        return all(j == k for j, k in enumerate(self.permutation))

    def __str__(self):
        return ', '.join(
            f'{a} -> {b}' for a, b in self.names) or str(self.permutation)


def rename_inductive(t: Term, old: str, new: str) -> Term:
    """t with every reference to the inductive old pointing at new."""
    if isinstance(t, IndRef):
        return IndRef(new) if t.name == old else t
    kids = children(t)
    if not kids:
        return t
    return rebuild(t, [rename_inductive(kid, old, new) for kid in kids])


def _telescopes_agree(decl_a: InductiveDecl, decl_b: InductiveDecl) -> bool:
    if len(decl_a.params) != len(decl_b.params):
        return False
    for (_, left), (_, right) in zip(decl_a.params, decl_b.params):
        if rename_inductive(left, decl_a.name, decl_b.name) != right:
            return False
    return decl_a.arity == decl_b.arity


def _score(decl_a, decl_b, permutation):
    pairs = [
        (short_name(decl_a.constructors[j][0]),
         short_name(decl_b.constructors[k][0]))
        for j, k in enumerate(permutation)]
    same = sum(1 for a, b in pairs if a == b)
    distance = sum(levenshtein(a, b) for a, b in pairs)
    return same, distance


def find_permutations(
        env: GlobalEnv, type_a: str, type_b: str) -> List[ConstructorMapping]:
    """Every type-correct constructor bijection from A to B, best first.

    Ranked by the number of equal constructor names, then by total edit
    distance between names, then by permutation order.
    """
    decl_a = env.inductive(type_a)
    decl_b = env.inductive(type_b)
    n = len(decl_a.constructors)
    if n != len(decl_b.constructors):
        raise ArityMismatch(
            f'{type_a} has {n} constructors but {type_b} has '
            f'{len(decl_b.constructors)}')
    if not _telescopes_agree(decl_a, decl_b):
        logger.debug('%s and %s have different telescopes', type_a, type_b)
        return []

    renamed = [
        rename_inductive(ctype, type_a, type_b)
        for _, ctype in decl_a.constructors]
    compatible = [
        {k for k, (_, ctype) in enumerate(decl_b.constructors)
         if ctype == renamed[j]}
        for j in range(n)]

    found = []
    for permutation in itertools.permutations(range(n)):
        if all(k in compatible[j] for j, k in enumerate(permutation)):
            same, distance = _score(decl_a, decl_b, permutation)
            names = tuple(
                (decl_a.constructors[j][0], decl_b.constructors[k][0])
                for j, k in enumerate(permutation))
            found.append(ConstructorMapping(
                permutation, names, (same, distance)))
    found.sort(key=lambda m: (-m.score[0], m.score[1], m.permutation))
    logger.info(
        'found %d constructor mappings from %s to %s',
        len(found), type_a, type_b)
    return found


def select_mapping(
        mappings: Sequence[ConstructorMapping], index: int
) -> ConstructorMapping:
    if not 0 <= index < len(mappings):
        raise SelectionError(
            f'mapping index out of range: {index} (found {len(mappings)})')
    return mappings[index]


def _param_family(decl, name, tel):
    return apps(IndRef(name), *tel.vars(range(len(decl.params))))


def config_from_permutation(
        env: GlobalEnv, type_a: str, type_b: str,
        mapping: ConstructorMapping,
        name: Optional[str] = None) -> Configuration:
    """The configuration whose B side is B's native interface reordered."""
    decl_a = env.inductive(type_a)
    decl_b = env.inductive(type_b)
    params = tuple(decl_a.params)
    np = len(params)
    tel = Telescope(params)
    family_a = _param_family(decl_a, type_a, tel)
    family_b = _param_family(decl_b, type_b, tel)

    constr_b = tuple(
        lams(params, ConstrRef(mapping(j), family_b))
        for j in range(len(decl_a.constructors)))

    inverse = mapping.inverse()
    motive = tel.bind('P', arrow(family_b, Sort(0)))
    cases = []
    for j in range(len(decl_a.constructors)):
        param_vars = tel.vars(range(np))
        cases.append(tel.bind('f' + str(j), case_type(
            env, decl_b, param_vars, tel.var(motive), mapping(j))))
    target = tel.bind('b', tel.shift(family_b, np))
    elim_b = tel.lams(Elim(
        tel.var(target), tel.var(motive),
        tuple(tel.var(cases[inverse(k)]) for k in range(len(cases)))))

    name = name or f'{short_name(type_a)}_{short_name(type_b)}'
    cfg = build_configuration(
        env, name, params, family_a, family_b,
        constr_b=constr_b, elim_b=elim_b)
    logger.debug('configuration %s from mapping %s', name, mapping)
    return cfg
