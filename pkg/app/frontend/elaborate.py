"""
Elaboration of named syntax into kernel terms.

Names resolve innermost local first, then constructor, inductive and
constant. A constructor name consumes its inductive's parameters from
the application spine, so `cons T h t` elaborates to
`Constr(1, list T) h t`.
"""

from typing import Iterable, List, Sequence, Tuple

from frontend.errors import ElaborationError
from frontend.syntax import (
    BinderGroup,
    RApp,
    RArrow,
    RConstr,
    RElim,
    RForall,
    RFun,
    RName,
    RSort,
    RawTerm,
    raw_spine,
)
from kernel.env import GlobalEnv, InductiveDecl
from kernel.substitution import arrow, lift
from kernel.terms import (
    Binder,
    ConstRef,
    ConstrRef,
    Elim,
    IndRef,
    Sort,
    Term,
    Var,
    apps,
    bound_vars,
    lams,
    pis,
)


class Elaborator:
    """Resolves names against a global environment.

    `pending` names inductives being declared, which resolve to IndRef
    before they exist in the environment.
    """

    def __init__(self, env: GlobalEnv, pending: Iterable[str] = ()):
        self.env = env
        self.pending = frozenset(pending)

    def term(self, raw: RawTerm, names: Sequence[str] = ()) -> Term:
        return self._term(raw, list(names))

    def telescope(
            self, groups: Sequence[BinderGroup],
            names: Sequence[str] = ()) -> List[Binder]:
        """Binders of groups, each type valid under the preceding ones."""
        scope = list(names)
        binders = []
        for group in groups:
            type = self._term(group.type, scope)
            for offset, name in enumerate(group.names):
                binders.append((name, lift(type, offset)))
            scope.extend(group.names)
        return binders

    def _term(self, raw, names):
        if isinstance(raw, RSort):
            return Sort(raw.level)
        if isinstance(raw, (RName, RApp)):
            return self._spine(raw, names)
        if isinstance(raw, RArrow):
            return arrow(
                self._term(raw.domain, names),
                self._term(raw.codomain, names))
        if isinstance(raw, (RFun, RForall)):
            binders = self.telescope(raw.binders, names)
            body = self._term(
                raw.body, names + [name for name, _ in binders])
            build = lams if isinstance(raw, RFun) else pis
            return build(binders, body)
        if isinstance(raw, RConstr):
            return ConstrRef(raw.index, self._term(raw.family, names))
        if isinstance(raw, RElim):
            return Elim(
                self._term(raw.scrutinee, names),
                self._term(raw.motive, names),
                tuple(self._term(case, names) for case in raw.cases))
        raise ElaborationError(f'cannot elaborate {raw!r}')

    def _spine(self, raw, names):
        head, raw_args = raw_spine(raw)
        args = [self._term(arg, names) for arg in raw_args]
        if isinstance(head, RName) and head.name not in names:
            found = self.env.constructor(head.name)
            if found is not None:
                return self._constructor(found, args)
        return apps(self._term_head(head, names), *args)

    def _term_head(self, head, names):
        if not isinstance(head, RName):
            return self._term(head, names)
        name = head.name
        if name == '_':
            raise ElaborationError('`_` cannot be used as a term')
        for index, local in enumerate(reversed(names)):
            if local == name:
                return Var(index, name)
        if name in self.pending:
            return IndRef(name)
        entry = self.env.get(name)
        if entry is None:
            raise ElaborationError(f'unknown name {name}')
        if isinstance(entry, InductiveDecl):
            return IndRef(name)
        return ConstRef(name)

    def _constructor(self, found: Tuple[str, int], args):
        inductive, j = found
        decl = self.env.inductive(inductive)
        nparams = len(decl.params)
        if len(args) >= nparams:
            family = apps(IndRef(inductive), *args[:nparams])
            return apps(ConstrRef(j, family), *args[nparams:])
        # Too few parameters: abstract the missing ones.
        generic = lams(decl.params, ConstrRef(j, apps(
            IndRef(inductive), *bound_vars(nparams, [
                name for name, _ in decl.params]))))
        return apps(generic, *args)


def elaborate(env: GlobalEnv, raw: RawTerm, names: Sequence[str] = ()) -> Term:
    """Kernel term for raw under local names (outermost first)."""
    return Elaborator(env).term(raw, names)
