"""
Decompilation of proof terms into tactic scripts.

Each rule looks at the shape of the term: functions become intros,
symmetric equations become symmetry, constructors of conjunctions and
disjunctions become split, left and right, eliminations of equations
become rewrites and other eliminations become induction. An application
whose last argument is not mentioned by the result type applies the
function and proves the argument next. Anything else is applied whole.
"""

import logging
from typing import Optional

from config.equality import EQ
from decompile.tactics import (
    BACKWARD,
    FORWARD,
    Apply,
    Induction,
    Intro,
    Left,
    Reflexivity,
    Rewrite,
    Right,
    Script,
    Split,
    Symmetry,
)
from kernel.env import Context, GlobalEnv, InductiveDecl
from kernel.inductive import constructor_type
from kernel.reduction import whnf, whnf_pi
from kernel.substitution import has_loose
from kernel.terms import (
    ConstRef,
    ConstrRef,
    Elim,
    IndRef,
    Lambda,
    Pi,
    Term,
    apps,
    unfold_app,
)
from kernel.typing import infer_type

logger = logging.getLogger(__name__)

EQ_SYM = 'eq_sym'


def fresh_local(env: GlobalEnv, ctx: Context, hint: Optional[str]) -> str:
    """A name for a new local that shadows neither locals nor globals."""
    name = hint if hint and hint != '_' else 'H'
    taken = set(ctx.names())
    while name in taken or name in env or env.constructor(name) is not None:
        name += "'"
    return name


def symmetric_equation(t: Term):
    """The proof H when t is eq_sym A x y H."""
    head, args = unfold_app(t)
    if isinstance(head, ConstRef) and head.name == EQ_SYM and len(args) == 4:
        return args[3]
    return None


class Decompiler:
    """Turns well-typed terms into scripts that replay to them."""

    def __init__(self, env: GlobalEnv):
        self.env = env
        self.fallbacks = 0

    def decompile(self, ctx: Context, t: Term) -> Script:
        if isinstance(t, Lambda):
            name = fresh_local(self.env, ctx, t.name)
            rest = self.decompile(ctx.push(name, t.domain), t.body)
            return Script.of(Intro(name)).then(rest)

        proof = symmetric_equation(t)
        if proof is not None:
            return Script.of(Symmetry()).then(self.decompile(ctx, proof))

        head, args = unfold_app(t)
        if isinstance(head, ConstrRef):
            script = self._constructor(ctx, head, args)
            if script is not None:
                return script
        if isinstance(head, Elim) and not args:
            return self._elimination(ctx, head)
        if args:
            script = self._application(ctx, head, args)
            if script is not None:
                return script
        return self._base(t)

    def _base(self, t):
        self.fallbacks += 1
        return Script.of(Apply(t))

    def _inductive(self, family) -> Optional[InductiveDecl]:
        head, _ = unfold_app(family)
        if not isinstance(head, IndRef):
            return None
        decl = self.env.get(head.name)
        return decl if isinstance(decl, InductiveDecl) else None

    def _constructor(self, ctx, head: ConstrRef, args):
        decl = self._inductive(head.inductive)
        if decl is None:
            return None
        if IndRef(decl.name) == EQ and not args:
            return Script.of(Reflexivity())
        arities = [
            len(whnf_pi(self.env, ctype)[0]) for _, ctype in
            _constructor_types(decl, head.inductive)]
        if len(arities) == 1 and arities[0] == len(args) >= 1:
            return Script.of(Split(tuple(
                self.decompile(ctx, arg) for arg in args)))
        if arities == [1, 1] and len(args) == 1:
            choice = Left() if head.index == 0 else Right()
            return Script.of(choice).then(self.decompile(ctx, args[0]))
        return None

    def _elimination(self, ctx, t: Elim):
        scrutinee_type = whnf(
            self.env, ctx, infer_type(self.env, ctx, t.scrutinee))
        family, _ = unfold_app(scrutinee_type)
        if family == EQ:
            proof = symmetric_equation(t.scrutinee)
            if proof is not None:
                step = Rewrite(proof, t.motive, FORWARD)
            else:
                step = Rewrite(t.scrutinee, t.motive, BACKWARD)
            return Script.of(step).then(self.decompile(ctx, t.cases[0]))
        branches = tuple(self.decompile(ctx, case) for case in t.cases)
        return Script.of(Induction(t.scrutinee, t.motive, branches))

    def _application(self, ctx, head, args):
        partial = apps(head, *args[:-1])
        type = whnf(self.env, ctx, infer_type(self.env, ctx, partial))
        if not isinstance(type, Pi) or has_loose(type.codomain, 0):
            return None
        return Script.of(Apply(partial)).then(self.decompile(ctx, args[-1]))


def _constructor_types(decl, family):
    _, params = unfold_app(family)
    return [
        (name, constructor_type(decl, params, j))
        for j, (name, _) in enumerate(decl.constructors)]


def decompile(env: GlobalEnv, ctx: Context, t: Term) -> Script:
    """A script whose replay at the type of t rebuilds t."""
    decompiler = Decompiler(env)
    script = decompiler.decompile(ctx, t)
    logger.debug(
        'decompiled into %d tactics, %d applied whole',
        script.size, decompiler.fallbacks)
    return script
