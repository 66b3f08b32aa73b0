"""
Replay of tactic scripts.

Every tactic turns the current goal into a proof term built around the
proofs of the goals it leaves. Induction and rewrite use their motive
when it is given; otherwise the motive is found by abstracting the
eliminated term and its indices out of the goal.
"""

import logging
from typing import List

from config.equality import EQ
from decompile.errors import ReplayFailed
from decompile.tactics import (
    FORWARD,
    Apply,
    Goal,
    Induction,
    Intro,
    Intros,
    Left,
    Reflexivity,
    Rewrite,
    Right,
    Script,
    Split,
    Symmetry,
)
from kernel.env import GlobalEnv, InductiveDecl
from kernel.errors import PmlError
from kernel.inductive import case_type, constructor_type, motive_type
from kernel.matching import match_pattern
from kernel.substitution import has_loose, instantiate_many, lift
from kernel.terms import (
    ConstRef,
    ConstrRef,
    Elim,
    IndRef,
    Lambda,
    Pi,
    Sort,
    Term,
    Var,
    apps,
    binders_at,
    children,
    lams,
    rebuild,
    strip_pis,
    unfold_app,
)
from kernel.typing import check_type, infer_type

logger = logging.getLogger(__name__)

EQ_SYM = ConstRef('eq_sym')


def replace_term(t: Term, target: Term, by: Term) -> Term:
    """t with every occurrence of target replaced; both valid at the root."""
    def go(term, depth):
        if term == (lift(target, depth) if depth else target):
            return lift(by, depth) if depth else by
        kids = children(term)
        if not kids:
            return term
        return rebuild(term, [
            go(kid, depth + binders_at(term, i))
            for i, kid in enumerate(kids)])

    return go(t, 0)


class Replayer:

    def __init__(self, env: GlobalEnv):
        self.env = env
        self.reducer = env.reducer

    def run(self, goal: Goal, script: Script) -> Term:
        return self._run(list(script.steps), goal)

    def _run(self, steps, goal):
        if not steps:
            raise ReplayFailed(None, goal, 'the goal is still open')
        step, rest = steps[0], steps[1:]
        logger.debug('%s', step)
        if isinstance(step, Intro):
            return self._intros([step.name], rest, goal, step)
        if isinstance(step, Intros):
            return self._intros(list(step.names), rest, goal, step)
        if isinstance(step, Symmetry):
            return self._symmetry(step, rest, goal)
        if isinstance(step, Rewrite):
            return self._rewrite(step, rest, goal)
        if isinstance(step, Apply):
            return self._apply(step, rest, goal)
        if isinstance(step, Induction):
            self._closing(step, rest, goal)
            return self._eliminate(
                step, step.term, step.motive, step.branches, goal)
        if isinstance(step, Split):
            self._closing(step, rest, goal)
            return self._split(step, goal)
        if isinstance(step, (Left, Right)):
            return self._choice(step, rest, goal)
        if isinstance(step, Reflexivity):
            self._closing(step, rest, goal)
            return self._reflexivity(step, goal)
        raise ReplayFailed(step, goal, 'unknown tactic')

    def _closing(self, step, rest, goal):
        if rest:
            raise ReplayFailed(
                rest[0], goal, f'no goal is left after `{step}`')

    def _whnf(self, t):
        return self.reducer.whnf(t)

    def _exposed(self, t, kind):
        return t if isinstance(t, kind) else self._whnf(t)

    def _inductive(self, type):
        """The inductive declaration heading type and its arguments."""
        head, args = unfold_app(self._whnf(type))
        if not isinstance(head, IndRef):
            return None, args
        decl = self.env.get(head.name)
        if not isinstance(decl, InductiveDecl):
            return None, args
        return decl, args

    # Goal transformers

    def _intros(self, names, rest, goal, step):
        if not names:
            return self._run(rest, goal)
        target = self._exposed(goal.target, Pi)
        if not isinstance(target, Pi):
            raise ReplayFailed(step, goal, 'the goal is not a product')
        inner = Goal(goal.ctx.push(names[0], target.domain), target.codomain)
        if len(names) > 1:
            body = self._intros(names[1:], rest, inner, step)
        else:
            body = self._run(rest, inner)
        return Lambda(names[0], target.domain, body)

    def _equation(self, step, goal, t):
        head, args = unfold_app(self._whnf(t))
        if head != EQ or len(args) != 3:
            raise ReplayFailed(step, goal, 'the goal is not an equation')
        return args

    def _symmetry(self, step, rest, goal):
        type, x, y = self._equation(step, goal, goal.target)
        if EQ_SYM.name not in self.env:
            raise ReplayFailed(step, goal, 'eq_sym is not declared')
        proof = self._run(rest, Goal(goal.ctx, apps(EQ, type, y, x)))
        return apps(EQ_SYM, type, y, x, proof)

    def _rewrite(self, step, rest, goal):
        equation = step.equation
        if step.direction == FORWARD:
            type, x, y = self._equation(
                step, goal, self._infer(step, goal, equation))
            if EQ_SYM.name not in self.env:
                raise ReplayFailed(step, goal, 'eq_sym is not declared')
            equation = apps(EQ_SYM, type, x, y, equation)
        return self._eliminate(step, equation, step.motive, None, goal, rest)

    def _infer(self, step, goal, t):
        try:
            return infer_type(self.env, goal.ctx, t)
        except PmlError as error:
            raise ReplayFailed(step, goal, str(error)) from None

    def _eliminate(self, step, scrutinee, motive, branches, goal, rest=()):
        """Elim(scrutinee, motive) with one case per branch.

        Without branches (a rewrite) there is one case and `rest` proves it.
        """
        decl, args = self._inductive(self._infer(step, goal, scrutinee))
        if decl is None:
            raise ReplayFailed(step, goal, 'not a term of an inductive type')
        params, indices = args[:len(decl.params)], args[len(decl.params):]
        if motive is None:
            motive = self.infer_motive(decl, params, indices, scrutinee, goal)
        expected = apps(motive, *indices, scrutinee)
        if not self.reducer.conv(expected, goal.target):
            raise ReplayFailed(
                step, goal, 'the motive does not produce the goal')
        count = len(decl.constructors)
        if branches is None:
            if count != 1:
                raise ReplayFailed(step, goal, 'not an equation')
            branches = [Script(tuple(rest))]
        elif len(branches) != count:
            raise ReplayFailed(
                step, goal,
                f'{decl.name} has {count} constructors, '
                f'the script has {len(branches)} branches')
        cases = []
        for j, branch in enumerate(branches):
            subgoal = Goal(
                goal.ctx, case_type(self.env, decl, params, motive, j))
            cases.append(self.run(subgoal, branch))
        return Elim(scrutinee, motive, tuple(cases))

    def infer_motive(self, decl, params, indices, scrutinee, goal):
        """fun indices x => goal, with the indices and scrutinee abstracted.

        Occurrences are found syntactically, so the motive may fail to
        check; the caller then reports that it does not produce the goal.
        """
        binders, _ = strip_pis(motive_type(decl, params, 0))
        count = len(binders)
        body = lift(goal.target, count)
        body = replace_term(body, lift(scrutinee, count), Var(0, 'x'))
        for i, index in enumerate(indices):
            body = replace_term(
                body, lift(index, count), Var(count - 1 - i))
        return lams(binders, body)

    def _apply(self, step, rest, goal):
        t = step.term
        type = self._infer(step, goal, t)
        domains: List[Term] = []
        current = type
        while True:
            found = self._instance(current, domains, goal)
            if found is not None:
                return self._applied(step, t, domains, found, rest, goal)
            current = self._exposed(current, Pi)
            if not isinstance(current, Pi):
                break
            domains.append(current.domain)
            current = current.codomain
        raise ReplayFailed(
            step, goal, 'the goal is not an instance of the applied type')

    def _instance(self, codomain, domains, goal):
        """Values for the binders making codomain the goal, None if open."""
        count = len(domains)
        for target in (goal.target, self._whnf(goal.target)):
            solution = match_pattern(codomain, target, count)
            if solution is not None:
                break
        else:
            if any(has_loose(codomain, i) for i in range(count)):
                return None
            solution = [None] * count
        if sum(value is None for value in solution) > 1:
            return None
        values = [Sort(0) if v is None else v for v in solution]
        if not self.reducer.conv(
                instantiate_many(codomain, values), goal.target):
            return None
        return solution

    def _applied(self, step, t, domains, solution, rest, goal):
        values = list(solution)
        for i, value in enumerate(values):
            if value is None:
                subgoal = Goal(goal.ctx, instantiate_many(
                    domains[i], values[:i]))
                values[i] = self._run(rest, subgoal)
                return apps(t, *values)
        self._closing(step, rest, goal)
        return apps(t, *values)

    def _inductive_goal(self, step, goal):
        decl, args = self._inductive(goal.target)
        if decl is None:
            raise ReplayFailed(step, goal, 'the goal is not inductive')
        return decl, args[:len(decl.params)]

    def _arguments(self, decl, params, j):
        domains = []
        current = constructor_type(decl, params, j)
        while True:
            current = self._exposed(current, Pi)
            if not isinstance(current, Pi):
                return domains
            domains.append(current.domain)
            current = current.codomain

    def _split(self, step, goal):
        decl, params = self._inductive_goal(step, goal)
        if len(decl.constructors) != 1:
            raise ReplayFailed(
                step, goal, f'{decl.name} does not have one constructor')
        domains = self._arguments(decl, params, 0)
        if len(domains) != len(step.branches):
            raise ReplayFailed(
                step, goal,
                f'{decl.name} needs {len(domains)} branches, '
                f'the script has {len(step.branches)}')
        proofs = []
        for domain, branch in zip(domains, step.branches):
            subgoal = Goal(goal.ctx, instantiate_many(domain, proofs))
            proofs.append(self.run(subgoal, branch))
        return apps(ConstrRef(0, apps(IndRef(decl.name), *params)), *proofs)

    def _choice(self, step, rest, goal):
        decl, params = self._inductive_goal(step, goal)
        j = 0 if isinstance(step, Left) else 1
        if len(decl.constructors) != 2:
            raise ReplayFailed(
                step, goal, f'{decl.name} does not have two constructors')
        domains = self._arguments(decl, params, j)
        if len(domains) != 1:
            raise ReplayFailed(
                step, goal, f'{decl.constructors[j][0]} takes '
                f'{len(domains)} arguments')
        proof = self._run(rest, Goal(goal.ctx, domains[0]))
        return apps(ConstrRef(j, apps(IndRef(decl.name), *params)), proof)

    def _reflexivity(self, step, goal):
        type, x, y = self._equation(step, goal, goal.target)
        if not self.reducer.conv(x, y):
            raise ReplayFailed(step, goal, 'the two sides differ')
        return ConstrRef(0, apps(EQ, type, x))


def replay(env: GlobalEnv, goal: Goal, script: Script) -> Term:
    """The proof term script builds for goal, checked against it."""
    try:
        term = Replayer(env).run(goal, script)
    except ReplayFailed:
        raise
    except PmlError as error:
        raise ReplayFailed(None, goal, str(error)) from None
    try:
        check_type(env, goal.ctx, term, goal.target)
    except PmlError as error:
        raise ReplayFailed(None, goal, f'ill-typed result: {error}') from None
    return term


def replays(env: GlobalEnv, goal: Goal, script: Script) -> bool:
    try:
        replay(env, goal, script)
    except ReplayFailed:
        return False
    return True

