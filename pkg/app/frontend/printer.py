"""
Printing of kernel terms and environment entries as .pml text.

Printing is deterministic and inverse to parsing: `parse_term` of a
printed term elaborates back to an alpha-equal term. Binders are renamed
with primes when their hint would capture another name.
"""

import re
from typing import List, Optional, Sequence

from config.configuration import Configuration
from kernel.env import Assumption, Definition, GlobalEnv, InductiveDecl
from kernel.substitution import has_loose
from kernel.terms import (
    App,
    ConstRef,
    ConstrRef,
    Elim,
    IndRef,
    Lambda,
    Pi,
    Sort,
    Term,
    Var,
    children,
    global_names,
    unfold_app,
)

TOP, APPLICATION, ATOM = 0, 1, 2

KEYWORDS = frozenset({'fun', 'forall', 'Constr', 'Elim', 'Prop', 'Set'})
_SORT_NAME = re.compile(r'Type[0-9]+$')


class TermPrinter:
    """Prints terms, optionally naming constructors through env."""

    def __init__(self, env: Optional[GlobalEnv] = None):
        self.env = env
        self.taken = frozenset()

    def print(self, t: Term, names: Sequence[str] = ()) -> str:
        self.taken = self._globals(t)
        return self._print(t, list(names), TOP)

    def _globals(self, t):
        found = set(global_names(t))
        stack = [t]
        while stack:
            current = stack.pop()
            if isinstance(current, ConstrRef):
                name = self._constructor_name(current)
                if name:
                    found.add(name)
            stack.extend(children(current))
        return frozenset(found)

    def _constructor_name(self, t: ConstrRef) -> Optional[str]:
        if self.env is None:
            return None
        head, params = unfold_app(t.inductive)
        if not isinstance(head, IndRef):
            return None
        decl = self.env.get(head.name)
        if not isinstance(decl, InductiveDecl):
            return None
        if len(params) != len(decl.params):
            return None
        if not 0 <= t.index < len(decl.constructors):
            return None
        return decl.constructors[t.index][0]

    def binder_name(self, hint: str, body: Term, names: List[str]) -> str:
        used = has_loose(body, 0)
        if not hint or hint == '_':
            if not used:
                return '_'
            hint = 'x'
        name = hint
        while (name in names or name in self.taken or name in KEYWORDS
               or _SORT_NAME.match(name)):
            name += "'"
        return name

    def _print(self, t, names, prec):
        if isinstance(t, Var):
            if t.index < len(names):
                return names[-1 - t.index]
            return t.name
        if isinstance(t, Sort):
            return f'Type{t.level}'
        if isinstance(t, (IndRef, ConstRef)):
            return t.name
        if isinstance(t, Lambda):
            return self._binders(t, names, prec)
        if isinstance(t, Pi):
            if not has_loose(t.codomain, 0):
                domain = self._print(t.domain, names, APPLICATION)
                codomain = self._print(t.codomain, names + ['_'], TOP)
                return _wrap(f'{domain} -> {codomain}', prec > TOP)
            return self._binders(t, names, prec)
        if isinstance(t, (App, ConstrRef)):
            return self._application(t, names, prec)
        if isinstance(t, Elim):
            scrutinee = self._print(t.scrutinee, names, TOP)
            motive = self._print(t.motive, names, TOP)
            cases = ' | '.join(self._print(c, names, TOP) for c in t.cases)
            body = f' {cases} ' if cases else ' '
            return f'Elim({scrutinee}, {motive}) {{{body}}}'
        raise TypeError(f'cannot print {t!r}')

    def _binders(self, t, names, prec):
        kind = type(t)
        parts = []
        scope = list(names)
        while isinstance(t, kind):
            body = t.body
            if kind is Pi and not has_loose(body, 0):
                break
            name = self.binder_name(t.name, body, scope)
            parts.append(f'({name} : {self._print(t.domain, scope, TOP)})')
            scope.append(name)
            t = body
        rest = self._print(t, scope, TOP)
        if kind is Lambda:
            text = f'fun {" ".join(parts)} => {rest}'
        else:
            text = f'forall {" ".join(parts)}, {rest}'
        return _wrap(text, prec > TOP)

    def _application(self, t, names, prec):
        head, args = unfold_app(t)
        if isinstance(head, ConstrRef):
            name = self._constructor_name(head)
            if name is not None:
                _, params = unfold_app(head.inductive)
                args = params + args
                parts = [name]
            else:
                family = self._print(head.inductive, names, TOP)
                parts = [f'Constr({head.index}, {family})']
        else:
            parts = [self._print(head, names, ATOM)]
        parts.extend(self._print(arg, names, ATOM) for arg in args)
        return _wrap(' '.join(parts), prec > APPLICATION and len(parts) > 1)


def _wrap(text, needed):
    return f'({text})' if needed else text


def print_term(
        t: Term, names: Sequence[str] = (),
        env: Optional[GlobalEnv] = None) -> str:
    """Concrete syntax for t under local names (outermost first)."""
    return TermPrinter(env).print(t, names)


def _print_params(printer, params, names):
    parts = []
    for name, type in params:
        parts.append(f'({name} : {printer.print(type, names)})')
        names = names + [name]
    return ''.join(' ' + part for part in parts), names


def print_command(entry, env: Optional[GlobalEnv] = None) -> str:
    """Vernacular text declaring one environment entry."""
    printer = TermPrinter(env)
    if isinstance(entry, InductiveDecl):
        params, names = _print_params(printer, entry.params, [])
        lines = [
            f'Inductive {entry.name}{params} : '
            f'{printer.print(entry.arity, names)} :=']
        for cname, ctype in entry.constructors:
            lines.append(f'  | {cname} : {printer.print(ctype, names)}')
        return '\n'.join(lines) + '.'
    if isinstance(entry, Definition):
        return (
            f'Definition {entry.name} : {printer.print(entry.type)} :=\n'
            f'  {printer.print(entry.body)}.')
    if isinstance(entry, Assumption):
        return f'Axiom {entry.name} : {printer.print(entry.type)}.'
    raise TypeError(f'cannot print {entry!r}')


def print_environment(env: GlobalEnv, names: Optional[Sequence[str]] = None):
    """Every entry of env (or just `names`) in declaration order."""
    wanted = None if names is None else set(names)
    return '\n\n'.join(
        print_command(entry, env) for entry in env
        if wanted is None or entry.name in wanted)


def _term_list(printer, terms):
    return '[' + ' | '.join(printer.print(t) for t in terms) + ']'


def print_configuration(cfg: Configuration,
                        env: Optional[GlobalEnv] = None) -> str:
    """A Configure command giving every component of cfg explicitly."""
    printer = TermPrinter(env)
    params, names = _print_params(printer, cfg.params, [])
    fields = []
    for label in ('a', 'b'):
        side = cfg.side(label)
        if side.constrs:
            fields.append(
                f'constr_{label} := {_term_list(printer, side.constrs)}')
        fields.append(f'elim_{label} := {printer.print(side.elim)}')
        fields.append(f'eta_{label} := {printer.print(side.eta)}')
        fields.append(f'eta_ok_{label} := {printer.print(side.eta_ok)}')
        if side.iotas:
            fields.append(
                f'iota_{label} := {_term_list(printer, side.iotas)}')
    if cfg.trusted:
        labels = ', '.join(f'"{label}"' for label in sorted(cfg.trusted))
        fields.append(f'trusted := [{labels}]')
    return (
        f'Configure {cfg.name}{params} : '
        f'{printer.print(cfg.type_a, names)} ~ '
        f'{printer.print(cfg.type_b, names)} := {{\n  '
        + ';\n  '.join(fields) + '\n}.')


def print_annotation(name: str, path: Sequence[int], role: str,
                     index: Optional[int] = None) -> str:
    steps = ', '.join(str(step) for step in path)
    suffix = '' if index is None else f' {index}'
    return f'Annotate {name} at [{steps}] as {role}{suffix}.'
