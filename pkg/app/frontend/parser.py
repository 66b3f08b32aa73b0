"""
Parser for .pml files, terms and tactic lines.
"""

import logging

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import (
    UnexpectedCharacters,
    UnexpectedEOF,
    UnexpectedInput,
)

from frontend.errors import ParseError
from frontend.syntax import (
    AnnotateCmd,
    AxiomCmd,
    BinderGroup,
    ConfigureCmd,
    DecompileCmd,
    DefinitionCmd,
    InductiveCmd,
    LabelList,
    OpaqueCmd,
    RApp,
    RArrow,
    RConstr,
    RElim,
    RForall,
    RFun,
    RName,
    RSort,
    RawTactic,
    RepairCmd,
    RepairModuleCmd,
    RequireCmd,
    TermList,
)

logger = logging.getLogger(__name__)

_parser = Lark.open(
    'grammar.lark',
    rel_to=__file__,
    parser='lalr',
    start=['start', 'term', 'tactic'],
    maybe_placeholders=True,
)


def _present(items):
    return [item for item in items if item is not None]


def _unquote(token):
    return str(token)[1:-1]


def _split_groups(items):
    groups = tuple(item for item in items if isinstance(item, BinderGroup))
    rest = [item for item in items if not isinstance(item, BinderGroup)]
    return groups, rest


@v_args(inline=True)
class PmlTransformer(Transformer):
    """Builds the named syntax of `frontend.syntax` from parse trees."""

    def start(self, *commands):
        return _present(commands)

    # Commands

    def require(self, path):
        return RequireCmd(_unquote(path))

    def inductive(self, name, *rest):
        groups, rest = _split_groups(_present(rest))
        arity, constructors = rest[0], rest[1:]
        return InductiveCmd(str(name), groups, arity, tuple(constructors))

    def constructor(self, name, type):
        return (str(name), type)

    def definition(self, name, *rest):
        groups, (type, body) = _split_groups(_present(rest))
        return DefinitionCmd(str(name), groups, type, body)

    def axiom(self, name, *rest):
        groups, (type,) = _split_groups(_present(rest))
        return AxiomCmd(str(name), groups, type)

    def opaque(self, *names):
        return OpaqueCmd(tuple(str(name) for name in names))

    def configure(self, name, *rest):
        groups, rest = _split_groups(_present(rest))
        type_a, type_b, fields = rest[0], rest[1], rest[2:]
        return ConfigureCmd(str(name), groups, type_a, type_b, tuple(fields))

    def field(self, name, value):
        return (str(name), value)

    def term_list(self, *items):
        return TermList(tuple(_present(items)))

    def label_list(self, *items):
        return LabelList(tuple(_unquote(item) for item in _present(items)))

    def repair(self, type_a, type_b, target, rename, source, suggest):
        config, mapping = self._source(source)
        return RepairCmd(
            str(type_a), str(type_b), str(target), rename, config, mapping,
            bool(suggest))

    def repair_module(self, type_a, type_b, *rest):
        *targets, source, suggest = rest
        config, mapping = self._source(source)
        return RepairModuleCmd(
            str(type_a), str(type_b), tuple(str(t) for t in targets),
            config, mapping, bool(suggest))

    @staticmethod
    def _source(source):
        if source is None:
            return None, None
        kind, value = source
        return (value, None) if kind == 'using' else (None, value)

    def rename(self, name):
        return str(name)

    def using(self, name):
        return ('using', str(name))

    def mapping(self, index):
        return ('mapping', int(index))

    def suggest(self):
        return True

    def decompile(self, name):
        return DecompileCmd(str(name))

    def annotate(self, name, path, role, index):
        return AnnotateCmd(
            str(name), path, str(role), None if index is None else int(index))

    def path(self, *steps):
        return tuple(int(step) for step in _present(steps))

    # Terms

    def fun(self, *rest):
        groups, (body,) = _split_groups(rest)
        return RFun(groups, body)

    def forall(self, *rest):
        groups, (body,) = _split_groups(rest)
        return RForall(groups, body)

    def arrow(self, domain, codomain):
        return RArrow(domain, codomain)

    def app(self, fn, arg):
        return RApp(fn, arg)

    def name(self, token):
        return RName(str(token))

    def sort(self, token):
        text = str(token)
        return RSort(int(text[4:]) if text.startswith('Type') else 0)

    def constr(self, index, family):
        return RConstr(int(index), family)

    def elim(self, scrutinee, motive, *cases):
        return RElim(scrutinee, motive, tuple(_present(cases)))

    def binder_group(self, *items):
        *names, type = items
        return BinderGroup(tuple(str(name) for name in names), type)

    # Tactics

    def t_intro(self, name):
        return RawTactic('intro', (str(name),))

    def t_intros(self, *names):
        return RawTactic('intros', tuple(str(name) for name in names))

    def t_symmetry(self):
        return RawTactic('symmetry')

    def t_apply(self, term):
        return RawTactic('apply', term=term)

    def t_rewrite_forward(self, term, motive):
        return RawTactic('rewrite->', term=term, motive=motive)

    def t_rewrite_backward(self, term, motive):
        return RawTactic('rewrite<-', term=term, motive=motive)

    def t_induction(self, term, motive):
        return RawTactic('induction', term=term, motive=motive)

    def motive(self, term):
        return term

    def t_split(self):
        return RawTactic('split')

    def t_left(self):
        return RawTactic('left')

    def t_right(self):
        return RawTactic('right')

    def t_reflexivity(self):
        return RawTactic('reflexivity')


def _position(text, error):
    if isinstance(error, UnexpectedEOF) or getattr(error, 'line', -1) < 1:
        lines = text.split('\n')
        return len(lines), len(lines[-1]) + 1
    return error.line, error.column


def _parse(text, start):
    try:
        tree = _parser.parse(text, start=start)
    except UnexpectedInput as error:
        line, column = _position(text, error)
        token = getattr(error, 'token', None)
        if isinstance(error, UnexpectedCharacters):
            message = f'unexpected character {error.char!r}'
        elif isinstance(token, Token) and token.type != '$END':
            message = f'unexpected {token.value!r}'
        else:
            message = 'unexpected end of input'
        raise ParseError(message, line, column) from None
    return PmlTransformer().transform(tree)


def parse_file(text: str):
    """Parse a whole .pml file into a list of commands."""
    commands = _parse(text, 'start')
    logger.debug('parsed %d commands', len(commands))
    return commands


def parse_term(text: str):
    """Parse a single term."""
    return _parse(text, 'term')


def parse_tactic(text: str):
    """Parse one tactic line (without bullet)."""
    return _parse(text, 'tactic')
