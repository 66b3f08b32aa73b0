"""
Execution of vernacular commands.

A session owns a global environment and everything the commands build
on top of it: configurations, annotations, repair results and suggested
scripts. Commands run in order; the first failing command raises.
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional

from config.completeness import configuration_from_equivalence
from config.configuration import Configuration, build_configuration
from config.errors import ConfigError
from config.synthesis import Equivalence, check_equivalence
from decompile.decompiler import decompile
from decompile.script import print_script
from decompile.simplify import simplify_script
from decompile.tactics import Goal, Script
from frontend.elaborate import Elaborator
from frontend.errors import ElaborationError, ParseError
from frontend.parser import parse_file
from frontend.printer import (
    print_annotation,
    print_command,
    print_configuration,
)
from frontend.syntax import (
    AnnotateCmd,
    AxiomCmd,
    ConfigureCmd,
    DecompileCmd,
    DefinitionCmd,
    InductiveCmd,
    LabelList,
    OpaqueCmd,
    RepairCmd,
    RepairModuleCmd,
    RequireCmd,
    TermList,
)
from kernel.declarations import (
    declare_assumption,
    declare_definition,
    declare_inductive,
)
from kernel.env import Context, GlobalEnv, InductiveDecl
from kernel.terms import lams, pis
from search.permutations import (
    config_from_permutation,
    find_permutations,
    select_mapping,
)
from transform.guard import head_name
from transform.cache import LiftStats
from transform.lift import Annotations
from transform.repair import Repairer, RepairResult
from transform.unify import INDEXED_ROLES, ROLES

logger = logging.getLogger(__name__)

LIST_FIELDS = ('constr_a', 'constr_b', 'iota_a', 'iota_b')
TERM_FIELDS = (
    'elim_a', 'elim_b', 'eta_a', 'eta_b', 'eta_ok_a', 'eta_ok_b')
EQUIVALENCE_FIELD = 'equivalence'


class Session:
    """Runs commands against a growing environment.

    `base_dir` is where `Require` looks for files that are not next to
    the requiring file.
    """

    def __init__(
            self, env: Optional[GlobalEnv] = None,
            base_dir: Optional[Path] = None,
            use_cache: Optional[bool] = None):
        self.env = env if env is not None else GlobalEnv.empty()
        self.base_dir = Path(base_dir) if base_dir else None
        self.use_cache = use_cache
        self.configurations: Dict[str, Configuration] = {}
        self.annotations: Dict[str, Annotations] = {}
        self.results: List[RepairResult] = []
        self.scripts: Dict[str, Script] = {}
        self.stats = LiftStats()
        self.loaded: List[Path] = []
        self._dirs: List[Path] = []

    # Files

    def load_file(self, path) -> 'Session':
        path = Path(path).resolve()
        if path in self.loaded:
            logger.debug('%s is already loaded', path)
            return self
        self.loaded.append(path)
        commands = parse_file(read_source(path))
        self._dirs.append(path.parent)
        try:
            self.run(commands)
        finally:
            self._dirs.pop()
        logger.info('loaded %s (%d commands)', path.name, len(commands))
        return self

    def run_text(self, text: str) -> 'Session':
        return self.run(parse_file(text))

    def run(self, commands) -> 'Session':
        for command in commands:
            self.execute(command)
        return self

    def execute(self, command):
        handlers = {
            RequireCmd: self._require,
            InductiveCmd: self._inductive,
            DefinitionCmd: self._definition,
            AxiomCmd: self._axiom,
            OpaqueCmd: self._opaque,
            ConfigureCmd: self._configure,
            AnnotateCmd: self._annotate,
            RepairCmd: self._repair,
            RepairModuleCmd: self._repair_module,
            DecompileCmd: self._decompile,
        }
        return handlers[type(command)](command)

    def _require(self, cmd: RequireCmd):
        for directory in self._dirs[-1:] + [self.base_dir]:
            if directory is not None and (directory / cmd.path).exists():
                return self.load_file(directory / cmd.path)
        raise ElaborationError(f'cannot find {cmd.path}')

    # Declarations

    def _elaborator(self, pending=()):
        return Elaborator(self.env, pending)

    def _inductive(self, cmd: InductiveCmd):
        elab = self._elaborator(pending=[cmd.name])
        params = elab.telescope(cmd.params)
        names = [name for name, _ in params]
        decl = InductiveDecl(
            cmd.name, tuple(params), elab.term(cmd.arity, names),
            tuple((cname, elab.term(ctype, names))
                  for cname, ctype in cmd.constructors))
        self.env = declare_inductive(self.env, decl)

    def _definition(self, cmd: DefinitionCmd):
        elab = self._elaborator()
        params = elab.telescope(cmd.params)
        names = [name for name, _ in params]
        type = pis(params, elab.term(cmd.type, names))
        body = lams(params, elab.term(cmd.body, names))
        self.env = declare_definition(self.env, cmd.name, type, body)

    def _axiom(self, cmd: AxiomCmd):
        elab = self._elaborator()
        params = elab.telescope(cmd.params)
        names = [name for name, _ in params]
        self.env = declare_assumption(
            self.env, cmd.name, pis(params, elab.term(cmd.type, names)))

    def _opaque(self, cmd: OpaqueCmd):
        self.env = self.env.set_opaque(cmd.names)

    # Configurations

    def _configure(self, cmd: ConfigureCmd):
        if cmd.name in self.configurations:
            raise ElaborationError(f'configuration {cmd.name} exists')
        elab = self._elaborator()
        params = tuple(elab.telescope(cmd.params))
        names = [name for name, _ in params]
        type_a = elab.term(cmd.type_a, names)
        type_b = elab.term(cmd.type_b, names)
        fields = dict(cmd.fields)
        if EQUIVALENCE_FIELD in fields:
            cfg = self._from_equivalence(
                cmd.name, params, type_a, type_b, fields)
        else:
            cfg = build_configuration(
                self.env, cmd.name, params, type_a, type_b,
                **self._components(cmd.name, fields))
        self.configurations[cmd.name] = cfg
        logger.info('configured %s', cmd.name)
        return cfg

    def _components(self, name, fields):
        elab = self._elaborator()
        components = {}
        for key, value in fields.items():
            if key == 'trusted':
                if not isinstance(value, LabelList):
                    raise ElaborationError(
                        f'{name}: trusted expects a list of strings')
                components[key] = value.items
            elif key in LIST_FIELDS:
                items = value.items if isinstance(value, TermList) \
                    else (value,)
                components[key] = [elab.term(item) for item in items]
            elif key in TERM_FIELDS and not isinstance(
                    value, (TermList, LabelList)):
                components[key] = elab.term(value)
            else:
                raise ElaborationError(f'{name}: unexpected field {key}')
        return components

    def _from_equivalence(self, name, params, type_a, type_b, fields):
        value = fields.pop(EQUIVALENCE_FIELD)
        if fields or not isinstance(value, TermList) \
                or len(value.items) != 4:
            raise ElaborationError(
                f'{name}: equivalence expects [f | g | section | '
                f'retraction] and no other field')
        elab = self._elaborator()
        f, g, section, retraction = (elab.term(item) for item in value.items)
        equivalence = Equivalence(
            params, type_a, type_b, f, g, section, retraction)
        if not check_equivalence(self.env, equivalence):
            raise ConfigError(f'{name}: the equivalence does not type check')
        self.env, cfg = configuration_from_equivalence(
            self.env, name, equivalence)
        return cfg

    def _annotate(self, cmd: AnnotateCmd):
        if cmd.role not in ROLES:
            raise ElaborationError(
                f'unknown role {cmd.role}; expected one of '
                f'{", ".join(ROLES)}')
        if (cmd.role in INDEXED_ROLES) != (cmd.index is not None):
            raise ElaborationError(
                f'{cmd.role} takes a constructor index'
                if cmd.role in INDEXED_ROLES
                else f'{cmd.role} takes no index')
        if self.env.definition(cmd.name) is None:
            raise ElaborationError(f'{cmd.name} is not a definition')
        found = self.annotations.setdefault(cmd.name, {})
        found[tuple(cmd.path)] = (cmd.role, cmd.index)

    def configuration_for(
            self, type_a: str, type_b: str, config: Optional[str] = None,
            mapping: Optional[int] = None) -> Configuration:
        """The configuration a repair from type_a to type_b uses.

        A named configuration is read in whichever direction relates the
        two types; a mapping index selects a constructor permutation.
        Otherwise the first configuration relating the types is used,
        then the best constructor permutation.
        """
        if config is not None:
            if config not in self.configurations:
                raise ElaborationError(f'unknown configuration {config}')
            oriented = _oriented(self.configurations[config], type_a, type_b)
            if oriented is None:
                raise ElaborationError(
                    f'{config} does not relate {type_a} and {type_b}')
            return oriented
        if mapping is not None:
            return self._permutation(type_a, type_b, mapping)
        for cfg in self.configurations.values():
            oriented = _oriented(cfg, type_a, type_b)
            if oriented is not None:
                return oriented
        if not find_permutations(self.env, type_a, type_b):
            raise ElaborationError(
                f'no configuration relates {type_a} and {type_b}')
        return self._permutation(type_a, type_b, 0)

    def _permutation(self, type_a, type_b, index):
        mappings = find_permutations(self.env, type_a, type_b)
        chosen = select_mapping(mappings, index)
        logger.info('using constructor mapping %s', chosen)
        return config_from_permutation(self.env, type_a, type_b, chosen)

    # Repair and decompilation

    def _repairer(self, cfg):
        return Repairer(
            self.env, cfg, annotations=self.annotations,
            use_cache=self.use_cache)

    def _repair(self, cmd: RepairCmd) -> RepairResult:
        cfg = self.configuration_for(
            cmd.type_a, cmd.type_b, cmd.config, cmd.mapping)
        repairer = self._repairer(cfg)
        try:
            result = repairer.repair(cmd.target, cmd.new_name)
        finally:
            self._collect(repairer)
        if cmd.suggest:
            self._suggest_repaired(repairer)
        return result

    def _repair_module(self, cmd: RepairModuleCmd) -> GlobalEnv:
        cfg = self.configuration_for(
            cmd.type_a, cmd.type_b, cmd.config, cmd.mapping)
        repairer = self._repairer(cfg)
        try:
            repairer.repair_module(cmd.targets)
        finally:
            self._collect(repairer)
        if cmd.suggest:
            self._suggest_repaired(repairer)
        return self.env

    def _collect(self, repairer):
        """Keep what the repairer declared, even when it failed later."""
        self.env = repairer.env
        self.stats.hits += repairer.stats.hits
        self.stats.misses += repairer.stats.misses
        self.stats.guard_hits += repairer.stats.guard_hits
        for result in repairer.results:
            if result.changed and result not in self.results:
                self.results.append(result)
        logger.info(
            'lift cache: %(hits)d hits, %(misses)d misses, '
            '%(guard_hits)d guard hits', repairer.stats.as_dict())

    def _suggest_repaired(self, repairer):
        for result in repairer.results:
            if result.changed:
                self.suggest(result.new_name)

    def _decompile(self, cmd: DecompileCmd) -> Script:
        return self.suggest(cmd.name)

    def goal_of(self, name: str) -> Goal:
        definition = self.env.definition(name)
        if definition is None:
            raise ElaborationError(f'{name} is not a definition')
        return Goal(Context(), definition.type)

    def suggest(self, name: str, simplify: bool = True) -> Script:
        """A script proving the statement of name, built from its body."""
        goal = self.goal_of(name)
        body = self.env.definition(name).body
        script = decompile(self.env, goal.ctx, body)
        if simplify:
            script = simplify_script(self.env, goal, script)
        self.scripts[name] = script
        return script

    # Output

    def render_script(self, name: str) -> str:
        return print_script(self.scripts[name], env=self.env)

    def render_scripts(self) -> str:
        return '\n'.join(
            f'(* {name} *)\n{self.render_script(name)}'
            for name in self.scripts)

    def render_environment(self) -> str:
        """The whole environment as a self-contained .pml file."""
        parts = []
        for entry in self.env:
            parts.append(print_command(entry, self.env))
            if entry.name in self.scripts:
                parts.append(
                    f'(* Suggested script for {entry.name}:\n'
                    f'{self.render_script(entry.name)}*)')
        for cfg in self.configurations.values():
            parts.append(print_configuration(cfg, self.env))
        for name, annotations in self.annotations.items():
            parts.extend(
                print_annotation(name, path, role, index)
                for path, (role, index) in annotations.items())
        if self.env.opaque:
            parts.append(f'Opaque {" ".join(sorted(self.env.opaque))}.')
        return '\n\n'.join(parts) + '\n'


def _oriented(
        cfg: Configuration, type_a: str, type_b: str
) -> Optional[Configuration]:
    heads = (head_name(cfg.type_a), head_name(cfg.type_b))
    if heads == (type_a, type_b):
        return cfg
    if heads == (type_b, type_a):
        return cfg.reversed()
    return None


def read_source(path: Path) -> str:
    """The text of a .pml file, which must be UTF-8."""
    data = path.read_bytes()
    try:
        return data.decode('utf-8')
    except UnicodeDecodeError as error:
        before = data[:error.start]
        line = before.count(b'\n') + 1
        column = error.start - (before.rfind(b'\n') + 1) + 1
        raise ParseError(
            f'{path.name}: invalid UTF-8 at byte {error.start}',
            line, column) from None
