"""
Shared machinery of the pml management commands.

Exit codes: 0 success, 1 type or validation error, 2 usage error,
3 transformation failure.
"""

import logging
from pathlib import Path

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import BaseCommand, CommandError
from rest_framework.renderers import JSONRenderer

from decompile.errors import DecompileError
from frontend.session import Session
from kernel.errors import PmlError
from search.errors import SearchError, SelectionError
from transform.errors import TransformError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_TRANSFORM = 3

SUBCOMMANDS = {
    'check': 'check_pml',
    'repair': 'repair',
    'repair-module': 'repair_module',
    'search-config': 'search_config',
    'decompile': 'decompile',
    'validate-config': 'validate_config',
}


def exit_code(error: PmlError) -> int:
    """The exit status a failure of this class maps to."""
    if isinstance(error, SelectionError):
        return EXIT_USAGE
    if isinstance(error, (TransformError, SearchError, DecompileError)):
        return EXIT_TRANSFORM
    return EXIT_INVALID


class PmlCommand(BaseCommand):
    """Base class: loads a .pml file and maps failures to exit codes."""

    def add_arguments(self, parser):
        parser.add_argument('file', help='.pml file to load')
        parser.add_argument(
            '--json', action='store_true', help='print results as JSON')
        parser.add_argument(
            '--no-cache', action='store_true',
            help='disable the lift and repaired-definition caches')

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except CommandError:
            raise
        except PmlError as error:
            logger.debug('command failed', exc_info=True)
            raise CommandError(str(error), returncode=exit_code(error))

    def run(self, **options):
        raise NotImplementedError

    def load(self, options) -> Session:
        path = Path(options['file'])
        if not path.is_file():
            raise CommandError(f'no such file: {path}', returncode=EXIT_USAGE)
        use_cache = False if options.get('no_cache') else None
        session = Session(base_dir=settings.PML_CORPUS_DIR,
                          use_cache=use_cache)
        return session.load_file(path)

    def require_definition(self, session: Session, name: str):
        if session.env.definition(name) is None:
            raise CommandError(
                f'{name} is not a definition', returncode=EXIT_USAGE)

    def emit(self, options, data, text):
        """Print data as JSON when asked to, text otherwise."""
        if options.get('json'):
            self.stdout.write(JSONRenderer().render(data).decode())
        else:
            self.stdout.write(text)

    def output_dir(self, options) -> Path:
        directory = options.get('output')
        if directory:
            path = Path(directory)
            path.mkdir(parents=True, exist_ok=True)
            return path
        return Path(options['file']).resolve().parent


def usage_error(error: CommandError) -> CommandError:
    """Argument parsing failures raise CommandError('Error: ...')."""
    if str(error).startswith('Error: ') and error.returncode != EXIT_USAGE:
        return CommandError(str(error), returncode=EXIT_USAGE)
    return error


def run_cli(args, stdout=None, stderr=None) -> int:
    """Run `pml <subcommand> ...` and return its exit status."""
    try:
        call_command('pml', *args, stdout=stdout, stderr=stderr)
    except CommandError as error:
        error = usage_error(error)
        if stderr is not None:
            stderr.write(f'{error}\n')
        return error.returncode
    return EXIT_OK
