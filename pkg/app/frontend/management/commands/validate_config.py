"""
Django command to validate the configurations of a .pml file
"""

from django.core.management.base import CommandError

from config.serializers import ValidationReportSerializer
from config.validation import validate_configuration
from frontend.cli import EXIT_INVALID, EXIT_USAGE, PmlCommand


class Command(PmlCommand):
    """Check each configuration against its obligations."""
    help = 'Validate configurations.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            'names', nargs='*', metavar='name',
            help='configurations to validate (default: all)')
        parser.add_argument('--allow-assumptions', action='store_true')

    def run(self, **options):
        session = self.load(options)
        names = options['names'] or list(session.configurations)
        unknown = [n for n in names if n not in session.configurations]
        if unknown:
            raise CommandError(
                f'unknown configuration {", ".join(unknown)}',
                returncode=EXIT_USAGE)
        allow = True if options['allow_assumptions'] else None
        reports = [
            validate_configuration(
                session.env, session.configurations[name], allow)
            for name in names]
        data = ValidationReportSerializer(reports, many=True).data
        lines = []
        for report in reports:
            lines.append(
                f'{report.configuration}: '
                f'{"ok" if report.ok else "FAILED"}')
            for criterion in report.criteria:
                detail = f' ({criterion.error})' if criterion.error else ''
                lines.append(
                    f'  {criterion.label}: {criterion.status}{detail}')
        self.emit(options, data, '\n'.join(lines))
        failed = [r.configuration for r in reports if not r.ok]
        if failed:
            raise CommandError(
                f'invalid configuration {", ".join(failed)}',
                returncode=EXIT_INVALID)
