"""
Django command to repair several definitions of a .pml file
"""

from frontend.management.commands.repair import (
    Command as RepairCommand,
    add_repair_arguments,
)
from frontend.syntax import RepairModuleCmd


class Command(RepairCommand):
    """Repair definitions in dependency order with one shared cache."""
    help = 'Repair a list of definitions along a configuration.'

    def add_arguments(self, parser):
        super(RepairCommand, self).add_arguments(parser)
        add_repair_arguments(parser)
        parser.add_argument('--targets', nargs='+', required=True)

    def run(self, **options):
        session = self.load(options)
        for name in options['targets']:
            self.require_definition(session, name)
        before = len(session.results)
        session.execute(RepairModuleCmd(
            options['type_a'], options['type_b'], tuple(options['targets']),
            options['config'], options['mapping'],
            options['suggest_tactics']))
        self.report(session, options, session.results[before:])
