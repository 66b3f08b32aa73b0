"""
Django command to repair one definition of a .pml file
"""

from pathlib import Path

from frontend.cli import PmlCommand
from frontend.serializers import RepairRunSerializer
from frontend.syntax import RepairCmd


def add_repair_arguments(parser):
    parser.add_argument('--from', dest='type_a', required=True)
    parser.add_argument('--to', dest='type_b', required=True)
    source = parser.add_mutually_exclusive_group()
    source.add_argument('--config', help='name of a configuration')
    source.add_argument(
        '--mapping', type=int, help='index of a constructor mapping')
    parser.add_argument('--suggest-tactics', action='store_true')
    parser.add_argument('--output', help='directory for the written files')


class Command(PmlCommand):
    """Repair a definition and write <stem>.repaired.pml."""
    help = 'Repair a definition along a configuration.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        add_repair_arguments(parser)
        parser.add_argument('--target', required=True)
        parser.add_argument('--as', dest='new_name')

    def run(self, **options):
        session = self.load(options)
        self.require_definition(session, options['target'])
        before = len(session.results)
        session.execute(RepairCmd(
            options['type_a'], options['type_b'], options['target'],
            options['new_name'], options['config'], options['mapping'],
            options['suggest_tactics']))
        self.report(session, options, session.results[before:])

    def report(self, session, options, repaired):
        """Write the output files and print what was repaired."""
        directory = self.output_dir(options)
        stem = Path(options['file']).stem
        output = directory / f'{stem}.repaired.pml'
        output.write_text(session.render_environment(), encoding='utf-8')
        scripts = None
        if options['suggest_tactics']:
            scripts = directory / f'{stem}.qtac'
            scripts.write_text(session.render_scripts(), encoding='utf-8')
        cfg = session.configuration_for(
            options['type_a'], options['type_b'], options['config'],
            options['mapping'])
        data = RepairRunSerializer({
            'file': options['file'],
            'configuration': cfg.name,
            'repaired': repaired,
            'output': str(output),
            'scripts': None if scripts is None else str(scripts),
            'stats': session.stats.as_dict(),
        }, context={'env': session.env}).data
        lines = [
            f'{result.name} -> {result.new_name}' for result in repaired]
        lines.append(f'wrote {output}')
        if scripts is not None:
            lines.append(f'wrote {scripts}')
        self.emit(options, data, '\n'.join(lines))
