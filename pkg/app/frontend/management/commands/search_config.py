"""
Django command to list the constructor mappings between two inductives
"""

from frontend.cli import PmlCommand
from search.permutations import find_permutations
from search.serializers import ConstructorMappingSerializer


class Command(PmlCommand):
    """Rank every constructor mapping from --from to --to."""
    help = 'List candidate configurations between two inductive types.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--from', dest='type_a', required=True)
        parser.add_argument('--to', dest='type_b', required=True)

    def run(self, **options):
        session = self.load(options)
        mappings = find_permutations(
            session.env, options['type_a'], options['type_b'])
        ranks = {m.permutation: i for i, m in enumerate(mappings)}
        data = ConstructorMappingSerializer(
            mappings, many=True, context={'ranks': ranks}).data
        lines = [
            f'{i}: {mapping} (same names {mapping.score[0]}, '
            f'distance {mapping.score[1]})'
            for i, mapping in enumerate(mappings)]
        if not lines:
            lines = ['no constructor mapping found']
        self.emit(options, data, '\n'.join(lines))
