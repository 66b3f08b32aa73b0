"""
Django command to type check a .pml file
"""

from frontend.cli import PmlCommand
from frontend.serializers import CheckSerializer


class Command(PmlCommand):
    """Load a file, running every command in it."""
    help = 'Type check a .pml file.'

    def run(self, **options):
        session = self.load(options)
        data = CheckSerializer({
            'file': options['file'],
            'declarations': len(session.env.names()),
            'configurations': list(session.configurations),
            'scripts': {
                name: session.render_script(name)
                for name in session.scripts},
        }).data
        text = [
            f'{options["file"]}: {data["declarations"]} declarations, '
            f'{len(data["configurations"])} configurations checked.']
        for name, script in data['scripts'].items():
            text.append(f'(* {name} *)\n{script}')
        self.emit(options, data, '\n'.join(text))
