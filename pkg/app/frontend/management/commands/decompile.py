"""
Django command to suggest tactic scripts for definitions
"""

from decompile.replay import replays
from decompile.serializers import ScriptSerializer
from frontend.cli import PmlCommand
from frontend.printer import print_term


class Command(PmlCommand):
    """Print a script proving the statement of each named definition."""
    help = 'Decompile definitions into tactic scripts.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('names', nargs='+', metavar='name')
        parser.add_argument(
            '--no-simplify', action='store_true',
            help='print the scripts exactly as decompiled')

    def run(self, **options):
        session = self.load(options)
        found = []
        for name in options['names']:
            self.require_definition(session, name)
            script = session.suggest(
                name, simplify=not options['no_simplify'])
            goal = session.goal_of(name)
            found.append({
                'name': name,
                'goal': print_term(goal.target, env=session.env),
                'script': session.render_script(name),
                'tactics': script.size,
                'replays': replays(session.env, goal, script),
            })
        data = ScriptSerializer(found, many=True).data
        text = '\n'.join(
            f'(* {item["name"]} *)\n{item["script"]}' for item in found)
        self.emit(options, data, text.rstrip('\n'))
