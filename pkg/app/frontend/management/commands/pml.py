"""
Django command dispatching the hyphenated pml subcommands.
"""

import argparse

from django.core.management import call_command
from django.core.management.base import BaseCommand, CommandError

from frontend.cli import SUBCOMMANDS, usage_error


class Command(BaseCommand):
    """pml check|repair|repair-module|search-config|decompile|
    validate-config"""
    help = 'Check, repair and decompile .pml files.'

    def add_arguments(self, parser):
        parser.add_argument('subcommand', choices=sorted(SUBCOMMANDS))
        parser.add_argument('args', nargs=argparse.REMAINDER)

    def handle(self, *args, **options):
        # call_command and run_from_argv pass the remainder as args
        try:
            call_command(
                SUBCOMMANDS[options['subcommand']], *args,
                stdout=self.stdout, stderr=self.stderr)
        except CommandError as error:
            raise usage_error(error)
