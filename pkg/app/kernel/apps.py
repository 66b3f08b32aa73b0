import sys

from django.apps import AppConfig
from django.conf import settings


class KernelConfig(AppConfig):
    name = 'kernel'
    verbose_name = 'Type theory kernel'

    def ready(self):
        """Deep proof terms need more stack than the interpreter default."""
        limit = getattr(settings, 'PML_RECURSION_LIMIT', 20000)
        if sys.getrecursionlimit() < limit:
            sys.setrecursionlimit(limit)
