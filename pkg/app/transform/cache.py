"""
Caches for transported terms and repaired definitions.

The lift cache lives for one repair run and is keyed on the
configuration fingerprint, the source term and, for open terms, the
context it is lifted in. Repaired definitions additionally go to the
`lift` alias of Django's cache framework so later runs can reuse them.
"""

import hashlib
import logging
import threading
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from django.conf import settings
from django.core.cache import caches

from kernel.env import Context
from kernel.terms import Term

logger = logging.getLogger(__name__)

CACHE_ALIAS = 'lift'


@dataclass
class LiftStats:
    hits: int = 0
    misses: int = 0
    guard_hits: int = 0

    def as_dict(self):
        return {
            'hits': self.hits, 'misses': self.misses,
            'guard_hits': self.guard_hits}


def caching_enabled() -> bool:
    return bool(getattr(settings, 'PML_LIFT_CACHE', True))


class LiftCache:
    """(configuration, term, context) -> transported term, thread safe."""

    def __init__(self):
        self._table: Dict[Tuple, Term] = {}
        self._lock = threading.Lock()

    @staticmethod
    def key(fingerprint: str, t: Term, ctx: Context):
        return (fingerprint, t, ctx.entries if t.loose else ())

    def get(self, key) -> Optional[Term]:
        with self._lock:
            return self._table.get(key)

    def put(self, key, value: Term):
        with self._lock:
            self._table[key] = value

    def __len__(self):
        return len(self._table)

    def clear(self):
        with self._lock:
            self._table.clear()


def repaired_key(fingerprint: str, name: str, type: Term, body: Term,
                 annotations=None):
    marks = sorted((annotations or {}).items())
    digest = hashlib.sha256(
        repr((fingerprint, name, type, body, marks)).encode()).hexdigest()
    return f'repaired:{digest}'


def load_repaired(key: str):
    """(new type, new body) stored by an earlier run, or None."""
    found = caches[CACHE_ALIAS].get(key)
    if found is not None:
        logger.debug('persistent cache hit %s', key)
    return found


def store_repaired(key: str, type: Term, body: Term):
    caches[CACHE_ALIAS].set(key, (type, body), timeout=None)
