"""
Access to the shipped .pml corpus.
"""

import logging
from functools import lru_cache
from pathlib import Path
from typing import Optional

from django.conf import settings

from frontend.session import Session
from kernel.env import GlobalEnv

logger = logging.getLogger(__name__)


def corpus_dir() -> Path:
    return Path(settings.PML_CORPUS_DIR)


def corpus_path(name: str) -> Path:
    """Path of a corpus file, with or without its extension."""
    path = corpus_dir() / name
    if path.suffix != '.pml':
        path = path.with_suffix('.pml')
    return path


def corpus_files():
    return sorted(corpus_dir().glob('*.pml'))


def load_corpus_file(name: str, use_cache: bool = False):
    """A fresh session with the corpus file `name` loaded."""
    session = Session(base_dir=corpus_dir(), use_cache=use_cache)
    session.load_file(corpus_path(name))
    logger.info('loaded corpus file %s', name)
    return session


@lru_cache(maxsize=None)
def _loaded(name):
    return load_corpus_file(name)


def corpus_session(name: str):
    """A loaded corpus session shared within the process.

    Sessions are mutable; callers that execute commands must use
    `load_corpus_file` instead.
    """
    return _loaded(name)


def load_prelude(env: Optional[GlobalEnv] = None) -> GlobalEnv:
    """The prelude declared over env, or on its own when env is None."""
    if env is None:
        return corpus_session('prelude').env
    session = Session(env=env, base_dir=corpus_dir())
    return session.load_file(corpus_path('prelude')).env
