"""
Tests comparing printed output with the golden files next to the corpus.

`<file>.nf` lists `term ~> normal form` pairs evaluated in the corpus
file; `<file>.qtac` holds scripts under `(* name *)` headers, each proving
the statement of the named definition; `<file>.elim` holds a printed
dependent eliminator.
"""

import re
from pathlib import Path

from django.test import SimpleTestCase

from config.tests.test_configuration import list_configuration
from corpus.loader import corpus_files, corpus_session
from decompile.replay import replays
from decompile.script import parse_script, print_script
from decompile.tactics import Goal
from frontend.elaborate import elaborate
from frontend.parser import parse_term
from frontend.printer import print_term
from kernel.env import Context
from kernel.reduction import normalize

GOLDEN_DIR = Path(__file__).resolve().parent.parent / 'golden'
_HEADER = re.compile(r'^\(\* (\S+) \*\)\n', re.MULTILINE)


def golden(name):
    return (GOLDEN_DIR / name).read_text(encoding='utf-8')


def normal_forms(stem):
    """(term, expected) pairs of a .nf file, skipping comment lines."""
    pairs = []
    for line in golden(f'{stem}.nf').splitlines():
        if not line.strip() or line.startswith('(*'):
            continue
        term, expected = line.split(' ~> ')
        pairs.append((term, expected))
    return pairs


def scripts(stem):
    """(definition, script text) pairs of a .qtac file."""
    parts = _HEADER.split(golden(f'{stem}.qtac'))
    return [
        (name, body.rstrip('\n') + '\n')
        for name, body in zip(parts[1::2], parts[2::2])]


class NormalFormTests(SimpleTestCase):
    """Test evaluation in each corpus file against its .nf file."""

    def test_every_corpus_file_has_normal_forms(self):
        """Test a .nf file exists for each corpus file and is not empty."""
        stems = {path.stem for path in corpus_files()}

        self.assertEqual(
            {path.stem for path in GOLDEN_DIR.glob('*.nf')}, stems)
        for stem in stems:
            with self.subTest(file=stem):
                self.assertTrue(normal_forms(stem))

    def test_normal_forms(self):
        """Test each term normalizes to the printed form on record."""
        for path in corpus_files():
            env = corpus_session(path.stem).env
            for text, expected in normal_forms(path.stem):
                with self.subTest(file=path.stem, term=text):
                    term = elaborate(env, parse_term(text))

                    result = normalize(env, Context(), term)

                    self.assertEqual(print_term(result, env=env), expected)


class EliminatorTests(SimpleTestCase):
    """Test printed dependent eliminators of two configurations."""

    def test_swapped_list_eliminator(self):
        """Test New.list's eliminator with its cases put in Old.list order."""
        env = corpus_session('lists').env
        cfg = list_configuration(env)

        text = print_term(cfg.elim_b, env=env)

        self.assertEqual(text + '\n', golden('lists.elim'))

    def test_packed_vector_eliminator(self):
        """Test the statement of the eliminator over packed vectors."""
        session = corpus_session('vector')
        cfg = session.configurations['list_packed']
        entry = session.env.definition(cfg.elim_b.name)

        text = print_term(entry.type, env=session.env)

        self.assertEqual(text + '\n', golden('vector.elim'))


class ScriptTests(SimpleTestCase):
    """Test the golden tactic scripts read, print and replay."""

    def test_scripts_print_as_written(self):
        """Test printing a parsed script gives back the file text."""
        for path in sorted(GOLDEN_DIR.glob('*.qtac')):
            env = corpus_session(path.stem).env
            for name, text in scripts(path.stem):
                with self.subTest(definition=name):
                    script = parse_script(text, env)

                    self.assertEqual(print_script(script, env=env), text)

    def test_scripts_replay(self):
        """Test each script proves the statement of its definition."""
        found = []
        for path in sorted(GOLDEN_DIR.glob('*.qtac')):
            env = corpus_session(path.stem).env
            for name, text in scripts(path.stem):
                found.append(name)
                with self.subTest(definition=name):
                    goal = Goal(Context(), env.definition(name).type)

                    self.assertTrue(
                        replays(env, goal, parse_script(text, env)))
        self.assertEqual(
            found, ['I.to_bool', 'Old.length', 'eq_sym', 'eq_trans'])
