"""
Tests for printing, reading and simplifying tactic scripts.
"""

from django.test import SimpleTestCase

from corpus.loader import corpus_session
from decompile.decompiler import decompile
from decompile.errors import ScriptSyntaxError
from decompile.replay import replays
from decompile.script import bullet, parse_script, print_script
from decompile.simplify import Simplifier, merge_intros, simplify_script
from decompile.tactics import (
    Apply,
    Goal,
    Induction,
    Intro,
    Intros,
    Reflexivity,
    Script,
)
from kernel.env import Context
from kernel.terms import ConstRef


def decompiled(env, name):
    """Create and return the goal of name and the script of its body."""
    entry = env.definition(name)
    return (
        Goal(Context(), entry.type),
        decompile(env, Context(), entry.body))


class PrintScriptTests(SimpleTestCase):
    """Test the text form of scripts."""

    def setUp(self):
        self.env = corpus_session('lists').env

    def test_bullets(self):
        """Test bullets cycle with depth and double after three levels."""
        self.assertEqual(
            [bullet(depth) for depth in range(5)],
            ['-', '+', '*', '--', '++'])

    def test_branches_are_bulleted(self):
        """Test the induction branches follow it as bullet blocks."""
        _, script = decompiled(self.env, 'Old.rev_app_distr_nil')

        text = print_script(script, env=self.env)

        lines = text.splitlines()
        self.assertEqual(lines[0], 'intro T.')
        self.assertTrue(lines[2].startswith('induction (y0) with (fun'))
        self.assertIn('- reflexivity.', lines)
        self.assertIn('- intro a.', lines)
        self.assertIn('  rewrite -> (Old.app_nil_r T', text)

    def test_printed_scripts_read_back(self):
        """Test reading a printed script gives the same script."""
        for name in ('Old.rev_app_distr_nil', 'Old.app_assoc', 'Old.rev'):
            with self.subTest(name=name):
                _, script = decompiled(self.env, name)
                text = print_script(script, env=self.env)

                self.assertEqual(parse_script(text, self.env), script)

    def test_comments_and_blank_lines_are_skipped(self):
        """Test a script may carry comment lines."""
        text = '(* proof *)\n\nintros n m.\nreflexivity.\n'

        script = parse_script(text, self.env)

        self.assertEqual(
            script, Script.of(Intros(('n', 'm')), Reflexivity()))

    def test_unexpected_bullet(self):
        """Test a bullet without a branching tactic is rejected."""
        with self.assertRaises(ScriptSyntaxError) as raised:
            parse_script('intro n.\n- reflexivity.\n', self.env)

        self.assertEqual(raised.exception.line, 2)

    def test_unknown_name_reports_the_line(self):
        """Test elaboration errors carry the script line."""
        with self.assertRaisesMessage(ScriptSyntaxError, 'line 2'):
            parse_script('intro n.\napply (missing n).\n', self.env)


class SimplifyTests(SimpleTestCase):
    """Test script simplification."""

    def setUp(self):
        self.env = corpus_session('lists').env

    def test_merge_intros(self):
        """Test adjacent intros are merged into one step."""
        script = Script.of(
            Intro('a'), Intros(('b',)), Intro('c'), Reflexivity())

        self.assertEqual(
            merge_intros(script),
            Script.of(Intros(('a', 'b', 'c')), Reflexivity()))

    def test_merge_intros_inside_branches(self):
        """Test intros are merged in every branch."""
        branch = Script.of(Intro('x'), Intro('y'), Reflexivity())
        script = Script.of(Induction(ConstRef('n'), None, (branch,)))

        merged = merge_intros(script)

        self.assertEqual(
            merged.steps[0].branches[0],
            Script.of(Intros(('x', 'y')), Reflexivity()))

    def test_simplified_script_still_replays(self):
        """Test simplification never breaks replay or grows the script."""
        for name in ('Old.rev_app_distr_nil', 'Old.app_nil_r'):
            with self.subTest(name=name):
                goal, script = decompiled(self.env, name)

                simpler = simplify_script(self.env, goal, script)

                self.assertTrue(replays(self.env, goal, simpler))
                self.assertLessEqual(simpler.size, script.size)

    def test_hint_replaces_a_subtree(self):
        """Test a hint that proves the goal replaces the whole script."""
        goal, script = decompiled(self.env, 'Old.app_nil_r')
        hint = Script.of(Apply(ConstRef('Old.app_nil_r')))
        simplifier = Simplifier(self.env, goal, {'Old.app_nil_r': hint})

        simpler = simplifier.simplify(script)

        self.assertEqual(simpler, hint)
        self.assertEqual(simplifier.replaced, 1)

    def test_hint_that_does_not_replay_is_ignored(self):
        """Test a hint proving something else leaves the script alone."""
        goal, script = decompiled(self.env, 'Old.app_nil_r')
        hint = Script.of(Apply(ConstRef('Old.app_assoc')))
        simplifier = Simplifier(self.env, goal, {'Old.app_assoc': hint})

        simpler = simplifier.simplify(script)

        self.assertEqual(simplifier.replaced, 0)
        self.assertTrue(replays(self.env, goal, simpler))

    def test_script_that_does_not_replay_is_returned(self):
        """Test a broken script is left as it is."""
        goal, _ = decompiled(self.env, 'Old.app_nil_r')
        broken = Script.of(Intro('T'), Reflexivity())

        self.assertEqual(simplify_script(self.env, goal, broken), broken)
