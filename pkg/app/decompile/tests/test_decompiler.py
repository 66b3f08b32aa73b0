"""
Tests for decompiling proof terms and replaying the scripts.
"""

from django.test import SimpleTestCase

from corpus.loader import corpus_files, corpus_session, load_prelude
from decompile.decompiler import decompile, fresh_local
from decompile.errors import ReplayFailed
from decompile.replay import replay, replays
from decompile.tactics import (
    BACKWARD,
    FORWARD,
    Apply,
    Goal,
    Induction,
    Intro,
    Left,
    Reflexivity,
    Rewrite,
    Script,
    Split,
    Symmetry,
)
from frontend.elaborate import elaborate
from frontend.parser import parse_term
from kernel.env import Context, Definition
from kernel.terms import ConstRef, IndRef, unfold_app
from kernel.typing import check_type

NAT = IndRef('nat')


def term(env, text, names=()):
    """Create and return the elaborated term written as text."""
    return elaborate(env, parse_term(text), names)


def statement(env, name):
    """Create and return the closed goal stating the type of name."""
    return Goal(Context(), env.definition(name).type)


class DecompileTests(SimpleTestCase):
    """Test the shape of decompiled scripts."""

    def setUp(self):
        self.env = corpus_session('lists').env

    def test_induction_and_rewrite(self):
        """Test the nil case of rev_app_distr decompiles by induction."""
        body = self.env.definition('Old.rev_app_distr_nil').body

        script = decompile(self.env, Context(), body)

        self.assertEqual(script.steps[:2], (Intro('T'), Intro('y0')))
        induction = script.steps[2]
        self.assertIsInstance(induction, Induction)
        self.assertEqual(len(induction.branches), 2)
        self.assertEqual(induction.branches[0], Script.of(Reflexivity()))
        cons_case = induction.branches[1].steps
        self.assertEqual(cons_case[:3], (Intro('a'), Intro('l'), Intro('H')))
        rewrite = cons_case[3]
        self.assertIsInstance(rewrite, Rewrite)
        self.assertEqual(rewrite.direction, FORWARD)
        head, _ = unfold_app(rewrite.equation)
        self.assertEqual(head, ConstRef('Old.app_nil_r'))
        self.assertEqual(cons_case[4], Reflexivity())

    def test_replay_rebuilds_a_well_typed_term(self):
        """Test replaying the decompiled script proves the statement."""
        goal = statement(self.env, 'Old.rev_app_distr_nil')
        body = self.env.definition('Old.rev_app_distr_nil').body

        proof = replay(self.env, goal, decompile(self.env, Context(), body))

        check_type(self.env, Context(), proof, goal.target)

    def test_every_definition_replays(self):
        """Test each definition of every corpus file replays."""
        for path in corpus_files():
            env = corpus_session(path.stem).env
            for entry in env:
                if not isinstance(entry, Definition):
                    continue
                with self.subTest(file=path.stem, name=entry.name):
                    script = decompile(env, Context(), entry.body)
                    self.assertTrue(replays(
                        env, Goal(Context(), entry.type), script))

    def test_equation_elimination_rewrites_backward(self):
        """Test eq_sym's own body is a backward rewrite."""
        env = load_prelude()
        body = env.definition('eq_sym').body

        script = decompile(env, Context(), body)

        rewrite = script.steps[4]
        self.assertEqual(rewrite.direction, BACKWARD)
        self.assertEqual(script.steps[5:], (Reflexivity(),))

    def test_symmetric_equation(self):
        """Test eq_sym applied to a proof becomes symmetry."""
        env = load_prelude()
        proof = term(env, 'eq_sym nat O O (eq_refl nat O)')

        script = decompile(env, Context(), proof)

        self.assertEqual(script, Script.of(Symmetry(), Reflexivity()))

    def test_conjunction_splits(self):
        """Test a pair of proofs becomes split with one branch each."""
        env = load_prelude()
        proof = term(env, 'conj unit unit tt tt')
        tt = term(env, 'tt')

        script = decompile(env, Context(), proof)

        self.assertEqual(script, Script.of(Split((
            Script.of(Apply(tt)), Script.of(Apply(tt))))))
        goal = Goal(Context(), term(env, 'and unit unit'))
        self.assertEqual(replay(env, goal, script), proof)

    def test_disjunction_chooses_a_side(self):
        """Test the first injection of or becomes left."""
        env = load_prelude()
        proof = term(env, 'or_introl unit bool tt')

        script = decompile(env, Context(), proof)

        self.assertEqual(script.steps[0], Left())
        self.assertTrue(replays(
            env, Goal(Context(), term(env, 'or unit bool')), script))

    def test_non_dependent_application(self):
        """Test S n applies S and proves its argument next."""
        env = load_prelude()
        proof = term(env, 'S O')

        script = decompile(env, Context(), proof)

        self.assertEqual(script.steps[0], Apply(term(env, 'S')))
        self.assertEqual(replay(env, Goal(Context(), NAT), script), proof)


class ReplayTests(SimpleTestCase):
    """Test replay failures."""

    def setUp(self):
        self.env = load_prelude()

    def test_split_needs_one_constructor(self):
        """Test split on a goal with two constructors fails."""
        tt = term(self.env, 'tt')
        script = Script.of(Split((Script.of(Apply(tt)),)))

        with self.assertRaises(ReplayFailed) as raised:
            replay(self.env, Goal(Context(), IndRef('bool')), script)

        self.assertEqual(raised.exception.step, script.steps[0])

    def test_open_goal(self):
        """Test a script ending before the goal is closed fails."""
        goal = Goal(Context(), term(self.env, 'forall (n : nat), nat'))

        with self.assertRaisesMessage(ReplayFailed, 'still open'):
            replay(self.env, goal, Script.of(Intro('n')))

    def test_steps_after_a_closing_tactic(self):
        """Test tactics after reflexivity are rejected."""
        goal = Goal(Context(), term(self.env, 'eq nat O O'))
        script = Script.of(Reflexivity(), Reflexivity())

        self.assertFalse(replays(self.env, goal, script))

    def test_reflexivity_needs_equal_sides(self):
        """Test reflexivity fails on an equation between distinct terms."""
        goal = Goal(Context(), term(self.env, 'eq nat O (S O)'))

        with self.assertRaisesMessage(ReplayFailed, 'differ'):
            replay(self.env, goal, Script.of(Reflexivity()))


class FreshLocalTests(SimpleTestCase):
    """Test names chosen for introduced locals."""

    def setUp(self):
        self.env = load_prelude()

    def test_anonymous_binder(self):
        """Test an anonymous binder is named H."""
        self.assertEqual(fresh_local(self.env, Context(), '_'), 'H')

    def test_clash_with_a_local(self):
        """Test a taken local name is primed."""
        ctx = Context().push('H', NAT)

        self.assertEqual(fresh_local(self.env, ctx, None), "H'")

    def test_clash_with_globals(self):
        """Test constants and constructors are never shadowed."""
        self.assertEqual(fresh_local(self.env, Context(), 'add'), "add'")
        self.assertEqual(fresh_local(self.env, Context(), 'S'), "S'")
