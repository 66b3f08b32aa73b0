"""
Tests for repairing definitions and modules.
"""

import time
from itertools import product
from unittest.mock import patch

from django.test import SimpleTestCase

from config.synthesis import synthesize_equivalence
from config.tests.test_configuration import list_configuration
from corpus.loader import corpus_session, load_corpus_file
from frontend.elaborate import elaborate
from frontend.parser import parse_term
from kernel.env import Context
from kernel.reduction import normalize
from kernel.terms import App, ConstRef, ConstrRef, IndRef, apps, global_names
from transform.errors import TerminationGuardTriggered, TransformFailed
from transform.repair import (
    Repairer,
    dependency_order,
    derive_name,
    repair_definition,
    repair_module,
)

BOOL = IndRef('bool')

LIST_MODULE = [
    'Old.rev_app_distr', 'Old.app_assoc', 'Old.app_nil_r', 'Old.rev',
    'Old.append']

NEW_APPEND = """
fun (T : Type0) (l m : New.list T) =>
  Elim(l, fun (_ : New.list T) => New.list T -> New.list T)
    { fun (t : T) (_ : New.list T) (IHl : New.list T -> New.list T)
          (m : New.list T) => New.cons T t (IHl m)
    | fun (m : New.list T) => m } m
"""


def old_list(values):
    """Create and return an Old.list bool holding values."""
    family = App(IndRef('Old.list'), BOOL)
    result = ConstrRef(0, family)
    for value in reversed(values):
        result = apps(ConstrRef(1, family), ConstrRef(value, BOOL), result)
    return result


def binary(k):
    """Create and return k as a closed N numeral."""
    if k == 0:
        return ConstrRef(0, IndRef('N'))
    return App(ConstrRef(1, IndRef('N')), positive(k))


def positive(k):
    if k == 1:
        return ConstrRef(2, IndRef('positive'))
    return App(ConstrRef(1 - k % 2, IndRef('positive')), positive(k // 2))


def mentions(t, prefix):
    return any(
        name == prefix or name.startswith(prefix + '.')
        for name in global_names(t))


class SwapRepairTests(SimpleTestCase):
    """Test repairing the list module across swapped constructors."""

    def setUp(self):
        self.env = corpus_session('lists').env
        self.cfg = list_configuration(self.env)

    def test_derive_name(self):
        """Test repaired names follow the module prefix of B."""
        self.assertEqual(
            derive_name('Old.rev', 'Old.list', 'New.list'), 'New.rev')
        self.assertEqual(derive_name('add', 'nat', 'N'), 'add_N')

    def test_append_swaps_cases(self):
        """Test the repaired append eliminates with the cases swapped."""
        result = repair_definition(
            self.env, self.cfg, 'Old.append', use_cache=False)

        expected = elaborate(result.env, parse_term(NEW_APPEND))
        self.assertEqual(result.new_name, 'New.append')
        self.assertEqual(result.body, expected)

    def test_append_commutes_with_swap(self):
        """Test swap (l1 ++ l2) = swap l1 ++ swap l2 on short lists."""
        equivalence = synthesize_equivalence(self.env, self.cfg)
        result = repair_definition(
            self.env, self.cfg, 'Old.append', use_cache=False)
        env = result.env
        lists = [
            list(values) for length in range(3)
            for values in product((0, 1), repeat=length)]

        def swap(t):
            return apps(equivalence.f, BOOL, t)

        for left, right in product(lists, repeat=2):
            with self.subTest(left=left, right=right):
                before = swap(apps(
                    ConstRef('Old.append'), BOOL, old_list(left),
                    old_list(right)))
                after = apps(
                    ConstRef('New.append'), BOOL, swap(old_list(left)),
                    swap(old_list(right)))
                self.assertEqual(
                    normalize(env, Context(), before),
                    normalize(env, Context(), after))

    def test_module_repairs_end_to_end(self):
        """Test the whole list module moves to New.list."""
        env = repair_module(self.env, self.cfg, LIST_MODULE, use_cache=False)

        for name in ('New.append', 'New.rev', 'New.app_nil_r',
                     'New.app_assoc', 'New.rev_app_distr_nil',
                     'New.rev_app_distr'):
            with self.subTest(name=name):
                definition = env.definition(name)
                self.assertIsNotNone(definition)
                self.assertFalse(mentions(definition.type, 'Old'))
                self.assertFalse(mentions(definition.body, 'Old'))

    def test_unrelated_definition_is_unchanged(self):
        """Test a constant that never mentions A is kept as it is."""
        result = repair_definition(self.env, self.cfg, 'add', use_cache=False)

        self.assertFalse(result.changed)
        self.assertEqual(result.body, self.env.definition('add').body)

    def test_dependency_order(self):
        """Test definitions are sorted after what they use."""
        order = dependency_order(self.env, LIST_MODULE)

        self.assertLess(order.index('Old.append'), order.index('Old.rev'))
        self.assertLess(
            order.index('Old.app_assoc'), order.index('Old.rev_app_distr'))
        self.assertEqual(sorted(order), sorted(LIST_MODULE))

    def test_empty_module(self):
        """Test repairing no definitions returns the environment."""
        env = repair_module(self.env, self.cfg, [], use_cache=False)

        self.assertIs(env, self.env)

    def test_lift_cache_hits(self):
        """Test the shared lift cache is used within one run."""
        repairer = Repairer(self.env, self.cfg, use_cache=True)

        repairer.repair_module(LIST_MODULE)

        self.assertGreater(repairer.stats.hits, 0)
        self.assertEqual(repairer.stats.guard_hits, 0)

    def test_repaired_definitions_are_reused(self):
        """Test a second run reads the stored repaired definition."""
        first = Repairer(self.env, self.cfg, use_cache=True)
        expected = first.repair('Old.append')
        second = Repairer(self.env, self.cfg, use_cache=True)

        with patch('transform.repair.Lifter.lift') as lift:
            result = second.repair('Old.append')

        lift.assert_not_called()
        self.assertGreaterEqual(second.stats.hits, 1)
        self.assertEqual(result.body, expected.body)

    def test_failure_reports_completed_definitions(self):
        """Test a failing module run lists what it repaired first."""
        names = ['Old.append', 'Old.rev']
        original = Repairer.repair

        def failing(repairer, name, new_name=None):
            if name == 'Old.rev':
                raise TransformFailed((0,), 'cannot repair')
            return original(repairer, name, new_name)

        with patch.object(Repairer, 'repair', failing):
            with self.assertRaises(TransformFailed) as caught:
                repair_module(self.env, self.cfg, names, use_cache=False)

        self.assertEqual(caught.exception.completed, ('New.append',))


class BinaryRepairTests(SimpleTestCase):
    """Test repairs from unary to binary numbers."""

    def setUp(self):
        self.session = load_corpus_file('nat_n')
        self.session.use_cache = False
        self.cfg = self.session.configurations['nat_N']

    def test_slow_add(self):
        """Test repaired addition agrees with binary addition."""
        result = repair_definition(
            self.session.env, self.cfg, 'add', use_cache=False)
        env = result.env

        self.assertEqual(result.new_name, 'add_N')
        self.assertFalse(mentions(result.type, 'nat'))
        self.assertFalse(mentions(result.body, 'nat'))
        for n, m in product(range(9), repeat=2):
            with self.subTest(n=n, m=m):
                term = apps(ConstRef('add_N'), binary(n), binary(m))
                self.assertEqual(
                    normalize(env, Context(), term), binary(n + m))

    def test_explicit_iota_proof(self):
        """Test a proof written with explicit iotas moves to N."""
        self.session.run_text('Repair nat N in add_n_Sm using nat_N.')

        definition = self.session.env.definition('add_n_Sm_N')
        self.assertIsNotNone(definition)
        self.assertFalse(mentions(definition.type, 'nat'))
        self.assertIsNotNone(self.session.env.definition('add_N'))

    def test_annotated_proof(self):
        """Test annotations mark the implicit iotas of a proof."""
        self.session.run_text('Repair nat N in add_n_Sm_cast using nat_N.')

        definition = self.session.env.definition('add_n_Sm_cast_N')
        self.assertIsNotNone(definition)
        self.assertFalse(mentions(definition.body, 'nat'))

    def test_missing_annotations(self):
        """Test the proof fails to repair without its annotations."""
        with self.assertRaisesMessage(TransformFailed, 'Iota'):
            repair_definition(
                self.session.env, self.cfg, 'add_n_Sm_cast',
                use_cache=False)


class RefinementRepairTests(SimpleTestCase):
    """Test the termination guard when B unfolds to a term over A."""

    def setUp(self):
        self.session = load_corpus_file('refinement')
        self.cfg = self.session.configurations['nat_refined']

    def test_value_already_over_b(self):
        """Test a term whose type is already B is kept unchanged."""
        result = repair_definition(
            self.session.env, self.cfg, 'refined_zero', use_cache=False)

        self.assertEqual(
            result.body, self.session.env.definition('refined_zero').body)

    def test_guard_fires_instead_of_looping(self):
        """Test repairing a function into B stops with the guard in time."""
        start = time.monotonic()
        with self.assertRaises(TerminationGuardTriggered) as caught:
            repair_definition(
                self.session.env, self.cfg, 'refine', use_cache=False)
        elapsed = time.monotonic() - start

        self.assertGreater(caught.exception.hits, 0)
        self.assertLess(elapsed, 5)


class RecordRepairTests(SimpleTestCase):
    """Test moving record functions and proofs to anonymous tuples."""

    def setUp(self):
        self.session = load_corpus_file('records')
        self.session.use_cache = False

    def test_proof_moves_with_its_functions(self):
        """Test the proof and the functions it uses leave the record."""
        self.session.run_text(
            'Repair Record.Handshake Tuple.Handshake in Record.next_message '
            'using record_tuple.')

        repaired = {r.new_name for r in self.session.results}
        self.assertEqual(repaired, {
            'Tuple.handshakeType', 'Tuple.messageNumber', 'Tuple.next',
            'Tuple.next_message'})
        for name in repaired:
            with self.subTest(name=name):
                definition = self.session.env.definition(name)
                self.assertFalse(mentions(definition.type, 'Record'))
                self.assertFalse(mentions(definition.body, 'Record'))

    def test_repaired_function_computes_on_tuples(self):
        """Test the repaired function bumps the second component."""
        self.session.run_text(
            'Repair Record.Handshake Tuple.Handshake in Record.next '
            'using record_tuple.')
        env = self.session.env

        term = elaborate(env, parse_term(
            'Tuple.next (pair nat nat (S O) O)'))

        self.assertEqual(
            normalize(env, Context(), term),
            elaborate(env, parse_term('pair nat nat (S O) (S O)')))


class UnpackRepairTests(SimpleTestCase):
    """Test moving lists of a given length to vectors of that length."""

    def setUp(self):
        self.session = load_corpus_file('unpack')
        self.cfg = self.session.configurations['sized_vector']

    def repaired(self, name):
        result = repair_definition(
            self.session.env, self.cfg, name, use_cache=False)
        self.assertFalse(mentions(result.type, 'sized'))
        self.assertFalse(mentions(result.body, 'sized'))
        return result

    def test_projection(self):
        """Test the list inside a vector is read back."""
        result = self.repaired('sized.to_list')
        env = result.env

        term = elaborate(env, parse_term(
            'sized.to_list_vector bool (S O) (vcons bool true O (vnil bool))'))

        self.assertEqual(result.new_name, 'sized.to_list_vector')
        self.assertEqual(
            normalize(env, Context(), term),
            elaborate(env, parse_term('cons bool true (nil bool)')))

    def test_constructors_build_vectors(self):
        """Test the empty and extended lists become vectors."""
        env = self.repaired('sized.nil').env
        env = repair_definition(
            env, self.cfg, 'sized.cons', use_cache=False).env

        for text, expected in (
                ('sized.nil_vector bool', 'vnil bool'),
                ('sized.cons_vector bool O true (vnil bool)',
                 'vcons bool true O (vnil bool)')):
            with self.subTest(term=text):
                term = elaborate(env, parse_term(text))
                self.assertEqual(
                    normalize(env, Context(), term),
                    elaborate(env, parse_term(expected)))
