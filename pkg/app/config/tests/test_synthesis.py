"""
Tests for equivalence synthesis and the completeness direction.
"""

import itertools

from django.test import SimpleTestCase

from config.completeness import configuration_from_equivalence
from config.synthesis import (
    Equivalence,
    check_equivalence,
    equivalence_names,
    register_equivalence,
    synthesize_equivalence,
)
from config.tests.test_configuration import list_configuration
from config.validation import TRUSTED, validate_configuration
from corpus.loader import corpus_session
from frontend.printer import print_term
from kernel.env import Assumption, Context, Definition
from kernel.reduction import normalize
from kernel.terms import App, ConstRef, ConstrRef, IndRef, apps

BOOL = IndRef('bool')
NAT = IndRef('nat')


def old_list(values):
    """Create and return an Old.list bool holding values."""
    family = App(IndRef('Old.list'), BOOL)
    result = ConstrRef(0, family)
    for value in reversed(values):
        result = apps(ConstrRef(1, family), ConstrRef(value, BOOL), result)
    return result


def nat(n):
    """Create and return the unary numeral n."""
    result = ConstrRef(0, NAT)
    for _ in range(n):
        result = App(ConstrRef(1, NAT), result)
    return result


def bool_list(values):
    """Create and return a list bool holding values."""
    family = App(IndRef('list'), BOOL)
    result = ConstrRef(0, family)
    for value in reversed(values):
        result = apps(ConstrRef(1, family), ConstrRef(value, BOOL), result)
    return result


def refinement_equivalence(env, swap=False):
    """Create and return the nat/refined equivalence of the corpus."""
    f, g = ConstRef('refine'), ConstRef('unrefine')
    if swap:
        f, g = g, f
    return Equivalence(
        (), IndRef('nat'), ConstRef('refined'), f, g,
        ConstRef('refine_section'), ConstRef('refine_retraction'))


class SynthesisTests(SimpleTestCase):
    """Test the equivalence induced by a configuration."""

    def setUp(self):
        self.env = corpus_session('lists').env
        self.cfg = list_configuration(self.env)

    def test_synthesized_equivalence_checks(self):
        """Test the four components have their stated types."""
        equivalence = synthesize_equivalence(self.env, self.cfg)

        self.assertTrue(check_equivalence(self.env, equivalence))

    def test_round_trip_on_small_lists(self):
        """Test g (f l) computes back to l on every bool list up to 3 long."""
        equivalence = synthesize_equivalence(self.env, self.cfg)
        lists = [
            list(values) for length in range(4)
            for values in itertools.product((0, 1), repeat=length)]
        self.assertEqual(len(lists), 15)

        for values in lists:
            with self.subTest(values=values):
                term = old_list(values)
                there = apps(equivalence.f, BOOL, term)
                back = apps(equivalence.g, BOOL, there)
                self.assertEqual(
                    normalize(self.env, Context(), back), term)

    def test_forward_function_swaps_constructors(self):
        """Test f maps Old.nil to New.nil, the second constructor of B."""
        equivalence = synthesize_equivalence(self.env, self.cfg)

        result = normalize(
            self.env, Context(), apps(equivalence.f, BOOL, old_list([])))

        self.assertEqual(
            result, ConstrRef(1, App(IndRef('New.list'), BOOL)))

    def test_register_declares_components(self):
        """Test registering declares the four deterministic names."""
        equivalence = synthesize_equivalence(self.env, self.cfg)

        env = register_equivalence(self.env, 'lists', equivalence)

        for name in equivalence_names('lists').values():
            with self.subTest(name=name):
                self.assertIsInstance(env.lookup(name), Definition)
        self.assertEqual(
            equivalence_names('lists')['section'], 'lists.section')


class CorpusSynthesisTests(SimpleTestCase):
    """Test equivalences synthesized from the corpus configurations."""

    def synthesized(self, file, name):
        session = corpus_session(file)
        cfg = session.configurations[name]
        return session.env, synthesize_equivalence(session.env, cfg)

    def test_corpus_equivalences_check(self):
        """Test synthesis succeeds and checks for each corpus configuration."""
        for file, name in (
                ('nat_n', 'nat_N'), ('ij', 'I_J'), ('vector', 'list_packed')):
            with self.subTest(configuration=name):
                env, equivalence = self.synthesized(file, name)

                self.assertTrue(check_equivalence(env, equivalence))

    def test_unary_binary_round_trip(self):
        """Test g (f n) computes back to n for every n up to 8."""
        env, equivalence = self.synthesized('nat_n', 'nat_N')

        for n in range(9):
            with self.subTest(n=n):
                back = apps(equivalence.g, apps(equivalence.f, nat(n)))
                self.assertEqual(normalize(env, Context(), back), nat(n))

    def test_unary_to_binary(self):
        """Test f takes 4 to its binary numeral."""
        env, equivalence = self.synthesized('nat_n', 'nat_N')

        result = normalize(env, Context(), apps(equivalence.f, nat(4)))

        self.assertEqual(print_term(result, env=env), 'Npos (xO (xO xH))')

    def test_constructor_factoring_round_trip(self):
        """Test both round trips between I and J on every value."""
        env, equivalence = self.synthesized('ij', 'I_J')
        values_i = [ConstrRef(0, IndRef('I')), ConstrRef(1, IndRef('I'))]
        values_j = [
            App(ConstrRef(0, IndRef('J')), ConstrRef(b, BOOL))
            for b in (0, 1)]

        for i, j in zip(values_i, values_j):
            with self.subTest(value=i):
                there = normalize(env, Context(), apps(equivalence.f, i))
                self.assertEqual(there, j)
                back = apps(equivalence.g, apps(equivalence.f, i))
                self.assertEqual(normalize(env, Context(), back), i)
                forth = apps(equivalence.f, apps(equivalence.g, j))
                self.assertEqual(normalize(env, Context(), forth), j)

    def test_packed_vector_round_trip(self):
        """Test lists survive packing into vectors and back."""
        env, equivalence = self.synthesized('vector', 'list_packed')
        lists = [
            list(values) for length in range(3)
            for values in itertools.product((0, 1), repeat=length)]

        for values in lists:
            with self.subTest(values=values):
                term = bool_list(values)
                there = apps(equivalence.f, BOOL, term)
                back = apps(equivalence.g, BOOL, there)
                self.assertEqual(normalize(env, Context(), back), term)

    def test_packed_length(self):
        """Test f packs a list with its length."""
        env, equivalence = self.synthesized('vector', 'list_packed')

        result = normalize(
            env, Context(), apps(equivalence.f, BOOL, bool_list([0])))

        self.assertEqual(
            print_term(result, env=env),
            'existT nat (fun (n : nat) => vector bool n) (S O) '
            '(vcons bool true O (vnil bool))')


class CompletenessTests(SimpleTestCase):
    """Test configurations derived from equivalences."""

    def setUp(self):
        self.env = corpus_session('refinement').env

    def test_check_equivalence(self):
        """Test the corpus equivalence checks and a swapped one does not."""
        self.assertTrue(check_equivalence(
            self.env, refinement_equivalence(self.env)))
        self.assertFalse(check_equivalence(
            self.env, refinement_equivalence(self.env, swap=True)))

    def test_configuration_from_equivalence(self):
        """Test the derived configuration validates with trusted iotas."""
        env, cfg = configuration_from_equivalence(
            self.env, 'nat_refined2', refinement_equivalence(self.env))

        report = validate_configuration(env, cfg)

        self.assertTrue(report.ok, report.failed())
        self.assertEqual(cfg.ncases, 2)
        for j in range(cfg.ncases):
            with self.subTest(iota=j):
                self.assertEqual(report[f'iota_b.{j}'].status, TRUSTED)
                self.assertIsInstance(
                    env.lookup(f'nat_refined2.iota_b_{j}'), Assumption)
        self.assertEqual(cfg.eta_ok_b, ConstRef('nat_refined2.eta_ok_b'))
