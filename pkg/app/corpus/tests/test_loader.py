"""
Tests for loading the shipped corpus.
"""

from django.test import SimpleTestCase

from corpus.loader import (
    corpus_files,
    corpus_path,
    corpus_session,
    load_corpus_file,
    load_prelude,
)
from frontend.elaborate import elaborate
from frontend.parser import parse_term
from kernel.declarations import declare_inductive
from kernel.env import (
    Assumption,
    Context,
    Definition,
    GlobalEnv,
    InductiveDecl,
)
from kernel.reduction import normalize
from kernel.terms import ConstrRef, IndRef, Sort
from kernel.typing import check_type


class CorpusTests(SimpleTestCase):
    """Test every corpus file loads and type checks."""

    def test_every_file_loads(self):
        """Test each shipped file elaborates without errors."""
        names = [path.stem for path in corpus_files()]
        self.assertIn('prelude', names)
        self.assertIn('lists', names)

        for name in names:
            with self.subTest(file=name):
                session = load_corpus_file(name)
                self.assertIn('eq', session.env)

    def test_definitions_check_against_their_types(self):
        """Test stored definitions re-check in the final environment."""
        env = corpus_session('lists').env

        for entry in env:
            if isinstance(entry, Definition):
                with self.subTest(name=entry.name):
                    check_type(env, Context(), entry.body, entry.type)

    def test_require_loads_prelude_once(self):
        """Test a file requiring the prelude twice declares it once."""
        session = load_corpus_file('lists')
        before = len(list(session.env))

        session.load_file(corpus_path('prelude'))

        self.assertEqual(len(list(session.env)), before)

    def test_prelude_contents(self):
        """Test the prelude declares the shared vocabulary."""
        env = load_prelude()

        for name in ('eq', 'and', 'or', 'unit', 'bool', 'nat', 'list',
                     'sigT', 'positive', 'N', 'Old.list', 'New.list'):
            with self.subTest(name=name):
                self.assertIsInstance(env.lookup(name), InductiveDecl)
        for name in ('eq_sym', 'eq_trans', 'f_equal', 'add', 'pi_l',
                     'pi_r', 'Pos.succ', 'N.succ'):
            with self.subTest(name=name):
                self.assertIsInstance(env.lookup(name), Definition)

    def test_prelude_over_an_environment(self):
        """Test the prelude extends the environment it is given."""
        base = declare_inductive(GlobalEnv.empty(), InductiveDecl(
            'color', (), Sort(0), (('red', IndRef('color')),)))

        env = load_prelude(base)

        self.assertIn('color', env)
        self.assertEqual(env.names()[1:], load_prelude().names())

    def test_projection_computes(self):
        """Test pi_l of a pair reduces to its first component."""
        env = load_prelude()
        pair = elaborate(env, parse_term(
            'pi_l nat (fun (_ : nat) => unit) (existT nat '
            '(fun (_ : nat) => unit) O tt)'))

        self.assertEqual(
            normalize(env, Context(), pair), ConstrRef(0, IndRef('nat')))

    def test_configurations_are_registered(self):
        """Test Configure commands populate the session."""
        expected = {
            'nat_n': {'nat_N', 'nat_N_trusted'},
            'ij': {'I_J'},
            'vector': {'list_packed'},
            'refinement': {'nat_refined'},
            'records': {'record_tuple'},
            'unpack': {'list_packed', 'sized_vector'},
        }

        for name, configurations in expected.items():
            with self.subTest(file=name):
                session = corpus_session(name)
                self.assertEqual(set(session.configurations), configurations)

    def test_annotations_are_recorded(self):
        """Test Annotate commands key annotations by path."""
        session = corpus_session('nat_n')

        self.assertEqual(session.annotations['add_n_Sm_cast'], {
            (1, 1, 3, 1, 1): ('Iota', 1),
            (1, 1, 3, 1, 1, 1): ('Iota', 1),
        })

    def test_equivalence_configuration_declares_components(self):
        """Test an equivalence-derived configuration declares B's side."""
        env = corpus_session('refinement').env

        self.assertIsInstance(
            env.lookup('nat_refined.dep_elim_b'), Definition)
        self.assertIsInstance(
            env.lookup('nat_refined.dep_constr_b_1'), Definition)
        self.assertIsInstance(
            env.lookup('nat_refined.iota_b_1'), Assumption)

    def test_corpus_path_adds_extension(self):
        """Test corpus files can be named without their extension."""
        self.assertEqual(corpus_path('ij').name, 'ij.pml')
        self.assertEqual(corpus_path('ij.pml').name, 'ij.pml')
