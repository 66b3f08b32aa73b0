"""
Tests for the constructor permutation search.
"""

from django.test import SimpleTestCase

from config.validation import validate_configuration
from corpus.loader import corpus_session
from search.errors import ArityMismatch, SelectionError
from search.levenshtein import levenshtein, short_name
from search.permutations import (
    ConstructorMapping,
    config_from_permutation,
    find_permutations,
    select_mapping,
)


class PermutationSearchTests(SimpleTestCase):
    """Test finding and ranking constructor mappings."""

    def test_list_swap(self):
        """Test the only mapping between the list versions swaps them."""
        env = corpus_session('lists').env

        mappings = find_permutations(env, 'Old.list', 'New.list')

        self.assertEqual(len(mappings), 1)
        self.assertEqual(mappings[0].permutation, (1, 0))
        self.assertEqual(mappings[0].names, (
            ('Old.nil', 'New.nil'), ('Old.cons', 'New.cons')))
        self.assertEqual(mappings[0].score, (2, 0))

    def test_enumeration_ranks_matching_names_first(self):
        """Test every bijection of an enumeration is found, best first."""
        env = corpus_session('enums').env

        mappings = find_permutations(env, 'Old.color', 'New.color')

        self.assertEqual(len(mappings), 6)
        self.assertEqual(mappings[0].permutation, (1, 2, 0))
        self.assertEqual(mappings[0].score, (3, 0))
        scores = [(-m.score[0], m.score[1]) for m in mappings]
        self.assertEqual(scores, sorted(scores))

    def test_constructor_count_mismatch(self):
        """Test types with different constructor counts are rejected."""
        env = corpus_session('enums').env

        with self.assertRaises(ArityMismatch):
            find_permutations(env, 'bool', 'Old.color')

    def test_incompatible_constructor_types(self):
        """Test nat and bool have no type-correct mapping."""
        env = corpus_session('enums').env

        self.assertEqual(find_permutations(env, 'nat', 'bool'), [])

    def test_select_mapping_out_of_range(self):
        """Test selecting a missing index fails with a clear message."""
        env = corpus_session('lists').env
        mappings = find_permutations(env, 'Old.list', 'New.list')

        with self.assertRaisesMessage(
                SelectionError, 'mapping index out of range'):
            select_mapping(mappings, 99)
        self.assertEqual(select_mapping(mappings, 0), mappings[0])

    def test_inverse(self):
        """Test inverting a mapping inverts the permutation and names."""
        mapping = ConstructorMapping(
            (1, 2, 0), (('r', 'R'), ('g', 'G'), ('b', 'B')))

        inverse = mapping.inverse()

        self.assertEqual(inverse.permutation, (2, 0, 1))
        self.assertEqual(inverse.names, (('B', 'b'), ('R', 'r'), ('G', 'g')))
        self.assertEqual(inverse.inverse().permutation, mapping.permutation)
        self.assertFalse(mapping.is_identity)

    def test_mapping_configurations_validate(self):
        """Test each ranked enumeration mapping yields a valid config."""
        env = corpus_session('enums').env

        for mapping in find_permutations(env, 'Old.color', 'New.color'):
            with self.subTest(permutation=mapping.permutation):
                cfg = config_from_permutation(
                    env, 'Old.color', 'New.color', mapping)
                report = validate_configuration(env, cfg)
                self.assertTrue(report.ok, report.failed())


class LevenshteinTests(SimpleTestCase):
    """Test the name distance used for ranking."""

    def test_distance(self):
        """Test classic edit distances."""
        self.assertEqual(levenshtein('kitten', 'sitting'), 3)
        self.assertEqual(levenshtein('', 'abc'), 3)
        self.assertEqual(levenshtein('nil', 'nil'), 0)

    def test_short_name(self):
        """Test module prefixes are dropped."""
        self.assertEqual(short_name('Old.nil'), 'nil')
        self.assertEqual(short_name('nil'), 'nil')
