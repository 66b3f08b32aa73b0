"""
Tests for building and validating configurations.
"""

from dataclasses import replace

from django.test import SimpleTestCase
from django.test.utils import override_settings

from config.configuration import (
    BACKWARD,
    FORWARD,
    build_configuration,
    native_inductive,
    swap_label,
)
from config.errors import ConfigurationShapeError
from config.validation import FAIL, PASS, TRUSTED, validate_configuration
from corpus.loader import corpus_session
from kernel.terms import App, ConstRef, IndRef, Sort, Var
from search.permutations import config_from_permutation, find_permutations

NAT = IndRef('nat')


def list_configuration(env):
    """Create and return the Old.list to New.list configuration."""
    mapping = find_permutations(env, 'Old.list', 'New.list')[0]
    return config_from_permutation(env, 'Old.list', 'New.list', mapping)


class ConfigurationTests(SimpleTestCase):
    """Test assembling configurations."""

    def setUp(self):
        self.env = corpus_session('lists').env

    def test_native_components_are_filled(self):
        """Test missing components default to the native interface."""
        cfg = build_configuration(self.env, 'nat_nat', (), NAT, NAT)

        self.assertEqual(cfg.ncases, 2)
        self.assertEqual(len(cfg.iota_a), 2)
        self.assertEqual(cfg.direction, FORWARD)

    def test_iota_count_must_match_constructors(self):
        """Test a configuration with too few iotas is rejected."""
        with self.assertRaises(ConfigurationShapeError):
            build_configuration(
                self.env, 'bad', (), NAT, NAT, iota_b=[ConstRef('add')])

    def test_indexed_family_needs_explicit_components(self):
        """Test an indexed family has no native configuration."""
        env = corpus_session('vector').env
        family = App(IndRef('vector'), NAT)

        with self.assertRaises(ConfigurationShapeError):
            native_inductive(env, family)

    def test_non_inductive_needs_explicit_components(self):
        """Test a sort is not a native inductive."""
        with self.assertRaises(ConfigurationShapeError):
            build_configuration(self.env, 'bad', (), Sort(0), NAT)

    def test_reversed_swaps_sides(self):
        """Test reversing twice gives back the configuration."""
        cfg = corpus_session('nat_n').configurations['nat_N_trusted']

        reversed_cfg = cfg.reversed()

        self.assertEqual(reversed_cfg.type_a, cfg.type_b)
        self.assertEqual(reversed_cfg.constr_b, cfg.constr_a)
        self.assertEqual(reversed_cfg.trusted, frozenset({'iota_a.1'}))
        self.assertEqual(reversed_cfg.direction, BACKWARD)
        self.assertEqual(reversed_cfg.reversed(), cfg)

    def test_swap_label(self):
        """Test criterion labels switch sides."""
        self.assertEqual(swap_label('iota_b.1'), 'iota_a.1')
        self.assertEqual(swap_label('eta_ok_a'), 'eta_ok_b')
        self.assertEqual(swap_label('arity'), 'arity')

    def test_fingerprint_depends_on_components(self):
        """Test configurations with different components differ in key."""
        cfg = list_configuration(self.env)
        other = replace(cfg, iota_b=tuple(reversed(cfg.iota_b)))

        self.assertEqual(cfg.fingerprint, list_configuration(
            self.env).fingerprint)
        self.assertNotEqual(cfg.fingerprint, other.fingerprint)


class ValidationTests(SimpleTestCase):
    """Test checking configurations against their obligations."""

    def test_permutation_configuration_is_valid(self):
        """Test the swapped list configuration passes every criterion."""
        env = corpus_session('lists').env

        report = validate_configuration(env, list_configuration(env))

        self.assertTrue(report.ok, report.failed())
        self.assertEqual(report['arity'].status, PASS)

    def test_corpus_configurations_are_valid(self):
        """Test every configuration shipped with the corpus validates."""
        for name in ('nat_n', 'ij', 'vector', 'refinement', 'records',
                     'unpack'):
            session = corpus_session(name)
            for cfg in session.configurations.values():
                with self.subTest(configuration=cfg.name):
                    report = validate_configuration(session.env, cfg)
                    self.assertTrue(report.ok, report.failed())

    def test_propositional_iota_is_checked(self):
        """Test the binary iota over N is proved rather than assumed."""
        session = corpus_session('nat_n')

        report = validate_configuration(
            session.env, session.configurations['nat_N'])

        self.assertEqual(report['iota_b.1'].status, PASS)

    def test_trusted_entry(self):
        """Test a trusted entry is reported as such."""
        session = corpus_session('nat_n')

        report = validate_configuration(
            session.env, session.configurations['nat_N_trusted'])

        self.assertEqual(report['iota_b.1'].status, TRUSTED)
        self.assertTrue(report.ok)

    def test_corrupted_iota_fails(self):
        """Test swapping in the wrong iota fails that criterion only."""
        session = corpus_session('nat_n')
        cfg = session.configurations['nat_N']
        corrupted = replace(cfg, iota_b=(cfg.iota_b[0], cfg.iota_b[0]))

        report = validate_configuration(session.env, corrupted)

        self.assertFalse(report.ok)
        self.assertEqual(report['iota_b.1'].status, FAIL)
        self.assertEqual(
            [c.label for c in report.failed()], ['iota_b.1'])

    def test_wrong_constructor_fails_arity(self):
        """Test an ill-typed dependent constructor fails arity too."""
        env = corpus_session('lists').env
        cfg = list_configuration(env)
        broken = replace(cfg, constr_b=(Var(0), cfg.constr_b[1]))

        report = validate_configuration(env, broken)

        self.assertEqual(report['dep_constr_b.0'].status, FAIL)
        self.assertEqual(report['arity'].status, FAIL)

    @override_settings(PML_ALLOW_ASSUMPTIONS=0)
    def test_assumptions_are_rejected_unless_trusted(self):
        """Test an entry proved by an axiom fails without permission."""
        session = corpus_session('refinement')
        cfg = session.configurations['nat_refined']
        untrusted = replace(cfg, trusted=frozenset())

        report = validate_configuration(session.env, untrusted)

        self.assertEqual(report['iota_b.0'].status, FAIL)
        self.assertIn('assumptions', report['iota_b.0'].error)
        self.assertTrue(validate_configuration(
            session.env, untrusted, allow_assumptions=True).ok)
