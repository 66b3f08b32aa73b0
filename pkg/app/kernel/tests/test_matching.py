"""
Tests for first-order matching, eta-reduction and telescopes.
"""

from django.test import SimpleTestCase

from kernel.matching import eta_reduce, match_pattern
from kernel.telescope import Telescope
from kernel.terms import (
    App,
    ConstRef,
    Lambda,
    Pi,
    Sort,
    Var,
    apps,
    pis,
)
from kernel.tests.test_reduction import NAT, numeral, succ

F = ConstRef('f')


class MatchingTests(SimpleTestCase):
    """Test match_pattern."""

    def test_solutions_outermost_first(self):
        """Test metavariables are solved in binder order."""
        pattern = apps(F, Var(1), Var(0))

        solution = match_pattern(pattern, apps(F, numeral(1), numeral(2)), 2)

        self.assertEqual(solution, [numeral(1), numeral(2)])

    def test_unmentioned_metavariable_is_none(self):
        """Test a metavariable the pattern never uses stays unsolved."""
        solution = match_pattern(App(F, Var(0)), App(F, numeral(0)), 2)

        self.assertEqual(solution, [None, numeral(0)])

    def test_non_linear_pattern(self):
        """Test repeated metavariables must agree."""
        pattern = apps(F, Var(0), Var(0))

        self.assertEqual(
            match_pattern(pattern, apps(F, numeral(1), numeral(1)), 1),
            [numeral(1)])
        self.assertIsNone(
            match_pattern(pattern, apps(F, numeral(1), numeral(2)), 1))

    def test_different_heads_do_not_match(self):
        """Test constants are compared by name."""
        self.assertIsNone(
            match_pattern(App(F, Var(0)), App(ConstRef('g'), numeral(0)), 1))

    def test_match_under_binder(self):
        """Test a metavariable under a lambda is solved by a closed term."""
        pattern = Lambda('x', NAT, App(Var(1), Var(0)))
        term = Lambda('x', NAT, App(ConstRef('g'), Var(0)))

        self.assertEqual(match_pattern(pattern, term, 1), [ConstRef('g')])

    def test_solution_cannot_capture_bound_variable(self):
        """Test a metavariable is not solved by a locally bound variable."""
        fn = Pi('_', NAT, NAT)
        pattern = Lambda('x', fn, App(Var(1), Var(0)))
        term = Lambda('x', fn, App(Var(0), Var(0)))

        self.assertIsNone(match_pattern(pattern, term, 1))

    def test_solution_of_open_term(self):
        """Test variables outside the pattern are kept."""
        solution = match_pattern(succ(Var(0)), succ(Var(3)), 1)

        self.assertEqual(solution, [Var(3)])


class EtaReduceTests(SimpleTestCase):
    """Test eta_reduce."""

    def test_single_binder(self):
        """Test fun x => f x reduces to f."""
        self.assertEqual(eta_reduce(Lambda('x', NAT, App(F, Var(0)))), F)

    def test_several_binders(self):
        """Test fun x y => f x y reduces to f."""
        term = Lambda('x', NAT, Lambda('y', NAT, apps(F, Var(1), Var(0))))

        self.assertEqual(eta_reduce(term), F)

    def test_swapped_arguments_are_kept(self):
        """Test fun x y => f y x is not an eta expansion."""
        term = Lambda('x', NAT, Lambda('y', NAT, apps(F, Var(0), Var(1))))

        self.assertEqual(eta_reduce(term), term)

    def test_bound_variable_in_head_is_kept(self):
        """Test fun x => x x is left alone."""
        term = Lambda('x', Pi('_', NAT, NAT), App(Var(0), Var(0)))

        self.assertEqual(eta_reduce(term), term)

    def test_non_lambda_is_unchanged(self):
        """Test a term without outer lambdas is returned as is."""
        self.assertEqual(eta_reduce(App(F, numeral(1))), App(F, numeral(1)))


class TelescopeTests(SimpleTestCase):
    """Test building terms by binder level."""

    def test_var_follows_depth(self):
        """Test a level denotes different indices at different depths."""
        tel = Telescope()
        a = tel.bind('A', Sort(0))
        self.assertEqual(tel.var(a), Var(0))
        tel.bind('x', tel.var(a))

        self.assertEqual(tel.var(a), Var(1))

    def test_pis_closes_every_binder(self):
        """Test pis abstracts the whole telescope and empties it."""
        tel = Telescope()
        a = tel.bind('A', Sort(0))
        tel.bind('x', tel.var(a))

        result = tel.pis(tel.var(a))

        self.assertEqual(
            result, pis([('A', Sort(0)), ('x', Var(0))], Var(1)))
        self.assertEqual(len(tel), 0)

    def test_lams_from_level(self):
        """Test closing only the inner binders keeps the outer ones."""
        tel = Telescope([('n', NAT)])
        x = tel.bind('x', NAT)

        result = tel.lams(succ(tel.var(x)), level=1)

        self.assertEqual(result, Lambda('x', NAT, succ(Var(0))))
        self.assertEqual(len(tel), 1)

    def test_shift_moves_terms_inward(self):
        """Test shift lifts a term built at a smaller depth."""
        tel = Telescope([('n', NAT)])
        early = tel.var(0)
        tel.bind('m', NAT)

        self.assertEqual(tel.shift(early, 1), tel.var(0))
