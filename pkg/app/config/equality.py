"""
Terms over the library equality `eq A x : A -> Type0`.

All arguments are valid at the depth where the result is used.
"""

from kernel.substitution import arrow, lift
from kernel.terms import App, ConstrRef, Elim, IndRef, Lambda, Term, Var, apps

EQ = IndRef('eq')


def eq_type(type: Term, x: Term, y: Term) -> Term:
    return apps(EQ, type, x, y)


def eq_refl(type: Term, x: Term) -> Term:
    return ConstrRef(0, apps(EQ, type, x))


def _motive(type, left, body):
    """fun (y : type) (_ : eq type left y) => body, body under both."""
    return Lambda('y', type, Lambda(
        '_', eq_type(lift(type, 1), lift(left, 1), Var(0, 'y')), body))


def rew_bwd(type, eta, motive, c, proof, value):
    """Move value : motive c to motive (eta c).

    proof : eq type (eta c) c.
    """
    eta_c = App(eta, c)
    body = arrow(
        App(lift(motive, 2), Var(1, 'y')),
        App(lift(motive, 2), lift(eta_c, 2)))
    case = Lambda('w', App(motive, eta_c), Var(0, 'w'))
    return App(Elim(proof, _motive(type, eta_c, body), (case,)), value)


def rew_fwd(type, eta, motive, a, proof, value):
    """Move value : motive (eta a) to motive a.

    proof : eq type (eta a) a.
    """
    eta_a = App(eta, a)
    body = App(lift(motive, 2), Var(1, 'y'))
    return Elim(proof, _motive(type, eta_a, body), (value,))


def rewrite(type, left, motive_body, proof, value):
    """Elim(proof, fun y _ => motive_body) { value }.

    proof : eq type left right and motive_body lives under the two
    motive binders; the result has type motive_body[y := right].
    """
    return Elim(proof, _motive(type, left, motive_body), (value,))
