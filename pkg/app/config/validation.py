"""
Validation of configurations against their obligations.

Validation never raises on a bad configuration: each criterion carries
its own status and the error that made it fail.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from django.conf import settings

from config.configuration import Configuration
from config.obligations import Obligations
from kernel.declarations import uses_assumptions
from kernel.env import Context, GlobalEnv
from kernel.errors import PmlError, TypeCheckError
from kernel.terms import Term
from kernel.typing import check_type

logger = logging.getLogger(__name__)

PASS, FAIL, TRUSTED = 'pass', 'fail', 'trusted'


@dataclass(frozen=True)
class Criterion:
    label: str
    status: str
    error: Optional[str] = None
    path: Tuple[int, ...] = ()

    @property
    def ok(self):
        return self.status != FAIL


@dataclass(frozen=True)
class ValidationReport:
    configuration: str
    criteria: Tuple[Criterion, ...]

    @property
    def ok(self) -> bool:
        return all(criterion.ok for criterion in self.criteria)

    def failed(self) -> List[Criterion]:
        return [c for c in self.criteria if not c.ok]

    def __getitem__(self, label) -> Criterion:
        for criterion in self.criteria:
            if criterion.label == label:
                return criterion
        raise KeyError(label)


def assumptions_allowed() -> bool:
    return bool(getattr(settings, 'PML_ALLOW_ASSUMPTIONS', False))


class Validator:

    def __init__(self, env: GlobalEnv, cfg: Configuration,
                 allow_assumptions: Optional[bool] = None):
        self.env = env
        self.cfg = cfg
        if allow_assumptions is None:
            allow_assumptions = assumptions_allowed()
        self.allow_assumptions = allow_assumptions
        self.criteria: List[Criterion] = []

    def run(self) -> ValidationReport:
        sides = {
            label: Obligations(self.env, self.cfg, label)
            for label in ('a', 'b')}
        arities = {}
        for label, side in sides.items():
            arities[label] = self._constructors(label, side)
        self._arity(arities)
        for label, side in sides.items():
            components = self.cfg.side(label)
            self.check(f'eta_{label}', components.eta, side.eta_type)
            self.check(
                f'elim_eta_{label}', components.elim, side.elim_eta_type)
            self.check(
                f'eta_ok_{label}', components.eta_ok, side.eta_ok_type)
            for j, iota in enumerate(components.iotas):
                self.check(
                    f'iota_{label}.{j}', iota,
                    lambda j=j, side=side: side.iota_type(j))
        report = ValidationReport(self.cfg.name, tuple(self.criteria))
        logger.info(
            'validated configuration %s: %d criteria, %d failed',
            self.cfg.name, len(report.criteria), len(report.failed()))
        return report

    def _constructors(self, label, side):
        arities = []
        for j, constr in enumerate(self.cfg.side(label).constrs):
            criterion = self.check(
                f'dep_constr_{label}.{j}', constr,
                lambda j=j: side.constructor_type(j))
            arities.append(
                side.signature(j).arity if criterion.ok else None)
        return arities

    def _arity(self, arities):
        a, b = arities['a'], arities['b']
        if None in a or None in b:
            self._record('arity', FAIL, 'dependent constructors are ill-typed')
            return
        wrong = [j for j, (x, y) in enumerate(zip(a, b)) if x != y]
        if wrong:
            details = ', '.join(f'{j}: {a[j]} vs {b[j]}' for j in wrong)
            self._record(
                'arity', FAIL, f'constructor arities differ ({details})')
        else:
            self._record('arity', PASS)

    def _record(self, label, status, error=None, path=()):
        criterion = Criterion(label, status, error, tuple(path))
        self.criteria.append(criterion)
        return criterion

    def check(self, label: str, term: Term,
              expected: Callable[[], Term]) -> Criterion:
        try:
            expected_type = expected()
        except PmlError as error:
            return self._record(
                label, FAIL, f'cannot state the obligation: {error}')
        try:
            check_type(self.env, Context(), term, expected_type)
        except TypeCheckError as error:
            return self._record(label, FAIL, str(error), error.path)
        except PmlError as error:
            return self._record(label, FAIL, str(error))
        if label in self.cfg.trusted:
            logger.warning(
                'accepting trusted entry %s of %s without its proof',
                label, self.cfg.name)
            return self._record(label, TRUSTED)
        axioms = uses_assumptions(self.env, term)
        if axioms and not self.allow_assumptions:
            return self._record(
                label, FAIL,
                'depends on assumptions: ' + ', '.join(sorted(axioms)))
        return self._record(label, PASS)


def validate_configuration(
        env: GlobalEnv, cfg: Configuration,
        allow_assumptions: Optional[bool] = None) -> ValidationReport:
    """Check every component of cfg against its obligation."""
    return Validator(env, cfg, allow_assumptions).run()
