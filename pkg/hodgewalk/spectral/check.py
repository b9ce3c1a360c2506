"""Numerical certificates and the check classes that compute them."""
import logging
import math
from abc import ABC, abstractmethod

from ..constants import TOLERANCES
from ..exceptions import HypothesisNotMet

logger = logging.getLogger(__name__)

STATUSES = ('pass', 'fail', 'skipped')


def _number(value):
    """Convert numpy scalars for reporting, spelling out non-finite values."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    value = float(value)
    if math.isfinite(value):
        return value
    return repr(value)


class CheckResult():
    """
    The outcome of one numerical assertion.

    Parameters
    ----------
    name: str
        Name of the check
    arguments: dict
        Levels or other arguments the check was evaluated at
    value: float
        The measured quantity
    bound: float or list[float]
        The bound it is compared to; ``[lower, upper]`` for two-sided
        checks
    tolerance: float
        Slack allowed in the comparison
    status: str
        ``pass``, ``fail`` or ``skipped``
    direction: str
        ``upper`` (value <= bound), ``lower`` (value >= bound), ``equal``
        or ``between``
    detail: dict, optional
        Additional quantities worth reporting
    """

    def __init__(self,
                 name,
                 arguments,
                 value,
                 bound,
                 tolerance,
                 status,
                 direction='upper',
                 detail=None):
        if status not in STATUSES:
            raise ValueError("Unknown status {}, choose from {}".format(
                status, STATUSES))
        self.name = name
        self.arguments = dict(arguments)
        self.value = value
        self.bound = bound
        self.tolerance = tolerance
        self.status = status
        self.direction = direction
        self.detail = {} if detail is None else dict(detail)

    @classmethod
    def compare(cls,
                name,
                arguments,
                value,
                bound,
                tolerance=None,
                direction='upper',
                detail=None):
        """Evaluate ``value`` against ``bound`` and record the outcome."""
        if tolerance is None:
            tolerance = TOLERANCES['check']
        if direction == 'upper':
            ok = value <= bound + tolerance
        elif direction == 'lower':
            ok = value >= bound - tolerance
        elif direction == 'equal':
            ok = abs(value - bound) <= tolerance
        elif direction == 'between':
            lower, upper = bound
            ok = lower - tolerance <= value <= upper + tolerance
        else:
            raise ValueError("Unknown direction {}".format(direction))
        status = 'pass' if ok else 'fail'
        if not ok:
            logger.warning("Check %s failed at %s: value %s, bound %s", name,
                           arguments, value, bound)
        return cls(name, arguments, value, bound, tolerance, status,
                   direction, detail)

    @classmethod
    def skipped(cls, name, arguments, reason, value=None, bound=None,
                detail=None):
        """Record a check whose hypothesis does not hold."""
        detail = {} if detail is None else dict(detail)
        detail['reason'] = reason
        logger.info("Skipping %s at %s: %s", name, arguments, reason)
        return cls(name, arguments, value, bound, TOLERANCES['check'],
                   'skipped', detail=detail)

    @property
    def passed(self):
        """False only for a failed assertion; skipped checks do not fail."""
        return self.status != 'fail'

    def __repr__(self):
        return "{}({!r}, {}, value={}, bound={}, status={!r})".format(
            self.__class__.__name__, self.name, self.arguments, self.value,
            self.bound, self.status)

    def to_dict(self):
        """Describe the result for a report."""
        bound = self.bound
        if isinstance(bound, (list, tuple)):
            bound = [_number(b) for b in bound]
        else:
            bound = _number(bound)
        return {
            'name': self.name,
            'arguments': {k: _number(v) for k, v in self.arguments.items()},
            'value': _number(self.value),
            'bound': bound,
            'tolerance': _number(self.tolerance),
            'direction': self.direction,
            'status': self.status,
            'pass': self.passed,
            'detail': self.detail,
        }


class Check(ABC):
    """
    Check superclass.

    A check evaluates one inequality or identity on a complex, at every
    combination of arguments returned by :meth:`arguments`.

    Parameters
    ----------
    **kwargs : dict
        Keyword arguments for the computation

    Attributes
    ----------
    name
    """

    name = None
    """
    The name of the check on the command line
    ``Must be set by implementing classes``
    """

    parameters = ()
    """Names of the arguments returned by :meth:`arguments`."""

    level_argument = True
    """Whether the first argument is the level the check applies to."""

    def __init__(self, **kwargs):
        self.kwargs = kwargs

    def __call__(self, X, *args):
        try:
            return self.compute(X, *args, **self.kwargs)
        except HypothesisNotMet as exc:
            return CheckResult.skipped(self.name, self.describe(args),
                                       str(exc))

    def describe(self, args):
        """Name the arguments of a call."""
        names = list(self.parameters)
        names += ["arg{}".format(i) for i in range(len(names), len(args))]
        return dict(zip(names, args))

    @staticmethod
    @abstractmethod
    def compute(X, *args, **kwargs):
        """
        Evaluate the check.

        This function needs to be set by the implementation subclass
        ``compute = staticmethod(my_check)``

        Returns
        -------
        CheckResult
        """

    @abstractmethod
    def arguments(self, X):
        """
        The argument tuples the check applies to on complex ``X``.

        Returns
        -------
        iterable of tuple
        """


class CheckSet():
    """
    A named collection of checks.

    Checks are run in insertion order; names are unique.
    """

    def __init__(self, checks=()):
        self._checks = {}
        for check in checks:
            self.add(check)

    def __iter__(self):
        return iter(self._checks.values())

    def __len__(self):
        return len(self._checks)

    def __contains__(self, name):
        return name in self._checks

    @property
    def names(self):
        """The names of the checks in the set."""
        return tuple(self._checks)

    def add(self, check, name=None):
        """
        Parameters
        ----------
        check : Check
            The check to add to the set
        name : str
            The name to give the check in the set.
            If None the check's own name is used

        Returns
        -------
        name : str
            The name of the added check
        check : Check
            The added check
        """
        name = name or check.name
        if name in self._checks:
            raise ValueError("A check named {} is already in the set".format(
                name))
        self._checks[name] = check
        return name, check

    def remove(self, name):
        """
        Remove the check from the set

        Returns
        -------
        bool
            Whether the check was removed
        """
        if name in self._checks:
            del self._checks[name]
            return True
        return False

    def select(self, names):
        """
        A new set restricted to ``names``.

        Raises
        ------
        IndexError
            If a name is not in the set
        """
        unknown = [name for name in names if name not in self._checks]
        if unknown:
            raise IndexError("Unknown checks {}, choose from {}".format(
                unknown, list(self._checks)))
        return CheckSet(self._checks[name] for name in names)
