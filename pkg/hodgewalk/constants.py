"""
Constant tables used throughout hodgewalk.

Notes
=====
Tolerances are absolute. All operators in this package are stochastic, so
their entries lie in [0, 1] and relative tolerances add nothing.

    * build - residual allowed when rebuilding distributions level by level
    * check - slack allowed in every eigenvalue bound assertion
    * garland - slack allowed between the two sides of a local-global identity
    * self_adjoint - largest detailed balance residual accepted by the
      weighted eigensolver

Example
=======
Look up the slack used by the bound checks::

    >>> from hodgewalk.constants import TOLERANCES
    >>> TOLERANCES['check']
    1e-09
"""
import os

from .exceptions import ParseError

TOLERANCES = {
    'build': 1e-12,
    'check': 1e-9,
    'garland': 1e-10,
    'self_adjoint': 1e-9,
}

KINDS = (
    'up',
    'down',
    'down_up',
    'up_down',
    'nonlazy_up_down',
    'long_up_down',
)
"""Operator kinds known to :class:`hodgewalk.operators.WeightedOperator`."""

DEFAULT_CAP = 5000
"""Largest number of faces per level for which dense operators are built."""

CAP_VARIABLE = 'HODGEWALK_CAP'

EXHAUSTIVE_CHEEGER_STATES = 18
"""Largest state space on which conductance is minimised over all subsets."""

ENUMERATION_LIMIT = 10**6

EXIT_CODES = {
    'pass': 0,
    'fail': 1,
    'parse': 2,
    'structure': 3,
    'cap': 4,
}


def dense_cap(cap=None):
    """
    Resolve the dense operator cap.

    Parameters
    ----------
    cap: int, optional
        Explicit cap. If None, the environment variable ``HODGEWALK_CAP`` is
        used, falling back to :data:`DEFAULT_CAP`.

    Returns
    -------
    int
        The cap to apply

    Raises
    ------
    ParseError
        If the cap is not a positive integer
    """
    source = None
    if cap is None:
        cap = os.environ.get(CAP_VARIABLE, DEFAULT_CAP)
        source = CAP_VARIABLE
    try:
        value = int(cap)
    except (TypeError, ValueError):
        value = 0
    if value < 1:
        raise ParseError(
            "Invalid dense cap {!r}, expected a positive integer".format(cap),
            source)
    return value
