"""Exceptions raised by hodgewalk.

Every exception derives from :class:`HodgewalkError` and from the built-in
exception a caller would naturally expect, so ``except ValueError`` keeps
working for code that does not know about this package.
"""


class HodgewalkError(Exception):
    """Base class of all hodgewalk errors."""


class ParseError(HodgewalkError, ValueError):
    """An input file could not be parsed.

    Parameters
    ----------
    message: str
        Description of the problem
    filename: str, optional
        The file being parsed
    lineno: int, optional
        The 1-based line number of the offending line
    """

    def __init__(self, message, filename=None, lineno=None):
        self.filename = filename
        self.lineno = lineno
        if lineno is not None:
            message = "{}:{}: {}".format(filename or '<input>', lineno,
                                         message)
        elif filename is not None:
            message = "{}: {}".format(filename, message)
        super().__init__(message)


class EmptyInput(HodgewalkError, ValueError):
    """No facets, vertices or elements were supplied."""


class NonPure(HodgewalkError, ValueError):
    """Facets of different dimensions were supplied."""


class DuplicateFacet(HodgewalkError, ValueError):
    """The same facet was supplied twice."""


class NotPure(HodgewalkError, ValueError):
    """An enumerated complex has a maximal face of too small a size.

    Attributes
    ----------
    witness: tuple[int]
        A maximal face whose size is smaller than the requested size
    """

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class FaceNotPresent(HodgewalkError, KeyError):
    """A face is not a member of the complex."""

    def __str__(self):
        return str(self.args[0]) if self.args else ''


class LevelOutOfRange(HodgewalkError, IndexError):
    """A level index lies outside the range an operation accepts."""


class DimensionTooHigh(HodgewalkError, ValueError):
    """A face is too large for its link to have edges."""


class BadRange(HodgewalkError, ValueError):
    """A level range ``a, b`` does not satisfy ``a < b``."""


class NotSelfAdjoint(HodgewalkError, ValueError):
    """An operator is not self-adjoint with respect to its distribution."""


class NonPositivePi(HodgewalkError, ValueError):
    """A distribution or weight vector has a non-positive entry."""


class GapZero(HodgewalkError, ValueError):
    """A mixing budget was requested for a chain without spectral gap."""


class HypothesisNotMet(HodgewalkError, ValueError):
    """The hypothesis of a bound does not hold for the given input."""


class DenominatorNonpositive(HodgewalkError, ValueError):
    """A bound formula has a non-positive denominator."""


class NotSimpleB(HodgewalkError, ValueError):
    """The bipartite block graph of a top link has parallel edges."""


class StructureMismatch(HodgewalkError, AssertionError):
    """Two constructions of the same graph disagree."""


class CapExceeded(HodgewalkError, MemoryError):
    """A level has more faces than the dense operator cap allows."""


class NoInitialState(HodgewalkError, ValueError):
    """No valid starting face could be found for a chain."""


class TooLarge(HodgewalkError, ValueError):
    """A state space is too large to enumerate exhaustively."""


class NoBudget(HodgewalkError, ValueError):
    """No mixing budget can be derived and none was given."""
