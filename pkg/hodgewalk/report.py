"""Spectral reports and the JSON documents written by the command line."""
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from os import cpu_count

import numpy as np

from ._version import __version__
from .complex import WeightedComplex
from .exceptions import GapZero, LevelOutOfRange
from .spectral import (default_checks, gamma_profile, main_bound,
                       mixing_time_budget, second_eigenvalue,
                       updownrel_certificate, weighted_spectrum)
from .util import digest

logger = logging.getLogger(__name__)


def sanitize(value):
    """
    Make a value JSON serialisable.

    Tuples become lists, numpy scalars and arrays become Python numbers
    and lists, and non-finite floats become ``"inf"``, ``"-inf"`` or
    ``"nan"``.
    """
    if isinstance(value, dict):
        return {str(key): sanitize(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [sanitize(item) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else repr(value)
    return value


def _float_text(value):
    text = '%.17g' % value
    return text if any(c in text for c in '.ein') else text + '.0'


class ReportEncoder(json.JSONEncoder):
    """JSON encoder writing every float with 17 significant digits."""

    def iterencode(self, o, _one_shot=False):
        if self.ensure_ascii:
            encode = json.encoder.encode_basestring_ascii
        else:
            encode = json.encoder.encode_basestring
        indent = self.indent
        if indent is not None and not isinstance(indent, str):
            indent = ' ' * indent
        markers = {} if self.check_circular else None
        iterencode = json.encoder._make_iterencode(
            markers, self.default, encode, indent, _float_text,
            self.key_separator, self.item_separator, self.sort_keys,
            self.skipkeys, _one_shot)
        return iterencode(o, 0)


def level_summary(X: WeightedComplex, k, eps=0.05):
    """
    Spectrum, bounds and mixing budget of the down-up walk on level ``k``.

    The budget uses ``sigma2 = max(lambda_2, 0)``, the down-up walks being
    positive semidefinite, and the smallest probability of level ``k``.
    """
    eigenvalues = weighted_spectrum(X['down_up', k])
    lambda2 = second_eigenvalue(eigenvalues)
    summary = {
        'k': k,
        'eigenvalues': eigenvalues.tolist(),
        'lambda1': float(eigenvalues[0]),
        'lambda2': lambda2,
        'main_bound': main_bound(gamma_profile(X).sequence, k),
        'pi_min': float(X.pi(k).min()),
    }
    if k <= X.dimension - 1:
        summary['updownrel_certificate'] = updownrel_certificate(X, k)
    try:
        summary['mixing_budget'] = mixing_time_budget(
            max(lambda2, 0.0), summary['pi_min'], eps)
    except GapZero:
        logger.warning("The down-up walk on level %s has no spectral gap", k)
        summary['mixing_budget'] = None
    return summary


class SpectralReport():
    """
    Everything measured and checked on one complex.

    Parameters
    ----------
    dimension: int
        Dimension of the complex
    profile: hodgewalk.spectral.GammaProfile
        Link spectra per level
    levels: list[dict]
        Per level summaries from :func:`level_summary`
    results: list[hodgewalk.spectral.CheckResult]
        Outcomes of the checks
    eps: float
        Target distance of the mixing budgets
    """

    def __init__(self, dimension, profile, levels, results, eps):
        self.dimension = dimension
        self.profile = profile
        self.levels = levels
        self.results = results
        self.eps = eps

    @property
    def passed(self):
        """Whether no check failed."""
        return all(result.passed for result in self.results)

    def failures(self):
        """The failed check results."""
        return [result for result in self.results if not result.passed]

    def summary(self):
        """Count the check results per status."""
        counts = {'pass': 0, 'fail': 0, 'skipped': 0}
        for result in self.results:
            counts[result.status] += 1
        counts['passed'] = self.passed
        return counts

    def to_dict(self):
        """Describe the report for serialisation."""
        return {
            'dimension': self.dimension,
            'eps': self.eps,
            'gamma_profile': self.profile.to_dict(),
            'levels': self.levels,
            'checks': [result.to_dict() for result in self.results],
            'summary': self.summary(),
        }


def _tasks(X, checks, levels):
    tasks = []
    for check in checks:
        if levels is not None and not check.level_argument:
            continue
        for args in check.arguments(X):
            if levels is not None and args[0] not in levels:
                continue
            tasks.append((check, args))
    return tasks


def _run(X, task):
    check, args = task
    logger.debug("Running %s at %s", check.name, args)
    return check(X, *args)


def run_checks(X: WeightedComplex, checks, levels=None, n_jobs=1):
    """
    Run every check at every argument it applies to.

    Parameters
    ----------
    X: WeightedComplex
        The complex
    checks: iterable of hodgewalk.spectral.Check
        The checks to run
    levels: iterable of int, optional
        Only run checks whose level is one of these; checks that are not
        tied to a level are left out when given
    n_jobs: int
        The maximum number of processes to use. 1 runs serially; values
        below 1 use the value returned by :func:`os.cpu_count`.

    Returns
    -------
    list[hodgewalk.spectral.CheckResult]
        In the order of ``checks`` and their arguments
    """
    if levels is not None:
        levels = set(levels)
    tasks = _tasks(X, checks, levels)
    logger.info("Running %s checks", len(tasks))
    if n_jobs == 1:
        return [_run(X, task) for task in tasks]
    if n_jobs < 1:
        n_jobs = cpu_count()
    # The link spectra are computed once, before the complex is copied
    gamma_profile(X, n_jobs)
    logger.info("Running checks using at most %s processes", n_jobs)
    with ProcessPoolExecutor(max_workers=n_jobs) as executor:
        chunksize = max(1, len(tasks) // (4 * n_jobs))
        return list(
            executor.map(partial(_run, X), tasks, chunksize=chunksize))


def verify(X: WeightedComplex, checks=None, levels=None, n_jobs=1, eps=0.05):
    """
    Measure the spectra of a complex and run checks on it.

    Parameters
    ----------
    X: WeightedComplex
        The complex
    checks: hodgewalk.spectral.CheckSet, optional
        Defaults to :func:`hodgewalk.spectral.default_checks`
    levels: iterable of int, optional
        Restrict the report to these levels
    n_jobs: int
        Number of processes, see :func:`run_checks`
    eps: float
        Target distance of the mixing budgets

    Returns
    -------
    SpectralReport

    Raises
    ------
    LevelOutOfRange
        If a requested level is not a level of the complex
    """
    if checks is None:
        checks = default_checks(eps=eps)
    profile = gamma_profile(X, n_jobs)
    selected = range(0, X.dimension + 1)
    if levels is not None:
        levels = sorted(set(levels))
        for k in levels:
            if not 0 <= k <= X.dimension:
                raise LevelOutOfRange("Level {} not in 0, ..., {}".format(
                    k, X.dimension))
        selected = levels
    summaries = [level_summary(X, k, eps) for k in selected]
    results = run_checks(X, checks, levels, n_jobs)
    report = SpectralReport(X.dimension, profile, summaries, results, eps)
    logger.info("Checks: %s", report.summary())
    return report


class RunReport():
    """
    The document written by one command line invocation.

    Parameters
    ----------
    command: str
        The command that was run
    inputs: list[str]
        Input files, digested into the report
    arguments: dict
        Options the command ran with
    payload: dict
        The result of the command
    passed: bool
        Whether every assertion passed
    """

    def __init__(self, command, inputs, arguments, payload, passed):
        self.command = command
        self.inputs = list(inputs)
        self.arguments = arguments
        self.payload = payload
        self.passed = passed

    def to_dict(self):
        return {
            'tool': 'hodgewalk',
            'version': __version__,
            'command': self.command,
            'inputs': digest(self.inputs),
            'arguments': self.arguments,
            'result': self.payload,
            'pass': self.passed,
        }

    def to_json(self):
        """Serialise with sorted keys so identical runs give identical text."""
        return json.dumps(sanitize(self.to_dict()),
                          cls=ReportEncoder,
                          sort_keys=True,
                          indent=2) + '\n'

    def write(self, filename=None):
        """Write the report to ``filename``, or return it when None."""
        text = self.to_json()
        if filename is not None:
            with open(filename, 'w', encoding='utf-8') as file:
                file.write(text)
        return text
