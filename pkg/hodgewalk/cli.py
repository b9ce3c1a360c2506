"""
Command line interface.

Every command writes a JSON report to standard output, or to ``--out``, and
exits with

    * 0 - every assertion passed
    * 1 - an assertion failed
    * 2 - an input could not be parsed
    * 3 - an input has the wrong structure
    * 4 - a resource cap was exceeded

Example
=======
Check the bounds on a facet file, restricted to one level and one check::

    hodgewalk spectrum complex.txt --level 2 --only main-bound
"""
import argparse
import logging
import sys

from ._version import __version__
from .builders import (PartitionMatroid, independent_set_complex,
                       is_link_checks, is_theorem_check,
                       matroid_intersection_complex,
                       max_common_independent_size, mi_link_checks,
                       mi_theorem_check)
from .constants import EXIT_CODES
from .diagnostics import tv_sampling_slack
from .exceptions import (CapExceeded, DuplicateFacet, EmptyInput,
                         HodgewalkError, LevelOutOfRange, NoBudget,
                         NoInitialState, NonPositivePi, NonPure, NotPure,
                         NotSimpleB, ParseError, StructureMismatch, TooLarge)
from .report import RunReport, sanitize, verify
from .sampler import (ChainTrace, IndependentSetTarget, MatroidTarget,
                      SamplerConfig, exact_enumeration, run_chains)
from .spectral import CheckResult, default_checks
from .util import read_complex, read_graph, write_facets

logger = logging.getLogger(__name__)

ERROR_CODES = (
    ((ParseError, EmptyInput, LevelOutOfRange, OSError), 'parse'),
    ((NonPure, NotPure, DuplicateFacet, NonPositivePi, NotSimpleB,
      StructureMismatch, NoInitialState, NoBudget), 'structure'),
    ((CapExceeded, TooLarge), 'cap'),
)


def exit_code(error):
    """The exit code for an exception raised by a command."""
    for classes, code in ERROR_CODES:
        if isinstance(error, classes):
            return EXIT_CODES[code]
    return EXIT_CODES['fail']


def _emit(report, out):
    text = report.write(out)
    if out is None:
        sys.stdout.write(text)
    return EXIT_CODES['pass'] if report.passed else EXIT_CODES['fail']


def _checks(args, identities=False):
    checks = default_checks(identities=identities, eps=args.eps)
    if args.only:
        try:
            checks = checks.select(args.only)
        except IndexError as error:
            raise ParseError(str(error))
    return checks


def _analyse(command, args, checks):
    X = read_complex(args.complex, cap=args.cap)
    report = verify(X,
                    checks,
                    levels=args.level,
                    n_jobs=args.jobs,
                    eps=args.eps)
    payload = report.to_dict()
    if command == 'verify all':
        payload['residuals'] = X.residuals()
    arguments = {
        'level': args.level,
        'only': args.only,
        'cap': X.cap,
        'eps': args.eps,
    }
    return RunReport(command, [args.complex], arguments, payload,
                     report.passed)


def cmd_spectrum(args):
    """Measure the spectra of a complex and check the bounds."""
    return _emit(_analyse('spectrum', args, _checks(args)), args.out)


def cmd_verify(args):
    """Check the bounds and every operator identity of a complex."""
    return _emit(_analyse('verify all', args, _checks(args, True)), args.out)


def _matroids(args):
    if args.m1 is None or args.m2 is None:
        raise ParseError("Both --m1 and --m2 are required")
    first = PartitionMatroid.from_file(args.m1)
    second = PartitionMatroid.from_file(args.m2)
    if first.ground != second.ground:
        raise ParseError("{} and {} have different ground sets".format(
            args.m1, args.m2))
    return first, second


def cmd_build(args):
    """Build an independent set or matroid intersection complex."""
    if args.kind == 'is':
        if args.graph is None:
            raise ParseError("--graph is required")
        inputs = [args.graph]
        graph = read_graph(args.graph)
        X = independent_set_complex(graph, args.k, cap=args.cap)
        results = is_link_checks(graph, args.k, X)
        results.append(is_theorem_check(graph, args.k, X))
        extra = {'vertices': graph.number_of_nodes()}
    else:
        inputs = [args.m1, args.m2]
        first, second = _matroids(args)
        X = matroid_intersection_complex(first, second, args.k, cap=args.cap)
        r = max_common_independent_size(first, second)
        results = mi_link_checks(first, second, args.k, X, r)
        results.append(mi_theorem_check(first, second, args.k, X, r))
        extra = {'elements': len(first.ground), 'r': r}

    facets = X.faces(X.dimension)
    if args.facets is not None:
        write_facets(args.facets, facets)
    passed = all(result.passed for result in results)
    payload = dict(extra,
                   dimension=X.dimension,
                   facets=len(facets),
                   checks=[result.to_dict() for result in results])
    report = RunReport('build ' + args.kind, inputs, {
        'k': args.k,
        'cap': X.cap
    }, payload, passed)
    return _emit(report, args.out)


def cmd_sample(args):
    """Run down-up chains and compare them with the uniform distribution."""
    if args.kind == 'is':
        if args.graph is None:
            raise ParseError("--graph is required")
        inputs = [args.graph]
        target = IndependentSetTarget(read_graph(args.graph), args.k)
    else:
        inputs = [args.m1, args.m2]
        target = MatroidTarget(*_matroids(args), args.k)

    config = SamplerConfig(target,
                           seed=args.seed,
                           burnin=args.burnin,
                           samples=args.samples,
                           thinning=args.thinning,
                           eps=args.eps,
                           trace=args.trace is not None,
                           cap=args.cap)
    configs = [config.with_seed(args.seed + i) for i in range(args.chains)]
    traces = run_chains(configs, n_jobs=args.jobs)
    if args.trace is not None:
        traces[0].write_path(args.trace)
    trace = ChainTrace.merge(traces)

    try:
        exact = exact_enumeration(target)
    except TooLarge:
        logger.warning("Too many states to compare with the exact "
                       "distribution")
        exact = None
    if exact is not None and trace.samples == 0:
        exact = None
    payload = trace.to_dict(exact)
    payload['budget'] = config.budget
    payload['chains'] = [t.to_dict() for t in traces]
    passed = True
    if exact is not None:
        slack = tv_sampling_slack([1 / len(exact)] * len(exact),
                                  trace.samples)
        result = CheckResult.compare('sample-tv', {'k': args.k},
                                     payload['tv'],
                                     args.eps + slack,
                                     tolerance=0,
                                     detail={
                                         'eps': args.eps,
                                         'slack': slack
                                     })
        payload['checks'] = [result.to_dict()]
        passed = result.passed
    arguments = {
        'k': args.k,
        'seed': args.seed,
        'eps': args.eps,
        'burnin': args.burnin,
        'samples': args.samples,
        'thinning': args.thinning,
        'chains': args.chains,
    }
    report = RunReport('sample ' + args.kind, inputs, arguments, payload,
                       passed)
    return _emit(report, args.out)


def _at_least(minimum):
    """An argument type for integers of at least ``minimum``."""

    def integer(text):
        value = int(text)
        if value < minimum:
            raise argparse.ArgumentTypeError(
                "expected an integer >= {}, got {}".format(minimum, value))
        return value

    return integer


def fraction(text):
    """An argument type for numbers strictly between 0 and 1."""
    value = float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(
            "expected a number in (0, 1), got {}".format(value))
    return value


def _add_analysis_arguments(parser):
    parser.add_argument('complex', help="Facet file")
    parser.add_argument('--level',
                        type=int,
                        action='append',
                        help="Only report this level; may be repeated")
    parser.add_argument('--only',
                        action='append',
                        metavar='CHECK',
                        help="Only run this check; may be repeated")


def _add_common_arguments(parser):
    parser.add_argument('--cap',
                        type=_at_least(1),
                        help="Largest number of faces per level for dense "
                        "operators, by default $HODGEWALK_CAP or 5000")
    parser.add_argument('--eps',
                        type=fraction,
                        default=0.05,
                        help="Target l1 distance of mixing budgets")
    parser.add_argument('--jobs',
                        type=int,
                        default=1,
                        help="Number of processes, below 1 uses all CPUs")
    parser.add_argument('--out', help="Write the report to this file")


def _add_target_arguments(parser):
    parser.add_argument('kind', choices=('is', 'mi'))
    parser.add_argument('--graph', help="Graph file, for 'is'")
    parser.add_argument('--m1', help="First partition matroid, for 'mi'")
    parser.add_argument('--m2', help="Second partition matroid, for 'mi'")
    parser.add_argument('--k',
                        type=_at_least(1),
                        required=True,
                        help="Set size")


def build_parser():
    """The argument parser of the ``hodgewalk`` command."""
    parser = argparse.ArgumentParser(
        prog='hodgewalk',
        description="Spectral analysis of random walks on weighted "
        "simplicial complexes.")
    parser.add_argument('--version', action='version', version=__version__)
    parser.add_argument('-v',
                        '--verbose',
                        action='store_true',
                        help="Log progress")
    subparsers = parser.add_subparsers(dest='command', required=True)

    spectrum = subparsers.add_parser(
        'spectrum', help="Spectra and eigenvalue bounds of a complex")
    _add_analysis_arguments(spectrum)
    _add_common_arguments(spectrum)
    spectrum.set_defaults(func=cmd_spectrum)

    verify_parser = subparsers.add_parser(
        'verify', help="Bounds and operator identities of a complex")
    verify_parser.add_argument('scope', choices=('all', ))
    _add_analysis_arguments(verify_parser)
    _add_common_arguments(verify_parser)
    verify_parser.set_defaults(func=cmd_verify)

    build = subparsers.add_parser(
        'build', help="Independent set or matroid intersection complexes")
    _add_target_arguments(build)
    build.add_argument('--facets', help="Write the facets to this file")
    _add_common_arguments(build)
    build.set_defaults(func=cmd_build)

    sample = subparsers.add_parser('sample', help="Run down-up chains")
    _add_target_arguments(sample)
    sample.add_argument('--seed', type=int, default=0)
    sample.add_argument('--burnin',
                        type=_at_least(0),
                        help="Burn-in steps, derived from the mixing budget "
                        "when omitted")
    sample.add_argument('--samples', type=_at_least(0), default=10000)
    sample.add_argument('--thinning', type=_at_least(1), default=1)
    sample.add_argument('--chains',
                        type=_at_least(1),
                        default=1,
                        help="Independent chains with seeds seed, seed+1, ...")
    sample.add_argument('--trace',
                        help="Write the path of the first chain to this file")
    _add_common_arguments(sample)
    sample.set_defaults(func=cmd_sample)
    return parser


def main(argv=None):
    """Run the command line interface and return the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format='%(asctime)s %(name)s %(levelname)s: %(message)s')
    try:
        return args.func(args)
    except (HodgewalkError, OSError) as error:
        code = exit_code(error)
        message = "error: {}".format(error)
        witness = getattr(error, 'witness', None)
        if witness is not None:
            message += "\nwitness: {}".format(sanitize(witness))
        sys.stderr.write(message + '\n')
        return code


if __name__ == '__main__':
    sys.exit(main())
