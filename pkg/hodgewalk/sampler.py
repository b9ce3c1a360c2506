"""
Down-up walk samplers for independent sets and common independent sets.

The chains never build an operator. Each step drops a uniformly chosen
element of the current set and adds a uniformly chosen element among all
elements that keep the set valid; the dropped element is always among them.
Valid extensions are tracked incrementally: blocked counts per vertex for
independent sets, per-block usage for matroid intersections.
"""
import logging
from abc import ABC, abstractmethod
from bisect import insort
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from os import cpu_count

import numpy as np

from .builders import (common_independent_faces, independent_set_complex,
                       independent_set_faces, is_sampling_condition,
                       matroid_intersection_complex,
                       max_common_independent_size, shares_block_pair)
from .exceptions import (CapExceeded, GapZero, HodgewalkError, NoBudget,
                         NoInitialState, NotPure, StructureMismatch, TooLarge)
from .spectral import mixing_time_budget, sampling_budget, second_eigenvalue

logger = logging.getLogger(__name__)


class Target(ABC):
    """
    The sets of size ``k`` a chain samples from.

    Parameters
    ----------
    k: int
        The size of the sampled sets
    """

    name = None
    """Short name of the target kind"""

    def __init__(self, k):
        if k < 1:
            raise ValueError("k must be at least 1, got {}".format(k))
        self.k = k

    @property
    @abstractmethod
    def ground(self):
        """The sorted elements sets are drawn from."""

    @abstractmethod
    def is_valid(self, face):
        """Whether ``face`` belongs to the family, whatever its size."""

    @abstractmethod
    def tracker(self, members):
        """An incremental record of the valid extensions of ``members``."""

    @abstractmethod
    def faces(self, limit=None):
        """All valid sets of size at most ``k``, per level."""

    @abstractmethod
    def complex(self, cap=None):
        """The weighted complex whose top level is the state space."""

    @abstractmethod
    def theorem_applies(self):
        """Whether the down-up walk is known to have gap at least 1/k^2."""

    def initial_state(self):
        """
        A valid set of size ``k``.

        Elements are inserted greedily in order; when that gets stuck the
        state space is searched exhaustively.

        Raises
        ------
        NoInitialState
            If no set of size ``k`` exists or it cannot be found
        """
        tracker = self.tracker([])
        members = []
        for x in self.ground:
            if len(members) == self.k:
                break
            if tracker.can_add(x):
                tracker.add(x)
                members.append(x)
        if len(members) == self.k:
            return tuple(members)
        logger.info("Greedy insertion stopped at %s elements, searching "
                    "exhaustively", len(members))
        try:
            states = exact_enumeration(self)
        except TooLarge as error:
            raise NoInitialState(
                "Greedy insertion failed and {}".format(error))
        if not states:
            raise NoInitialState("No valid set of size {}".format(self.k))
        return states[0]


class _BlockedTracker():
    """Count for every vertex how many members block it, itself included."""

    def __init__(self, neighbours, members):
        self.neighbours = neighbours
        self.blocked = Counter()
        for x in members:
            self.add(x)

    def can_add(self, x):
        return self.blocked[x] == 0

    def add(self, x):
        self.blocked[x] += 1
        for y in self.neighbours[x]:
            self.blocked[y] += 1

    def remove(self, x):
        self.blocked[x] -= 1
        for y in self.neighbours[x]:
            self.blocked[y] -= 1

    def candidates(self, ground):
        return [x for x in ground if self.blocked[x] == 0]


class IndependentSetTarget(Target):
    """
    Independent sets of size ``k`` in a graph.

    Parameters
    ----------
    graph: networkx.Graph
        A simple graph on non-negative integer vertices
    k: int
        The size of the sets
    """

    name = 'is'

    def __init__(self, graph, k):
        super().__init__(k)
        self.graph = graph
        self._ground = tuple(sorted(graph.nodes))
        self.neighbours = {v: tuple(graph[v]) for v in graph}

    @property
    def ground(self):
        return self._ground

    def is_valid(self, face):
        face = set(face)
        return all(v in self.neighbours for v in face) and not any(
            u in face for v in face for u in self.neighbours[v])

    def tracker(self, members):
        return _BlockedTracker(self.neighbours, members)

    def faces(self, limit=None):
        return independent_set_faces(self.graph, self.k, limit)

    def complex(self, cap=None):
        return independent_set_complex(self.graph, self.k, cap=cap)

    def theorem_applies(self):
        return is_sampling_condition(self.graph, self.k)['pass']


class _UsageTracker():
    """Count the members in every block of both matroids."""

    def __init__(self, first, second, members):
        self.first = first
        self.second = second
        self.usage1 = Counter()
        self.usage2 = Counter()
        self.inside = set()
        for x in members:
            self.add(x)

    def can_add(self, x):
        return (x not in self.inside and self.usage1[self.first.block_of[x]]
                < self.first.caps[self.first.block_of[x]]
                and self.usage2[self.second.block_of[x]] <
                self.second.caps[self.second.block_of[x]])

    def add(self, x):
        self.inside.add(x)
        self.usage1[self.first.block_of[x]] += 1
        self.usage2[self.second.block_of[x]] += 1

    def remove(self, x):
        self.inside.discard(x)
        self.usage1[self.first.block_of[x]] -= 1
        self.usage2[self.second.block_of[x]] -= 1

    def candidates(self, ground):
        return [x for x in ground if self.can_add(x)]


class MatroidTarget(Target):
    """
    Common independent sets of size ``k`` of two partition matroids.

    Parameters
    ----------
    first, second: hodgewalk.builders.PartitionMatroid
        Matroids on the same ground set
    k: int
        The size of the sets
    """

    name = 'mi'

    def __init__(self, first, second, k):
        super().__init__(k)
        if first.ground != second.ground:
            raise ValueError("The matroids have different ground sets")
        self.first = first
        self.second = second

    @property
    def ground(self):
        return self.first.ground

    def is_valid(self, face):
        face = tuple(face)
        return (len(set(face)) == len(face)
                and all(x in self.first.block_of for x in face)
                and self.first.is_independent(face)
                and self.second.is_independent(face))

    def tracker(self, members):
        return _UsageTracker(self.first, self.second, members)

    def faces(self, limit=None):
        return common_independent_faces(self.first, self.second, self.k,
                                        limit)

    def complex(self, cap=None):
        return matroid_intersection_complex(self.first,
                                            self.second,
                                            self.k,
                                            cap=cap)

    def theorem_applies(self):
        if shares_block_pair(self.first, self.second):
            return False
        try:
            r = max_common_independent_size(self.first, self.second)
        except TooLarge:
            logger.warning("Cannot determine the largest common independent "
                           "set size")
            return False
        return self.k <= r / 3


class ChainState():
    """
    The current set of a chain with its random generator.

    The generator is a counter-based Philox generator keyed by ``seed``.

    Parameters
    ----------
    members: iterable of int
        A valid set
    seed: int
        The seed of the generator
    target: Target, optional
        Used to attach the extension tracker right away
    """

    def __init__(self, members, seed=0, target=None):
        self.members = sorted(members)
        self.seed = seed
        self.step = 0
        self.rng = np.random.Generator(np.random.Philox(seed))
        self.tracker = None
        if target is not None:
            self.tracker = target.tracker(self.members)

    @property
    def face(self):
        """The current set as a face."""
        return tuple(self.members)

    def __repr__(self):
        return "{}({}, seed={}, step={})".format(self.__class__.__name__,
                                                 self.members, self.seed,
                                                 self.step)


def down_up_step(state: ChainState, target: Target):
    """
    Make one step of the down-up walk.

    Parameters
    ----------
    state: ChainState
        The state, updated in place
    target: Target
        The family the chain lives on

    Returns
    -------
    ChainState
        The updated state
    """
    if state.tracker is None:
        state.tracker = target.tracker(state.members)
    dropped = state.members.pop(int(state.rng.integers(len(state.members))))
    state.tracker.remove(dropped)
    candidates = state.tracker.candidates(target.ground)
    added = candidates[int(state.rng.integers(len(candidates)))]
    state.tracker.add(added)
    insort(state.members, added)
    state.step += 1
    return state


class SamplerConfig():
    """
    Settings of a chain run.

    Parameters
    ----------
    target: Target
        The family to sample from
    seed: int
        Seed of the generator
    burnin: int, optional
        Steps before the first sample; derived from the mixing budget for
        ``eps`` when None
    samples: int
        Number of recorded samples
    thinning: int
        Steps between two samples
    initial: iterable of int, optional
        Starting set, found with :meth:`Target.initial_state` when None
    eps: float
        Target l1 distance used when the burn-in is derived
    trace: bool
        Record the path of sampled states
    transitions: bool
        Count every transition after the burn-in
    check_states: bool
        Validate the state after every step
    cap: int, optional
        Dense cap used if the burn-in needs an explicit eigensolve
    """

    def __init__(self,
                 target,
                 seed=0,
                 burnin=None,
                 samples=0,
                 thinning=1,
                 initial=None,
                 eps=0.05,
                 trace=False,
                 transitions=False,
                 check_states=False,
                 cap=None):
        if samples < 0:
            raise ValueError("samples must be non-negative")
        if thinning < 1:
            raise ValueError("thinning must be at least 1")
        self.target = target
        self.seed = int(seed)
        self.samples = int(samples)
        self.thinning = int(thinning)
        self.eps = eps
        self.trace = trace
        self.transitions = transitions
        self.check_states = check_states
        if burnin is None:
            self.budget = derive_burnin(target, eps, cap)
            burnin = self.budget['burnin']
        else:
            self.budget = {'burnin': int(burnin), 'source': 'explicit'}
        if burnin < 0:
            raise ValueError("burnin must be non-negative")
        self.burnin = int(burnin)
        if initial is not None:
            initial = tuple(sorted(initial))
            if len(initial) != target.k or not target.is_valid(initial):
                raise NoInitialState(
                    "{} is not a valid set of size {}".format(
                        initial, target.k))
        self.initial = initial

    def with_seed(self, seed):
        """A copy of the configuration with another seed."""
        config = SamplerConfig.__new__(SamplerConfig)
        config.__dict__.update(self.__dict__)
        config.seed = int(seed)
        return config


class ChainTrace():
    """
    The record of a chain run.

    Attributes
    ----------
    seed: int or tuple
        The seed, or the seeds of merged traces
    steps: int
        Steps executed, burn-in included
    counts: dict
        Maps each sampled set to the number of times it was sampled; the
        counts sum to the samples taken after burn-in and thinning, not to
        ``steps``
    final_state: tuple
        The set after the last step
    path: list, optional
        Pairs of step number and sampled set
    transitions: collections.Counter, optional
        Maps pairs of consecutive sets after the burn-in to their count
    """

    def __init__(self,
                 seed,
                 steps,
                 counts,
                 final_state,
                 burnin=0,
                 thinning=1,
                 path=None,
                 transitions=None):
        self.seed = seed
        self.steps = steps
        self.counts = dict(counts)
        self.final_state = final_state
        self.burnin = burnin
        self.thinning = thinning
        self.path = path
        self.transitions = transitions

    @property
    def samples(self):
        """The number of samples, one per ``thinning`` steps after burn-in."""
        return sum(self.counts.values())

    def frequencies(self):
        """The empirical distribution of the samples."""
        total = self.samples
        if total == 0:
            return {}
        return {state: count / total for state, count in self.counts.items()}

    def write_path(self, filename):
        """Write lines ``<step> <sorted set>`` for the recorded path."""
        if self.path is None:
            raise ValueError("The chain was run without tracing")
        with open(filename, 'w', encoding='utf-8') as file:
            for step, state in self.path:
                file.write('{} {}\n'.format(step,
                                            ' '.join(str(x) for x in state)))

    def to_dict(self, exact=None):
        """
        Summarise the trace for a report.

        Parameters
        ----------
        exact: list, optional
            The full state space; adds the total variation distance to the
            uniform distribution
        """
        seed = list(self.seed) if isinstance(self.seed, tuple) else self.seed
        summary = {
            'seed': seed,
            'steps': self.steps,
            'burnin': self.burnin,
            'thinning': self.thinning,
            'samples': self.samples,
            'distinct_states': len(self.counts),
            'final_state': list(self.final_state),
        }
        if exact is not None:
            summary['states'] = len(exact)
            summary['tv'] = tv_distance(self, exact)
        return summary

    @classmethod
    def merge(cls, traces):
        """
        Combine the samples of independent chains, in the given order.

        The merged final state is the one of the last chain.
        """
        traces = list(traces)
        if not traces:
            raise ValueError("Nothing to merge")
        counts = Counter()
        transitions = Counter()
        for trace in traces:
            counts.update(trace.counts)
            if trace.transitions is not None:
                transitions.update(trace.transitions)
        return cls(seed=tuple(trace.seed for trace in traces),
                   steps=sum(trace.steps for trace in traces),
                   counts=counts,
                   final_state=traces[-1].final_state,
                   burnin=traces[0].burnin,
                   thinning=traces[0].thinning,
                   transitions=transitions if any(
                       t.transitions is not None for t in traces) else None)


def _check(state, target):
    if not target.is_valid(state.members):
        raise StructureMismatch("The chain left the state space at step "
                                "{}: {}".format(state.step, state.members))


def run_chain(config: SamplerConfig):
    """
    Run a chain: ``burnin`` steps, then ``samples`` samples every
    ``thinning`` steps.

    The run is deterministic given the configuration.

    Returns
    -------
    ChainTrace
    """
    target = config.target
    initial = config.initial
    if initial is None:
        initial = target.initial_state()
    state = ChainState(initial, config.seed, target)
    logger.info("Running chain with seed %s from %s: %s burn-in steps, %s "
                "samples every %s steps", config.seed, state.face,
                config.burnin, config.samples, config.thinning)

    for _ in range(config.burnin):
        down_up_step(state, target)
        if config.check_states:
            _check(state, target)

    counts = Counter()
    path = [] if config.trace else None
    transitions = Counter() if config.transitions else None
    size = config.samples
    for i in range(config.samples):
        if i % (size // 10 or 1) == 0:
            logger.info("%s%% ready", 100 * i // size)
        for _ in range(config.thinning):
            previous = state.face
            down_up_step(state, target)
            if config.check_states:
                _check(state, target)
            if transitions is not None:
                transitions[(previous, state.face)] += 1
        counts[state.face] += 1
        if path is not None:
            path.append((state.step, state.face))

    return ChainTrace(seed=config.seed,
                      steps=state.step,
                      counts=counts,
                      final_state=state.face,
                      burnin=config.burnin,
                      thinning=config.thinning,
                      path=path,
                      transitions=transitions)


def run_chains(configs, n_jobs=1):
    """
    Run independent chains.

    Parameters
    ----------
    configs: iterable of SamplerConfig
        One configuration per chain
    n_jobs: int
        The maximum number of processes to use. 1 runs the chains one after
        the other; values below 1 use the value returned by
        :func:`os.cpu_count`.

    Returns
    -------
    list[ChainTrace]
        The traces in the order of ``configs``
    """
    configs = list(configs)
    if n_jobs == 1 or len(configs) < 2:
        return [run_chain(config) for config in configs]
    if n_jobs < 1:
        n_jobs = cpu_count()
    logger.info("Running %s chains using at most %s processes", len(configs),
                n_jobs)
    with ProcessPoolExecutor(max_workers=n_jobs) as executor:
        return list(executor.map(run_chain, configs))


def exact_enumeration(target: Target, limit=None):
    """
    All sets of size ``k`` of the target, in lexicographic order.

    Raises
    ------
    TooLarge
        If the family has more than ``limit`` sets of size at most ``k``
    """
    levels = target.faces(limit)
    return list(levels.get(target.k - 1, []))


def tv_distance(trace: ChainTrace, exact):
    """
    Total variation distance between the samples and the uniform
    distribution on ``exact``.

    States that were never sampled contribute ``1/len(exact)`` each.
    """
    exact = list(exact)
    if not exact:
        raise ValueError("The state space is empty")
    if trace.samples == 0:
        raise ValueError("The trace has no samples")
    uniform = 1 / len(exact)
    frequencies = trace.frequencies()
    known = set(exact)
    distance = sum(
        abs(frequencies.get(state, 0.0) - uniform) for state in exact)
    distance += sum(p for state, p in frequencies.items()
                    if state not in known)
    return distance / 2


def derive_burnin(target: Target, eps, cap=None):
    """
    Derive a burn-in from the spectral mixing budget.

    When the target satisfies the hypothesis of the ``1 - 1/k^2`` bound,
    that bound is used with ``pi_min = n^-k``. Otherwise the second
    eigenvalue of the down-up walk is computed explicitly, with
    ``pi_min = 1/|states|``.

    Returns
    -------
    dict
        ``burnin``, its ``source`` and the quantities it was computed from

    Raises
    ------
    NoBudget
        If neither route gives a budget
    """
    k = target.k
    n = len(target.ground)
    if target.theorem_applies():
        sigma2 = 1 - 1 / k**2
        pi_min = float(n)**-k
        burnin = mixing_time_budget(sigma2, pi_min, eps)
        logger.info("Burn-in %s from the 1 - 1/k^2 bound", burnin)
        return {
            'burnin': burnin,
            'source': 'theorem',
            'sigma2': sigma2,
            'pi_min': pi_min,
            'eps': eps,
            'closed_form': sampling_budget(k, n, eps),
        }
    logger.warning("The 1 - 1/k^2 bound does not apply, computing the "
                   "spectrum explicitly")
    try:
        X = target.complex(cap)
        sigma2 = max(second_eigenvalue(X['down_up', k - 1]), 0.0)
        pi_min = 1 / X.size(k - 1)
        burnin = mixing_time_budget(sigma2, pi_min, eps)
    except (CapExceeded, TooLarge, NotPure, GapZero) as error:
        raise NoBudget(
            "Cannot derive a burn-in ({}); give one explicitly".format(error))
    except HodgewalkError as error:
        raise NoBudget("Cannot derive a burn-in: {}".format(error))
    return {
        'burnin': burnin,
        'source': 'eigensolve',
        'sigma2': sigma2,
        'pi_min': pi_min,
        'eps': eps,
    }
