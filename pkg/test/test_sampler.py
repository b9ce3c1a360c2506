"""Test the down-up samplers."""
import os

import networkx as nx
import pytest

from hodgewalk.builders import PartitionMatroid
from hodgewalk.diagnostics import transition_chi_square, tv_sampling_slack
from hodgewalk.exceptions import NoBudget, NoInitialState, TooLarge
from hodgewalk.sampler import (ChainState, ChainTrace, IndependentSetTarget,
                               MatroidTarget, SamplerConfig, derive_burnin,
                               down_up_step, exact_enumeration, run_chain,
                               run_chains, tv_distance)
from hodgewalk.spectral import sampling_budget

from .conftest import disjoint_triangles


@pytest.fixture
def grid3_target(grid3):
    return MatroidTarget(*grid3, 2)


@pytest.fixture
def triangles_target():
    return IndependentSetTarget(disjoint_triangles(4), 4)


def test_targets(cycle4, grid3_target):
    target = IndependentSetTarget(cycle4, 2)
    assert target.ground == (0, 1, 2, 3)
    assert target.is_valid((0, 2))
    assert not target.is_valid((0, 1))
    assert not target.is_valid((0, 7))
    assert grid3_target.is_valid((0, 4))
    assert not grid3_target.is_valid((0, 1))
    assert not grid3_target.is_valid((0, 0))
    with pytest.raises(ValueError):
        IndependentSetTarget(cycle4, 0)
    with pytest.raises(ValueError):
        MatroidTarget(PartitionMatroid([[0, 1]], [1]),
                      PartitionMatroid([[0, 2]], [1]), 1)


def test_initial_state(grid3_target, star):
    assert grid3_target.initial_state() == (0, 4)
    # Greedy insertion takes the centre and gets stuck
    assert IndependentSetTarget(star, 2).initial_state() == (1, 2)
    with pytest.raises(NoInitialState):
        IndependentSetTarget(nx.complete_graph(3), 2).initial_state()


def test_theorem_applies(grid3, grid6, triangles_target, cycle4):
    assert not MatroidTarget(*grid3, 2).theorem_applies()
    assert MatroidTarget(*grid6, 2).theorem_applies()
    assert triangles_target.theorem_applies()
    assert not IndependentSetTarget(cycle4, 2).theorem_applies()


def test_step_keeps_state_valid(grid3_target):
    state = ChainState((0, 4), seed=3, target=grid3_target)
    for _ in range(200):
        down_up_step(state, grid3_target)
        assert grid3_target.is_valid(state.members)
        assert len(state.members) == 2
        assert state.members == sorted(state.members)
    assert state.step == 200


def test_step_without_tracker(triangles_target):
    state = ChainState((0, 3, 6, 9), seed=1)
    down_up_step(state, triangles_target)
    assert triangles_target.is_valid(state.face)
    assert state.tracker is not None


def test_cycle_chain_is_frozen(cycle4):
    target = IndependentSetTarget(cycle4, 2)
    trace = run_chain(SamplerConfig(target, burnin=10, samples=100))
    assert trace.counts == {(0, 2): 100}
    assert trace.final_state == (0, 2)
    assert trace.steps == 110


def test_no_budget_without_gap(cycle4):
    target = IndependentSetTarget(cycle4, 2)
    with pytest.raises(NoBudget):
        derive_burnin(target, 0.05)
    with pytest.raises(NoBudget):
        SamplerConfig(target, samples=10)


def test_derive_burnin_theorem(triangles_target):
    budget = derive_burnin(triangles_target, 0.05)
    assert budget['source'] == 'theorem'
    assert budget['sigma2'] == pytest.approx(15 / 16)
    assert budget['burnin'] == budget['closed_form']
    assert budget['burnin'] == sampling_budget(4, 12, 0.05)


def test_derive_burnin_eigensolve(grid3_target):
    budget = derive_burnin(grid3_target, 0.05)
    assert budget['source'] == 'eigensolve'
    assert budget['sigma2'] == pytest.approx(0.625)
    assert budget['pi_min'] == pytest.approx(1 / 18)
    assert budget['burnin'] == 16


def test_derive_burnin_cap(grid3_target):
    with pytest.raises(NoBudget):
        derive_burnin(grid3_target, 0.05, cap=5)


def test_config(grid3_target):
    config = SamplerConfig(grid3_target, burnin=5, samples=3)
    assert config.budget == {'burnin': 5, 'source': 'explicit'}
    with pytest.raises(NoInitialState):
        SamplerConfig(grid3_target, burnin=5, initial=(0, 1))
    with pytest.raises(NoInitialState):
        SamplerConfig(grid3_target, burnin=5, initial=(0, ))
    with pytest.raises(ValueError):
        SamplerConfig(grid3_target, burnin=5, thinning=0)
    with pytest.raises(ValueError):
        SamplerConfig(grid3_target, burnin=-1)
    other = config.with_seed(7)
    assert other.seed == 7
    assert config.seed == 0
    assert other.burnin == 5


def test_deterministic(grid3_target):
    config = SamplerConfig(grid3_target, seed=11, burnin=20, samples=300)
    first = run_chain(config)
    second = run_chain(config)
    assert first.counts == second.counts
    assert first.final_state == second.final_state
    assert first.to_dict() == second.to_dict()
    other = run_chain(config.with_seed(12))
    assert other.counts != first.counts


def test_run_chains_parallel(grid3_target):
    config = SamplerConfig(grid3_target, burnin=10, samples=50)
    configs = [config.with_seed(seed) for seed in range(3)]
    serial = run_chains(configs)
    parallel = run_chains(configs, n_jobs=2)
    assert [t.counts for t in serial] == [t.counts for t in parallel]
    assert [t.seed for t in parallel] == [0, 1, 2]


def test_trace_path(tmpdir, grid3_target):
    config = SamplerConfig(grid3_target,
                           burnin=4,
                           samples=3,
                           thinning=2,
                           initial=(2, 3),
                           trace=True,
                           check_states=True)
    trace = run_chain(config)
    assert [step for step, _ in trace.path] == [6, 8, 10]
    filename = os.path.join(str(tmpdir), 'trace.txt')
    trace.write_path(filename)
    with open(filename) as file:
        lines = file.read().splitlines()
    assert len(lines) == 3
    step, *members = lines[0].split()
    assert step == '6'
    assert tuple(int(x) for x in members) == trace.path[0][1]


def test_counts_sum_to_samples(grid3_target):
    config = SamplerConfig(grid3_target, burnin=7, samples=25, thinning=3)
    trace = run_chain(config)
    assert trace.steps == 7 + 25 * 3
    assert sum(trace.counts.values()) == trace.samples == 25
    assert sum(trace.frequencies().values()) == pytest.approx(1)


def test_write_path_requires_trace(tmpdir, grid3_target):
    trace = run_chain(SamplerConfig(grid3_target, burnin=1, samples=1))
    with pytest.raises(ValueError):
        trace.write_path(os.path.join(str(tmpdir), 'trace.txt'))


def test_exact_enumeration(grid3_target, triangles_target):
    states = exact_enumeration(grid3_target)
    assert len(states) == 18
    assert states == sorted(states)
    assert len(exact_enumeration(triangles_target)) == 81
    with pytest.raises(TooLarge):
        exact_enumeration(grid3_target, limit=10)


def test_tv_distance():
    exact = [(0, ), (1, )]
    trace = ChainTrace(0, 4, {(0, ): 3, (1, ): 1}, (0, ))
    assert tv_distance(trace, exact) == pytest.approx(0.25)
    stray = ChainTrace(0, 2, {(0, ): 1, (5, ): 1}, (5, ))
    assert tv_distance(stray, exact) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        tv_distance(trace, [])
    with pytest.raises(ValueError):
        tv_distance(ChainTrace(0, 0, {}, (0, )), exact)


def test_merge():
    first = ChainTrace(1, 10, {(0, ): 2}, (0, ), burnin=4)
    second = ChainTrace(2, 12, {(0, ): 1, (1, ): 3}, (1, ), burnin=4)
    merged = ChainTrace.merge([first, second])
    assert merged.seed == (1, 2)
    assert merged.steps == 22
    assert merged.counts == {(0, ): 3, (1, ): 3}
    assert merged.final_state == (1, )
    assert merged.transitions is None
    assert merged.to_dict()['seed'] == [1, 2]
    with pytest.raises(ValueError):
        ChainTrace.merge([])


def test_uniform_samples(grid3_target):
    """The chain samples the 18 non-attacking rook pairs uniformly."""
    exact = exact_enumeration(grid3_target)
    config = SamplerConfig(grid3_target, seed=5, samples=20000, thinning=3)
    assert config.burnin == 16
    trace = run_chain(config)
    summary = trace.to_dict(exact)
    assert summary['states'] == 18
    assert summary['distinct_states'] == 18
    slack = tv_sampling_slack([1 / 18] * 18, trace.samples)
    assert summary['tv'] <= 0.05 + slack


def test_transitions_follow_walk(triangles_target):
    """Observed transitions match the rows of the down-up operator."""
    X = triangles_target.complex()
    walk = X['down_up', 3]
    config = SamplerConfig(triangles_target,
                           seed=2,
                           burnin=50,
                           samples=8000,
                           transitions=True)
    trace = run_chain(config)
    assert sum(trace.transitions.values()) == 8000
    result = transition_chi_square(trace.transitions, walk.matrix,
                                   list(X.faces(3)))
    assert result['rows'] == 81
    assert result['p_value'] > 1e-3


@pytest.mark.slow
@pytest.mark.parametrize('instance, states', [('empty', 28), ('grid', 450)])
def test_long_run_matches_walk(grid6, instance, states):
    """Transitions follow the down-up rows and the samples are near uniform."""
    if instance == 'empty':
        target = IndependentSetTarget(nx.empty_graph(8), 2)
    else:
        target = MatroidTarget(*grid6, 2)
    assert target.theorem_applies()
    exact = exact_enumeration(target)
    assert len(exact) == states

    config = SamplerConfig(target,
                           seed=3,
                           samples=300000,
                           eps=0.05,
                           transitions=True)
    assert config.budget['source'] == 'theorem'
    trace = run_chain(config)

    X = target.complex()
    result = transition_chi_square(trace.transitions, X['down_up', 1].matrix,
                                   list(X.faces(1)))
    assert result['rows'] == states
    assert result['p_value'] > 1e-3
    slack = tv_sampling_slack([1 / states] * states, trace.samples)
    assert tv_distance(trace, exact) <= 0.05 + slack
