import numpy as np
import pytest

from src.CoreOperations.Network import TerminalConfig, build_network
from src.CoreOperations.PhysarumSolver import SolverParams, extract_subgraph, feedback, prune_edges, run_solver, \
                                              update_conductivities
from src.Utils.Exceptions import EmptyNetworkError, InvalidParameterError, PruneDisconnectsTerminalsError

from oracles import random_connected_edges, unique_shortest_path


def single_edge(conductivity, flux):
    network = build_network([(0, 1, 1.)])
    return network.with_state(conductivities=np.array([conductivity]), fluxes=np.array([flux]))


@pytest.mark.parametrize("flux, expected", [(0., 0.45), (1., 0.5), (-1., 0.5)])
def test_update_step_saturating(flux, expected):
    params = SolverParams(mu=1.)
    updated = update_conductivities(single_edge(0.5, flux), params)
    assert updated.conductivities[0] == pytest.approx(expected, abs=1e-15)


def test_update_step_linear():
    params = SolverParams(mu=1., feedback="linear")
    updated = update_conductivities(single_edge(0.5, 2.), params)
    assert updated.conductivities[0] == pytest.approx(0.65, abs=1e-15)


def test_update_never_goes_negative():
    params = SolverParams(gamma=1.)
    updated = update_conductivities(single_edge(0.3, 0.), params)
    assert updated.conductivities[0] == 0.


def test_feedback_is_even_in_flux():
    params = SolverParams()
    fluxes = np.array([-2., -0.5, 0., 0.5, 2.])
    response = feedback(fluxes, params)
    assert response.tolist() == response[::-1].tolist()
    assert response[2] == 0.
    assert np.all(response < 1.)


@pytest.mark.parametrize("overrides", [dict(mu=0.), dict(alpha=-1.), dict(gamma=0.), dict(gamma=1., alpha=2.),
                                       dict(init_conductivity=0.), dict(prune_threshold=-1.), dict(max_iters=0),
                                       dict(feedback="cubic")])
def test_invalid_parameters(overrides):
    with pytest.raises(InvalidParameterError):
        SolverParams(**overrides).validate()


def test_initial_conductivity_from_radius():
    params = SolverParams(init_radius=1., viscosity=np.pi / 8)
    assert params.initial_conductivity() == pytest.approx(1.)


def test_prune_keeps_edges_above_threshold():
    network = build_network([(0, 1, 1.), (1, 2, 1.), (0, 2, 1.)]).with_state(conductivities=np.array([0.5, 0.5, 1e-9]))
    pruned = prune_edges(network, 1e-6)
    assert pruned.edge_pairs() == {frozenset((0, 1)), frozenset((1, 2))}
    assert prune_edges(network, 0.) is network


def test_prune_refuses_to_cut_terminals(unit_terminals):
    network = build_network([(0, 1, 1.), (1, 2, 1.)]).with_state(conductivities=np.array([0.5, 1e-9]))
    with pytest.raises(PruneDisconnectsTerminalsError):
        prune_edges(network, 1e-6, unit_terminals(0, 2))


def test_diamond_selects_short_route(diamond, unit_terminals):
    result = run_solver(diamond, unit_terminals(0, 3))
    assert result.converged
    assert result.surviving_pairs() == {frozenset((0, 1)), frozenset((1, 3))}
    assert result.surviving_length() == 2.
    assert result.spans_terminals
    assert result.final_network.conductivities[:2] == pytest.approx([0.5, 0.5], abs=1e-4)
    assert result.final_network.fluxes[:2] == pytest.approx([1., 1.], abs=1e-4)


def test_losing_route_decays_monotonically(diamond, unit_terminals):
    history = []
    run_solver(diamond, unit_terminals(0, 3), trace=lambda iteration, network: history.append(network.conductivities[2:].copy()))
    long_route = np.array(history)
    assert np.all(np.diff(long_route, axis=0) <= 0.)
    assert long_route[-1].max() < 2e-6


def test_dead_spur_decays_geometrically(unit_terminals):
    network = build_network([(0, 1, 1.), (1, 2, 1.), (1, 3, 1.)])
    spur = []
    result = run_solver(network, unit_terminals(0, 2), trace=lambda iteration, solved: spur.append(solved.conductivities[2]))
    ratios = np.array(spur[1:20]) / np.array(spur[:19])
    assert ratios == pytest.approx(np.full(19, 0.9), rel=1e-9)
    assert result.surviving_pairs() == {frozenset((0, 1)), frozenset((1, 2))}


def test_final_state_conserves_flow(diamond, unit_terminals):
    terminals = unit_terminals(0, 3)
    result = run_solver(diamond, terminals)
    residual = result.final_network.net_outflow() - terminals.injection(diamond.n_vertices)
    assert np.abs(residual).max() < 1e-9
    assert [record.source_outflow for record in result.flux_history] == pytest.approx([1.] * len(result.flux_history))


def test_iteration_budget(diamond, unit_terminals):
    result = run_solver(diamond, unit_terminals(0, 3), SolverParams(max_iters=5))
    assert result.iterations == 5
    assert not result.converged
    assert len(result.flux_history) == 5

    result = run_solver(diamond, unit_terminals(0, 3), SolverParams(max_iters=600, full_budget=True))
    assert result.iterations == 600
    assert result.converged


def test_zero_threshold_keeps_every_edge(diamond, unit_terminals):
    result = run_solver(diamond, unit_terminals(0, 3), SolverParams(prune_threshold=0., max_iters=50))
    assert result.surviving_subgraph.tolist() == [0, 1, 2, 3]


def test_schedule_feedback_is_averaged(unit_terminals):
    network = build_network([(0, 1, 1.), (1, 2, 1.)])
    forward, backward = unit_terminals(0, 2), unit_terminals(2, 0)
    single = run_solver(network, forward, SolverParams(max_iters=30))
    swapped = run_solver(network, params=SolverParams(max_iters=30), schedule=lambda iteration: [forward, backward])
    assert swapped.final_network.conductivities == pytest.approx(single.final_network.conductivities, abs=1e-12)


def test_run_needs_terminals(diamond):
    with pytest.raises(InvalidParameterError):
        run_solver(diamond)


def test_extract_subgraph(diamond, unit_terminals):
    result = run_solver(diamond, unit_terminals(0, 3))
    subgraph = extract_subgraph(result)
    assert subgraph.n_edges == 2
    result.surviving_subgraph = np.array([], dtype=np.int64)
    with pytest.raises(EmptyNetworkError):
        extract_subgraph(result)


def test_tied_routes_keep_one_or_both(unit_terminals):
    network = build_network([(0, 1, 1.), (1, 3, 1.), (0, 2, 1.), (2, 3, 1.)])
    result = run_solver(network, unit_terminals(0, 3))
    upper, lower = {frozenset((0, 1)), frozenset((1, 3))}, {frozenset((0, 2)), frozenset((2, 3))}
    assert result.surviving_pairs() in (upper, lower, upper | lower)


def shortest_path_cases(count, margin=0.05):
    rng = np.random.default_rng(2024)
    cases = []
    while len(cases) < count:
        n = int(rng.integers(8, 31))
        edges = random_connected_edges(rng, n)
        path = unique_shortest_path(edges, 0, n - 1, margin)
        if path is not None:
            cases.append((edges, n, path))
    return cases


def test_shortest_path_emerges_on_random_graphs():
    hits = 0
    cases = shortest_path_cases(5)
    for edges, n, path in cases:
        result = run_solver(build_network(edges), TerminalConfig([(0, 1.)], [(n - 1, 1.)]))
        hits += result.surviving_pairs() == path
    assert hits >= 4


@pytest.mark.slow
def test_shortest_path_acceptance_suite():
    hits = 0
    for edges, n, path in shortest_path_cases(100):
        result = run_solver(build_network(edges), TerminalConfig([(0, 1.)], [(n - 1, 1.)]))
        hits += result.surviving_pairs() == path
    assert hits >= 95
