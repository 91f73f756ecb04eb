import math

import numpy as np
import pytest

from src.CoreOperations.Network import TerminalConfig, build_network
from src.CoreOperations.PhysarumSolver.FlowSolver import RadiusSpec, assemble_system, compute_fluxes, \
                                                          conductivity_from_radius, solve_flow, solve_pressures
from src.Utils.Exceptions import InvalidParameterError, SingularSystemError

from oracles import random_connected_edges


@pytest.mark.parametrize("radius, viscosity, expected", [(1., math.pi / 8, 1.), (2., math.pi / 8, 16.), (1., 1., math.pi / 8)])
def test_conductivity_from_radius(radius, viscosity, expected):
    assert conductivity_from_radius(RadiusSpec(radius, viscosity)) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("radius, viscosity", [(0., 1.), (1., 0.), (-1., 1.)])
def test_conductivity_from_radius_rejects_non_positive(radius, viscosity):
    with pytest.raises(InvalidParameterError):
        conductivity_from_radius(RadiusSpec(radius, viscosity))


def unit(network):
    return network.with_state(conductivities=np.ones(network.n_edges))


def test_single_edge_system(unit_terminals):
    network = unit(build_network([(0, 1, 1.)]))
    system = assemble_system(network, unit_terminals(0, 1))
    assert system.laplacian.toarray().tolist() == [[1., -1.], [-1., 1.]]
    assert system.matrix.toarray().tolist() == [[1., 0.], [0., 1.]]
    assert system.ground == 1
    pressures = solve_pressures(system)
    assert pressures.values.tolist() == pytest.approx([1., 0.])
    assert pressures[1] == 0.
    assert compute_fluxes(network, pressures).fluxes.tolist() == pytest.approx([1.])


def test_triangle_laplacian_structure(unit_terminals):
    network = unit(build_network([(0, 1, 1.), (1, 2, 1.), (0, 2, 1.)]))
    laplacian = assemble_system(network, unit_terminals(0, 2)).laplacian.toarray()
    assert np.diag(laplacian).tolist() == [2., 2., 2.]
    assert laplacian[~np.eye(3, dtype=bool)].tolist() == [-1.] * 6
    assert laplacian.sum(axis=1).tolist() == [0., 0., 0.]


def test_zero_conductivity_edge_is_absent(unit_terminals):
    network = build_network([(0, 1, 1.), (1, 2, 1.), (0, 2, 1.)]).with_state(conductivities=np.array([1., 1., 0.]))
    laplacian = assemble_system(network, unit_terminals(0, 2)).laplacian.toarray()
    assert laplacian[0, 2] == 0. and laplacian[2, 0] == 0.
    assert laplacian[0, 0] == 1.


def test_series_path_pressures(unit_terminals):
    network = unit(build_network([(0, 1, 1.), (1, 2, 1.)]))
    _, pressures = solve_flow(network, unit_terminals(0, 2))
    assert pressures.values.tolist() == pytest.approx([2., 1., 0.], abs=1e-12)


def test_diamond_pressures_and_fluxes(diamond, unit_terminals):
    solved, pressures = solve_flow(unit(diamond), unit_terminals(0, 3))
    assert pressures[0] == pytest.approx(4 / 3, abs=1e-12)
    assert solved.fluxes.tolist() == pytest.approx([2 / 3, 2 / 3, 1 / 3, 1 / 3], abs=1e-12)


def test_symmetric_diamond_splits_evenly(unit_terminals):
    network = unit(build_network([(0, 1, 1.), (1, 3, 1.), (0, 2, 1.), (2, 3, 1.)]))
    solved, _ = solve_flow(network, unit_terminals(0, 3, 2.))
    assert solved.fluxes.tolist() == pytest.approx([1., 1., 1., 1.], abs=1e-12)


def test_cut_off_source_is_singular(unit_terminals):
    network = build_network([(0, 1, 1.), (1, 2, 1.)]).with_state(conductivities=np.array([0., 1.]))
    with pytest.raises(SingularSystemError):
        assemble_system(network, unit_terminals(0, 2))


def test_floating_component_without_injection_is_pinned(unit_terminals):
    network = build_network([(0, 1, 1.), (1, 2, 1.), (2, 3, 1.)]).with_state(conductivities=np.array([1., 1., 0.]))
    solved, pressures = solve_flow(network, unit_terminals(0, 2))
    assert pressures[3] == 0.
    assert solved.fluxes.tolist() == pytest.approx([1., 1., 0.])


@pytest.mark.parametrize("method", ["direct", "cg"])
def test_methods_agree_with_dense_solve(method):
    rng = np.random.default_rng(3)
    network = build_network(random_connected_edges(rng, 40))
    network = network.with_state(conductivities=rng.uniform(0.1, 2., network.n_edges))
    terminals = TerminalConfig([(0, 1.)], [(39, 1.)])
    system = assemble_system(network, terminals)
    expected = np.linalg.solve(system.matrix.toarray(), system.rhs)
    pressures = solve_pressures(system, 1e-10, method)
    assert pressures.values == pytest.approx(expected, abs=1e-8)


def test_unknown_method_and_bad_tolerance(unit_terminals):
    system = assemble_system(unit(build_network([(0, 1, 1.)])), unit_terminals(0, 1))
    with pytest.raises(InvalidParameterError):
        solve_pressures(system, 1e-10, "qr")
    with pytest.raises(InvalidParameterError):
        solve_pressures(system, 0.)


def random_state(seed, n=30):
    rng = np.random.default_rng(seed)
    network = build_network(random_connected_edges(rng, n))
    network = network.with_state(conductivities=rng.uniform(0.1, 2., network.n_edges))
    sources = [(0, 0.7), (1, 0.3)]
    sinks = [(n - 1, 0.4), (n - 2, 0.6)]
    return network, TerminalConfig(sources, sinks)


@pytest.mark.parametrize("seed", range(10))
def test_kirchhoff_conservation(seed):
    network, terminals = random_state(seed)
    solved, _ = solve_flow(network, terminals)
    residual = solved.net_outflow() - terminals.injection(network.n_vertices)
    assert np.abs(residual).max() <= 1e-9


def test_linear_scaling():
    network, terminals = random_state(11)
    scaled = TerminalConfig([(v, 3. * a) for v, a in terminals.sources], [(v, 3. * a) for v, a in terminals.sinks])
    base, p_base = solve_flow(network, terminals)
    triple, p_triple = solve_flow(network, scaled)
    assert triple.fluxes == pytest.approx(3. * base.fluxes, abs=1e-10)
    assert p_triple.values == pytest.approx(3. * p_base.values, abs=1e-9)


def test_fluxes_do_not_depend_on_grounded_sink():
    network, terminals = random_state(12)
    first, p_first = solve_flow(network, terminals, ground=terminals.sinks[0][0])
    second, p_second = solve_flow(network, terminals, ground=terminals.sinks[1][0])
    assert first.fluxes == pytest.approx(second.fluxes, abs=1e-10)
    shift = p_first.values - p_second.values
    assert shift == pytest.approx(np.full_like(shift, shift[0]), abs=1e-9)


def test_retarget_reuses_matrix(unit_terminals):
    network = unit(build_network([(0, 1, 1.), (1, 2, 1.), (0, 2, 1.)]))
    system = assemble_system(network, unit_terminals(0, 2))
    solve_pressures(system)
    other = system.retarget(unit_terminals(1, 0))
    assert other.cache is system.cache
    solved = compute_fluxes(network, solve_pressures(other))
    assert solved.net_outflow().tolist() == pytest.approx([-1., 1., 0.], abs=1e-12)
