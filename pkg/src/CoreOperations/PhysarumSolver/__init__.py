from dataclasses import dataclass, fields, replace

import networkx as nx
import numpy as np
from PyQt5 import QtCore

from src.CoreOperations.Network import sources_reach_sinks, validate
from src.CoreOperations.PhysarumSolver.FlowSolver import RadiusSpec, assemble_system, compute_fluxes, \
                                                          conductivity_from_radius, solve_pressures
from src.Utils.Exceptions import EmptyNetworkError, InvalidParameterError, PruneDisconnectsTerminalsError
from src.Utils.MessageLog import null_log
from src.Utils.Settings import conductivity_floor

translate = QtCore.QCoreApplication.translate


@dataclass(frozen=True)
class SolverParams:
    mu:                float = 2.0
    alpha:             float = 1.0
    gamma:             float = 0.1
    init_conductivity: float = 0.5
    prune_threshold:   float = 1e-6
    max_iters:         int   = 10000
    conv_eps:          float = 1e-6
    conv_window:       int   = 10
    inflow:            float = 1.0
    tol:               float = 1e-10
    feedback:          str   = "saturating"
    solver_method:     str   = "auto"
    init_radius:       float = 0.
    viscosity:         float = 0.
    full_budget:       bool  = False

    def validate(self):
        def fail(message):
            raise InvalidParameterError(translate("Adaptation", "Invalid solver parameter: {message}").format(message=message))
        if not self.mu > 0:
            fail(f"mu={self.mu} must be positive")
        if not self.alpha > 0:
            fail(f"alpha={self.alpha} must be positive")
        if not 0 < self.gamma <= 1:
            fail(f"gamma={self.gamma} must lie in (0, 1]")
        if self.gamma * self.alpha > 1:
            fail(f"gamma*alpha={self.gamma*self.alpha} exceeds 1")
        if not self.init_conductivity > 0:
            fail(f"init_conductivity={self.init_conductivity} must be positive")
        if self.prune_threshold < 0:
            fail(f"prune_threshold={self.prune_threshold} must be non-negative")
        if self.max_iters < 1 or self.conv_window < 1:
            fail("max_iters and conv_window must be at least 1")
        if not (self.conv_eps > 0 and self.inflow > 0 and self.tol > 0):
            fail("conv_eps, inflow and tol must be positive")
        if self.feedback not in ("saturating", "linear"):
            fail(f"unknown feedback law '{self.feedback}'")
        if self.init_radius < 0 or self.viscosity < 0:
            fail("init_radius and viscosity must be non-negative")
        return self

    def updated(self, **overrides):
        return replace(self, **overrides).validate()

    @classmethod
    def field_names(cls):
        return [field.name for field in fields(cls)]

    def initial_conductivity(self):
        if self.init_radius > 0:
            return conductivity_from_radius(RadiusSpec(self.init_radius, self.viscosity))
        return self.init_conductivity


class SolverResult:
    __slots__ = ("final_network", "surviving_subgraph", "iterations", "converged", "flux_history",
                 "spans_terminals", "terminal_vertices", "params")

    def __init__(self, final_network, surviving_subgraph, iterations, converged, flux_history,
                 spans_terminals, terminal_vertices, params):
        self.final_network      = final_network
        self.surviving_subgraph = surviving_subgraph
        self.iterations         = iterations
        self.converged          = converged
        self.flux_history       = flux_history
        self.spans_terminals    = spans_terminals
        self.terminal_vertices  = terminal_vertices
        self.params             = params

    def surviving_pairs(self):
        network = self.final_network
        return {frozenset((int(network.tails[i]), int(network.heads[i]))) for i in self.surviving_subgraph}

    def surviving_length(self):
        return float(self.final_network.lengths[self.surviving_subgraph].sum())


class FluxRecord:
    __slots__ = ("iteration", "max_delta", "total_conductivity", "source_outflow")

    def __init__(self, iteration, max_delta, total_conductivity, source_outflow):
        self.iteration          = iteration
        self.max_delta          = max_delta
        self.total_conductivity = total_conductivity
        self.source_outflow     = source_outflow

    def as_dict(self):
        return {"iteration": self.iteration, "max_delta": self.max_delta,
                "total_conductivity": self.total_conductivity, "source_outflow": self.source_outflow}


def feedback(fluxes, params):
    x = np.abs(fluxes)**params.mu
    if params.feedback == "linear":
        return x
    return x / (1. + x)


def update_conductivities(network, params, response=None):
    """
    One explicit Euler step of dD/dt = f(|Q|) - alpha*D. ``response`` may
    hold a precomputed f(|Q|), e.g. averaged over several terminal configs.
    """
    if response is None:
        response = feedback(network.fluxes, params)
    D = network.conductivities
    return network.with_state(conductivities=np.maximum(0., D + params.gamma * (response - params.alpha * D)))


def prune_edges(network, threshold, terminals=None):
    if threshold < 0:
        raise InvalidParameterError(translate("Adaptation", "Prune threshold must be non-negative."))
    if threshold == 0:
        return network
    pruned = network.restrict(network.conductivities > threshold)
    if terminals is not None:
        source = sources_reach_sinks(pruned, terminals)
        if source is not None:
            raise PruneDisconnectsTerminalsError(network.name_of(source))
    return pruned


def terminals_connected(network, vertices):
    vertices = list(vertices)
    if len(vertices) < 2:
        return True
    component = nx.node_connected_component(network.to_networkx(), vertices[0])
    return all(vertex in component for vertex in vertices)


def _fixed_schedule(terminals):
    return lambda iteration: [terminals]


def run_solver(network, terminals=None, params=None, schedule=None, ground=None, initial=None,
               trace=None, log=null_log, updateLog=null_log):
    """
    Alternates pressure solves and conductivity updates. ``terminals`` fixes
    one TerminalConfig for the whole run; ``schedule(iteration)`` instead
    returns the list of configs driving that iteration, whose feedback is
    averaged. ``trace(iteration, network)`` receives each solved state.
    """
    params = (params or SolverParams()).validate()
    if schedule is None:
        if terminals is None:
            raise InvalidParameterError(translate("Adaptation", "run_solver needs terminals or a schedule."))
        schedule = _fixed_schedule(terminals)

    configs = schedule(0)
    for config in configs:
        validate(network, config)
    terminal_vertices = sorted({vertex for config in configs for vertex in config.vertices()})

    if initial is None:
        initial = np.full(network.n_edges, params.initial_conductivity())
    state = network.with_state(conductivities=np.asarray(initial, dtype=float).copy(), fluxes=np.zeros(network.n_edges))

    settle_floor = max(params.prune_threshold, conductivity_floor)
    quiet = 0
    history = []
    iteration = 0
    log(translate("Adaptation", "Adapting {edges} edges over at most {iters} iterations...").format(edges=network.n_edges, iters=params.max_iters))
    for iteration in range(params.max_iters):
        if iteration:
            configs = schedule(iteration)
        solved, response = _solve_configs(state, configs, params, ground)
        if trace is not None:
            trace(iteration, solved)

        outflow = solved.net_outflow()
        source_outflow = float(sum(outflow[vertex] for vertex, _ in configs[-1].sources))

        updated = update_conductivities(solved, params, response)
        delta = updated.conductivities - state.conductivities
        max_delta = float(np.abs(delta).max(initial=0.))
        history.append(FluxRecord(iteration, max_delta, float(updated.conductivities.sum()), source_outflow))
        state = updated

        settled = (state.conductivities <= settle_floor) | (np.abs(delta) < params.conv_eps * state.conductivities)
        quiet = quiet + 1 if (max_delta < params.conv_eps and settled.all()) else 0
        if not (iteration + 1) % 100:
            updateLog(translate("Adaptation", "[{i}/{n}] max |dD| = {delta:.3g}").format(i=iteration + 1, n=params.max_iters, delta=max_delta))
        if quiet >= params.conv_window and not params.full_budget:
            break

    converged = quiet >= params.conv_window
    iterations = iteration + 1
    state, _ = _solve_configs(state, configs[-1:], params, ground)
    log(translate("Adaptation", "{status} after {iters} iterations.").format(status="Converged" if converged else "Stopped", iters=iterations))

    surviving = prune_edges(state, params.prune_threshold)
    if params.prune_threshold == 0:
        survivors = np.arange(state.n_edges)
    else:
        survivors = np.flatnonzero(state.conductivities > params.prune_threshold)
    return SolverResult(state, survivors, iterations, converged, history,
                        terminals_connected(surviving, terminal_vertices), terminal_vertices, params)


def _solve_configs(state, configs, params, ground):
    response = np.zeros(state.n_edges)
    system = None
    solved = state
    for config in configs:
        if system is None:
            system = assemble_system(state, config, ground)
        else:
            system = system.retarget(config)
        solved = compute_fluxes(state, solve_pressures(system, params.tol, params.solver_method))
        response += feedback(solved.fluxes, params)
    return solved, response / len(configs)


def extract_subgraph(result):
    network = result.final_network
    mask = np.zeros(network.n_edges, dtype=bool)
    mask[result.surviving_subgraph] = True
    if not mask.any():
        raise EmptyNetworkError(translate("Adaptation", "No edge survived pruning."))
    return network.restrict(mask)
