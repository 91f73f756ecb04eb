import itertools

import numpy as np

from src.CoreOperations.Network import build_network
from src.CoreOperations.PhysarumSolver import SolverParams, run_solver
from src.CoreOperations.PhysarumSolver.Strategies import StrategyMode, get_strategy
from src.Utils.MessageLog import null_log


def complete_graph(distances):
    n = len(distances)
    return build_network([(i, j, float(distances[i, j])) for i, j in itertools.combinations(range(n), 2)],
                         vertex_names=list(range(n)))


def physarum_conductance_field(distances, params, tau=None, solver_params=None, log=null_log, updateLog=null_log):
    """
    Adapts the complete city graph with every city pair driven in turn and
    returns the conductivities as a symmetric matrix whose off-diagonal mean
    is 1. A pheromone matrix ``tau`` optionally seeds the conductivities.
    """
    n = len(distances)
    network = complete_graph(distances)
    if solver_params is None:
        solver_params = SolverParams(max_iters=params.field_iters, full_budget=True)
    initial = None if tau is None else field_seed(tau, solver_params.init_conductivity)
    strategy = get_strategy(StrategyMode("mimo", tuple(range(n)), schedule="sweep"), solver_params.inflow)
    result = run_solver(network, params=solver_params, schedule=strategy.schedule, ground=strategy.ground(),
                        initial=initial, log=log, updateLog=updateLog)

    field = np.zeros((n, n))
    final = result.final_network
    field[final.tails, final.heads] = final.conductivities
    field[final.heads, final.tails] = final.conductivities
    mean = field[~np.eye(n, dtype=bool)].mean()
    return field / mean


def field_seed(tau, init_conductivity):
    """Per-edge conductivities of the complete graph from a pheromone matrix."""
    n = len(tau)
    pairs = list(itertools.combinations(range(n), 2))
    values = np.array([tau[i, j] for i, j in pairs])
    return init_conductivity * values / values.mean()
