import numpy as np
from PyQt5 import QtCore

from src.CoreOperations.PhysarumSolver import SolverParams, run_solver, terminals_connected
from src.CoreOperations.PhysarumSolver.Strategies import StrategyMode, get_strategy
from src.Utils.Exceptions import DisconnectedTerminalsError, TooFewTerminalsError, UnknownTerminalError
from src.Utils.MessageLog import null_log

translate = QtCore.QCoreApplication.translate

steiner_defaults = SolverParams(max_iters=3000, full_budget=True)


def steiner_approx(network, terminals, params=None, mode=None, trace=None, log=null_log, updateLog=null_log):
    """
    Multi-terminal adaptation: terminals are driven by ``mode`` (MIMO random
    pairs unless told otherwise) and the surviving subgraph must join them all.
    """
    terminals = [int(terminal) for terminal in terminals]
    if len(terminals) < 3:
        raise TooFewTerminalsError("steiner", len(terminals), 3)
    for terminal in terminals:
        if not 0 <= terminal < network.n_vertices:
            raise UnknownTerminalError(terminal)
    if mode is None:
        mode = StrategyMode("mimo", terminals)
    if params is None:
        params = steiner_defaults

    strategy = get_strategy(mode, params.inflow)
    log(translate("Steiner", "Connecting {count} terminals with the {mode} strategy.").format(count=len(terminals), mode=mode.kind))
    result = run_solver(network, params=params, schedule=strategy.schedule, ground=strategy.ground(),
                        trace=trace, log=log, updateLog=updateLog)

    mask = np.zeros(network.n_edges, dtype=bool)
    mask[result.surviving_subgraph] = True
    survivors = result.final_network.restrict(mask)
    if not terminals_connected(survivors, terminals):
        raise DisconnectedTerminalsError([network.name_of(terminal) for terminal in terminals])
    result.terminal_vertices = sorted(terminals)
    result.spans_terminals = True
    return result
