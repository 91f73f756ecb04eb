import math

from PyQt5 import QtCore

from src.CoreOperations.Network import TerminalConfig
from src.Utils.Exceptions import InvalidParameterError, TooFewTerminalsError

translate = QtCore.QCoreApplication.translate


class BaseStrategy:
    """
    Turns a terminal list into the TerminalConfigs driving one solver
    iteration. Subclasses set ``mode`` and ``min_terminals`` and implement
    ``make_terminals``; ``schedule`` returns every config used in an
    iteration (one, unless the strategy sweeps).
    """
    mode = None
    min_terminals = 2
    max_terminals = None

    def __init__(self, strategy_mode, inflow=1.):
        terminals = strategy_mode.terminals
        if len(terminals) < self.min_terminals:
            raise TooFewTerminalsError(self.mode, len(terminals), self.min_terminals)
        if self.max_terminals is not None and len(terminals) > self.max_terminals:
            raise InvalidParameterError(translate("Strategies", "Mode '{mode}' takes exactly {count} terminals, got {got}.").format(mode=self.mode, count=self.max_terminals, got=len(terminals)))
        if len(set(terminals)) != len(terminals):
            raise InvalidParameterError(translate("Strategies", "Terminal list contains repeated vertices."))
        self.strategy_mode = strategy_mode
        self.inflow = inflow

    @property
    def terminals(self):
        return self.strategy_mode.terminals

    def make_terminals(self, iteration):
        raise NotImplementedError

    def schedule(self, iteration):
        return [self.make_terminals(iteration)]

    def ground(self):
        return None

    def split(self, vertices):
        """Divides the inflow over ``vertices``; the last share absorbs rounding."""
        weights = self.strategy_mode.weights
        if weights is None:
            shares = [1.] * len(vertices)
        else:
            shares = [float(weights[self.terminals.index(vertex)]) for vertex in vertices]
            if any(share <= 0 for share in shares):
                raise InvalidParameterError(translate("Strategies", "Terminal weights must be positive."))
        total = math.fsum(shares)
        amounts = [self.inflow * share / total for share in shares[:-1]]
        amounts.append(self.inflow - math.fsum(amounts))
        return list(zip(vertices, amounts))

    def designated(self, default):
        vertex = self.strategy_mode.designated
        if vertex is None:
            return default
        if vertex not in self.terminals:
            raise InvalidParameterError(translate("Strategies", "Designated terminal {vertex} is not in the terminal list.").format(vertex=vertex))
        return vertex

    @staticmethod
    def config(sources, sinks):
        return TerminalConfig(sources, sinks)
