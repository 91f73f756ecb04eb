import itertools

from PyQt5 import QtCore

from src.Utils.Exceptions import InvalidParameterError
from src.Utils.Random import seeded_stream
from plugins.strategies import BaseStrategy

translate = QtCore.QCoreApplication.translate


class mimo(BaseStrategy):
    """
    ``random``: one seeded (source, sink) pair per iteration.
    ``sweep``: every unordered pair each iteration, feedback averaged.
    ``partition``: the declared sources feed the remaining terminals at once.
    """
    mode = "mimo"
    min_terminals = 2
    schedules = ("random", "sweep", "partition")

    def __init__(self, strategy_mode, inflow=1.):
        super().__init__(strategy_mode, inflow)
        if strategy_mode.schedule not in self.schedules:
            raise InvalidParameterError(translate("Strategies", "Unknown MIMO schedule '{schedule}'.").format(schedule=strategy_mode.schedule))

    def pair(self, iteration):
        rng = seeded_stream(self.strategy_mode.seed, iteration)
        i, j = rng.choice(len(self.terminals), 2, replace=False)
        return self.terminals[int(i)], self.terminals[int(j)]

    def make_terminals(self, iteration):
        if self.strategy_mode.schedule == "partition":
            return self.partitioned()
        source, sink = self.pair(iteration)
        return self.config([(source, self.inflow)], [(sink, self.inflow)])

    def partitioned(self):
        declared = self.strategy_mode.designated
        if not isinstance(declared, (list, tuple)) or not declared:
            raise InvalidParameterError(translate("Strategies", "The partition schedule needs a list of source terminals."))
        sources = [vertex for vertex in self.terminals if vertex in declared]
        sinks = [vertex for vertex in self.terminals if vertex not in declared]
        if len(sources) != len(declared) or not sinks:
            raise InvalidParameterError(translate("Strategies", "Declared sources must be a proper subset of the terminals."))
        return self.config(self.split(sources), self.split(sinks))

    def schedule(self, iteration):
        if self.strategy_mode.schedule == "sweep":
            return [self.config([(u, self.inflow)], [(v, self.inflow)])
                    for u, v in itertools.combinations(self.terminals, 2)]
        return [self.make_terminals(iteration)]

    def ground(self):
        if self.strategy_mode.schedule == "sweep":
            return self.terminals[0]
        return None
