from plugins.strategies import BaseStrategy


class siso(BaseStrategy):
    mode = "siso"
    min_terminals = 2
    max_terminals = 2

    def make_terminals(self, iteration):
        source, sink = self.terminals
        return self.config([(source, self.inflow)], [(sink, self.inflow)])
