from plugins.strategies import BaseStrategy


class miso(BaseStrategy):
    mode = "miso"
    min_terminals = 2

    def make_terminals(self, iteration):
        sink = self.designated(self.terminals[-1])
        sources = [vertex for vertex in self.terminals if vertex != sink]
        return self.config(self.split(sources), [(sink, self.inflow)])
