from plugins.strategies import BaseStrategy


class simo(BaseStrategy):
    mode = "simo"
    min_terminals = 2

    def make_terminals(self, iteration):
        source = self.designated(self.terminals[0])
        sinks = [vertex for vertex in self.terminals if vertex != source]
        return self.config([(source, self.inflow)], self.split(sinks))
