from dataclasses import dataclass

from PyQt5 import QtCore

from src.CoreOperations.PluginLoaders.StrategiesPluginLoader import get_strategy_plugins_dict
from src.Utils.Exceptions import InvalidParameterError
from src.Utils.Random import check_seed

translate = QtCore.QCoreApplication.translate

strategy_plugins = get_strategy_plugins_dict()


@dataclass(frozen=True)
class StrategyMode:
    kind:       str
    terminals:  tuple
    designated: object = None
    weights:    tuple  = None
    seed:       int    = 0
    schedule:   str    = "random"

    def __post_init__(self):
        object.__setattr__(self, "terminals", tuple(int(t) for t in self.terminals))
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
            if len(self.weights) != len(self.terminals):
                raise InvalidParameterError(translate("Strategies", "Expected {n} terminal weights, got {m}.").format(n=len(self.terminals), m=len(self.weights)))
        check_seed(self.seed)


def available_modes():
    return list(strategy_plugins.keys())


def get_strategy(mode, inflow=1.):
    try:
        plugin = strategy_plugins[mode.kind]
    except KeyError as e:
        raise InvalidParameterError(translate("Strategies", "Unknown strategy mode '{mode}'; expected one of {modes}.").format(mode=mode.kind, modes=", ".join(available_modes()))) from e
    return plugin(mode, inflow)


def make_terminals(mode, iteration, inflow=1.):
    """TerminalConfig for ``iteration``; a pure function of the mode (and its seed)."""
    return get_strategy(mode, inflow).make_terminals(iteration)
