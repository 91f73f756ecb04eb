import inspect

from src.CoreOperations.PluginLoaders.PluginLoad import load_sorted_plugins_in
from plugins.strategies import BaseStrategy


def get_strategy_plugins():
    return load_sorted_plugins_in("plugins.strategies", lambda x: issubclass(x, BaseStrategy) and x is not BaseStrategy if inspect.isclass(x) else False)


def get_strategy_plugins_dict():
    return {strategy.mode: strategy for strategy in get_strategy_plugins()}
