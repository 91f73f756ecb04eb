from dataclasses import replace

from PyQt5 import QtCore

from src.CoreOperations.Competition import AgentSeed, FoodSource, SimConfig
from src.CoreOperations.ConfigManager import coerce
from src.CoreOperations.FileFormats import content_lines
from src.Utils.Exceptions import ParseError, UsageError

translate = QtCore.QCoreApplication.translate


def _numbers(value, lineno, kind, minimum, maximum):
    tokens = value.split()
    if not minimum <= len(tokens) <= maximum:
        raise ParseError(translate("SimConfigFile", "'{kind}' takes {minimum} to {maximum} values, got {count}.").format(kind=kind, minimum=minimum, maximum=maximum, count=len(tokens)), lineno)
    try:
        return [float(token) for token in tokens]
    except ValueError as e:
        raise ParseError(translate("SimConfigFile", "Non-numeric value in '{value}'.").format(value=value), lineno) from e


def parse_sim_config(text, base=None):
    """
    Flat ``key = value`` file. ``food = q r mass quality`` and
    ``agent = q r power genotype mass hunger [spread]`` may repeat.
    """
    config = SimConfig() if base is None else base
    scalars = {}
    foods = []
    agents = []
    names = SimConfig.scalar_names()
    for lineno, line in content_lines(text):
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ParseError(translate("SimConfigFile", "Expected 'key = value', got '{line}'.").format(line=line), lineno)
        if key == "food":
            q, r, mass, quality = _numbers(value, lineno, key, 4, 4)
            foods.append(FoodSource((int(q), int(r)), mass, quality))
        elif key == "agent":
            q, r, power, genotype, mass, hunger, *spread = _numbers(value, lineno, key, 6, 7)
            agents.append(AgentSeed((int(q), int(r)), power, int(genotype), mass, hunger, int(spread[0]) if spread else 0))
        elif key in names:
            try:
                scalars[key] = coerce(value, getattr(config, key), key)
            except UsageError as e:
                raise ParseError(str(e), lineno) from e
        else:
            raise ParseError(translate("SimConfigFile", "Unknown key '{key}'.").format(key=key), lineno)
    return replace(config, foods=tuple(foods) or config.foods, agents=tuple(agents) or config.agents, **scalars)


def _format_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    return repr(value)


def serialize_sim_config(config):
    lines = [f"{name} = {_format_value(getattr(config, name))}" for name in SimConfig.scalar_names()]
    lines += [f"food = {food.position[0]} {food.position[1]} {food.mass!r} {food.quality!r}" for food in config.foods]
    lines += [f"agent = {a.position[0]} {a.position[1]} {a.power!r} {a.genotype} {a.mass!r} {a.hunger!r} {a.spread}" for a in config.agents]
    return "\n".join(lines) + "\n"


def config_as_dict(config):
    data = {name: getattr(config, name) for name in SimConfig.scalar_names()}
    data["foods"] = [{"position": list(food.position), "mass": food.mass, "quality": food.quality} for food in config.foods]
    data["agents"] = [{"position": list(a.position), "power": a.power, "genotype": a.genotype, "mass": a.mass,
                       "hunger": a.hunger, "spread": a.spread} for a in config.agents]
    return data
