import os
from dataclasses import fields, replace

from PyQt5 import QtCore

from src.CoreOperations.AntColony import AcoParams
from src.CoreOperations.Competition import SimConfig
from src.CoreOperations.PhysarumSolver import SolverParams
from src.Utils.Exceptions import UsageError
from src.Utils.JSONHandler import JSONHandler
from src.Utils.Settings import config_loc

translate = QtCore.QCoreApplication.translate

class ConfigManager:
    """
    Engine defaults from ``defaults.json``. A missing or unreadable file
    leaves the in-code dataclass defaults in force.
    """
    __slots__ = ("config_file", "__sections")

    def __init__(self, config_file=None):
        self.config_file = os.path.join(config_loc, "defaults.json") if config_file is None else config_file
        self.__sections = {}
        self.load_config()

    def load_config(self):
        try:
            self.read_config()
        except Exception:
            self.__sections = {}

    def read_config(self):
        with JSONHandler(self.config_file, "Error reading 'defaults.json'") as config_data:
            self.__sections = {key: dict(value) for key, value in config_data.items()}

    def section(self, name):
        return dict(self.__sections.get(name, {}))

    def solver_params(self):
        return build_record(SolverParams(), self.section("solver")).validate()

    def steiner_params(self):
        return build_record(self.solver_params(), self.section("steiner")).validate()

    def sim_config(self, **base):
        return build_record(SimConfig(**base), self.section("competition"))

    def aco_params(self):
        return build_record(AcoParams(), self.section("aco")).validate()

    def params_for(self, engine):
        if engine == "path":
            return self.solver_params()
        elif engine == "steiner":
            return self.steiner_params()
        elif engine == "tsp":
            return self.aco_params()
        elif engine == "compete":
            return self.sim_config()
        raise UsageError(translate("ConfigManager", "Unknown engine '{engine}'.").format(engine=engine))


def build_record(record, values):
    known = {field.name for field in fields(record)}
    return replace(record, **{key: value for key, value in values.items() if key in known})


def coerce(text, current, key):
    try:
        if isinstance(current, bool):
            lowered = text.strip().lower()
            if lowered in ("1", "true", "yes", "on"):
                return True
            if lowered in ("0", "false", "no", "off"):
                return False
            raise ValueError(text)
        elif isinstance(current, int):
            return int(text)
        elif isinstance(current, float):
            return float(text)
        return text.strip()
    except ValueError as e:
        raise UsageError(translate("ConfigManager", "Cannot read '{text}' as a value for '{key}'.").format(text=text, key=key)) from e


def apply_overrides(record, overrides, scalar_names=None):
    """Applies ``key=value`` strings to a parameter record; foreign keys are a usage error."""
    names = scalar_names if scalar_names is not None else [field.name for field in fields(record)]
    values = {}
    for key, text in overrides.items():
        if key not in names:
            raise UsageError(translate("ConfigManager", "Parameter '{key}' does not apply here; expected one of: {names}.").format(key=key, names=", ".join(names)))
        values[key] = coerce(text, getattr(record, key), key)
    return replace(record, **values)


def parse_assignments(assignments):
    overrides = {}
    for assignment in assignments or []:
        key, sep, value = assignment.partition("=")
        if not sep or not key.strip():
            raise UsageError(translate("ConfigManager", "Expected key=value, got '{text}'.").format(text=assignment))
        overrides[key.strip()] = value
    return overrides
