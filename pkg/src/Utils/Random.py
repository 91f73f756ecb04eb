import numpy as np

from PyQt5 import QtCore

from src.Utils.Exceptions import InvalidParameterError

translate = QtCore.QCoreApplication.translate


def check_seed(seed):
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise InvalidParameterError(translate("Random", "Seed must be a non-negative integer, got {seed}.").format(seed=seed))
    return int(seed)


def seeded_stream(seed, *keys):
    """
    Independent generator for (seed, *keys). The same key tuple always
    yields the same stream, regardless of what else was drawn before.
    """
    return np.random.default_rng([check_seed(seed), *(int(k) for k in keys)])
