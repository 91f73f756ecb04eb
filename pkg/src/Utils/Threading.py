import traceback

from PyQt5 import QtCore


class SeedRunnable(QtCore.QRunnable):
    """Runs ``func(seed)`` on the pool, keeping its result or exception."""
    def __init__(self, func, seed):
        super().__init__()
        self.setAutoDelete(False)
        self.func = func
        self.seed = seed
        self.result = None
        self.exception = None
        self.traceback = None

    def run(self):
        try:
            self.result = self.func(self.seed)
        except Exception as e:
            self.exception = e
            self.traceback = traceback.format_exc()


def run_seeds(func, seeds, max_threads=None):
    """Returns the finished runnables in the order of ``seeds``."""
    threadpool = QtCore.QThreadPool()
    if max_threads is not None:
        threadpool.setMaxThreadCount(max_threads)
    runnables = [SeedRunnable(func, seed) for seed in seeds]
    for runnable in runnables:
        threadpool.start(runnable)
    threadpool.waitForDone()
    return runnables
