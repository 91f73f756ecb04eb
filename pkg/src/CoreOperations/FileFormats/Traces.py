import csv
import json

from src.Utils.Settings import default_encoding

solver_trace_header = ("iteration", "edge", "u", "v", "conductivity", "flux")


class SolverTraceWriter:
    """Per-iteration CSV dump of every edge's conductivity and flux."""
    __slots__ = ("stream", "writer")

    def __init__(self, path):
        self.stream = open(path, 'w', encoding=default_encoding, newline='')
        self.writer = csv.writer(self.stream, lineterminator='\n')
        self.writer.writerow(solver_trace_header)

    def __call__(self, iteration, network):
        for idx in range(network.n_edges):
            self.writer.writerow((iteration, idx,
                                  network.names[network.tails[idx]], network.names[network.heads[idx]],
                                  repr(float(network.conductivities[idx])), repr(float(network.fluxes[idx]))))

    def close(self):
        self.stream.close()

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, exc_traceback):
        self.close()


class TickTraceWriter:
    """One JSON object per TickReport."""
    __slots__ = ("stream",)

    def __init__(self, path):
        self.stream = open(path, 'w', encoding=default_encoding, newline='\n')

    def __call__(self, report):
        self.stream.write(json.dumps(report.as_dict(), sort_keys=True))
        self.stream.write('\n')

    def close(self):
        self.stream.close()

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, exc_traceback):
        self.close()


def format_snapshot(grid, field):
    return "".join(f"{q} {r} {float(value)!r}\n" for (q, r), value in zip(grid.cells, field))


def write_snapshot(path, grid, field):
    with open(path, 'w', encoding=default_encoding, newline='\n') as F:
        F.write(format_snapshot(grid, field))
