import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse
from scipy.sparse.csgraph import connected_components
from scipy.sparse.linalg import cg, splu
from PyQt5 import QtCore

from src.Utils.Exceptions import InvalidParameterError, SingularSystemError
from src.Utils.Settings import conductivity_floor, direct_solver_limit

translate = QtCore.QCoreApplication.translate


@dataclass(frozen=True)
class RadiusSpec:
    radius: float
    viscosity: float


def conductivity_from_radius(spec):
    """Hagen-Poiseuille tube conductivity pi r^4 / (8 xi)."""
    if not (spec.radius > 0 and spec.viscosity > 0):
        raise InvalidParameterError(translate("FlowSolver", "Radius and viscosity must be positive, got r={r}, xi={xi}.").format(r=spec.radius, xi=spec.viscosity))
    return math.pi * spec.radius**4 / (8 * spec.viscosity)


class PressureMap:
    __slots__ = ("values", "ground")

    def __init__(self, values, ground):
        self.values = values
        self.ground = ground

    def __getitem__(self, vertex):
        return self.values[vertex]

    def __len__(self):
        return len(self.values)


class LinearSystem:
    """
    Grounded Kirchhoff system. ``laplacian`` is the weighted Laplacian of the
    active edges; ``matrix`` is the same matrix with the ground row/column
    and every pinned vertex replaced by the identity.
    """
    __slots__ = ("laplacian", "matrix", "rhs", "injection", "ground", "pinned", "labels", "cache")

    def __init__(self, laplacian, matrix, rhs, injection, ground, pinned, labels, cache):
        self.laplacian = laplacian
        self.matrix    = matrix
        self.rhs       = rhs
        self.injection = injection
        self.ground    = ground
        self.pinned    = pinned
        self.labels    = labels
        self.cache     = cache

    @property
    def size(self):
        return self.matrix.shape[0]

    def retarget(self, terminals):
        """Same matrix, new right-hand side. Shares the factorization cache."""
        injection = terminals.injection(self.size)
        rhs = _grounded_rhs(injection, self.ground, self.pinned, self.labels)
        return LinearSystem(self.laplacian, self.matrix, rhs, injection, self.ground, self.pinned, self.labels, self.cache)


def edge_weights(network):
    weights = network.conductivities / network.lengths
    weights[network.conductivities < conductivity_floor] = 0.
    return weights


def assemble_laplacian(network):
    weights = edge_weights(network)
    active = weights > 0
    tails, heads, w = network.tails[active], network.heads[active], weights[active]
    n = network.n_vertices
    rows = np.concatenate([tails, heads, tails, heads])
    cols = np.concatenate([heads, tails, tails, heads])
    vals = np.concatenate([-w, -w, w, w])
    return scipy.sparse.csr_matrix((vals, (rows, cols)), shape=(n, n))


def _grounded_rhs(injection, ground, pinned, labels):
    ground_label = labels[ground]
    for label in np.unique(labels):
        if label == ground_label:
            continue
        net = math.fsum(injection[labels == label])
        if abs(net) > 1e-12 * max(1., np.abs(injection).max()):
            first = int(np.flatnonzero(labels == label)[0])
            raise SingularSystemError(translate("FlowSolver", "Vertex {vertex} injects flow into a part of the network cut off from the ground by zero-conductivity edges.").format(vertex=first))
    rhs = injection.copy()
    rhs[ground] = 0.
    rhs[pinned] = 0.
    return rhs


def assemble_system(network, terminals, ground=None):
    """
    Builds the Kirchhoff system for ``terminals``. ``ground`` defaults to the
    first sink. Parts of the network cut off from the ground by absent edges
    are pinned to zero pressure when they carry no net injection.
    """
    n = network.n_vertices
    if ground is None:
        ground = terminals.ground
    laplacian = assemble_laplacian(network)
    _, labels = connected_components(laplacian, directed=False)

    pinned = []
    ground_label = labels[ground]
    for label in np.unique(labels):
        if label != ground_label:
            pinned.append(int(np.flatnonzero(labels == label)[0]))
    pinned = np.array(pinned, dtype=np.int64)

    injection = terminals.injection(n)
    rhs = _grounded_rhs(injection, ground, pinned, labels)

    fixed = np.zeros(n, dtype=bool)
    fixed[ground] = True
    fixed[pinned] = True
    keep = scipy.sparse.diags((~fixed).astype(float))
    matrix = (keep @ laplacian @ keep + scipy.sparse.diags(fixed.astype(float))).tocsr()
    return LinearSystem(laplacian, matrix, rhs, injection, ground, pinned, labels, {})


def _direct(system, rhs):
    factor = system.cache.get("lu")
    if factor is None:
        try:
            factor = splu(system.matrix.tocsc())
        except RuntimeError as e:
            raise SingularSystemError(translate("FlowSolver", "Kirchhoff matrix is singular.")) from e
        system.cache["lu"] = factor
    return factor.solve(rhs)


def _iterative(system, rhs, tol):
    diagonal = system.matrix.diagonal()
    preconditioner = scipy.sparse.diags(1. / diagonal)
    x, info = cg(system.matrix, rhs, rtol=0., atol=0.1 * tol * max(1., np.abs(rhs).max()),
                 maxiter=20 * system.size, M=preconditioner)
    return x


def solve_pressures(system, tol=1e-10, method="auto"):
    if not tol > 0:
        raise InvalidParameterError(translate("FlowSolver", "Solver tolerance must be positive."))
    if method == "auto":
        method = "direct" if system.size <= direct_solver_limit else "cg"
    if method == "direct":
        solve = lambda rhs: _direct(system, rhs)
    elif method == "cg":
        solve = lambda rhs: _iterative(system, rhs, tol)
    else:
        raise InvalidParameterError(translate("FlowSolver", "Unknown linear solver '{method}'.").format(method=method))

    bound = tol * max(1., np.abs(system.rhs).max(initial=0.))
    x = solve(system.rhs)
    residual = system.rhs - system.matrix @ x
    if not np.all(np.isfinite(x)) or np.abs(residual).max() > bound:
        # refinement
        x = x + solve(residual)
        residual = system.rhs - system.matrix @ x
    if not np.all(np.isfinite(x)) or np.abs(residual).max() > bound:
        raise SingularSystemError(translate("FlowSolver", "Pressure solve did not reach tolerance {tol} (residual {res:.3g}).").format(tol=tol, res=float(np.abs(residual).max())))

    x[system.ground] = 0.
    x[system.pinned] = 0.
    return PressureMap(x, system.ground)


def compute_fluxes(network, pressures):
    p = pressures.values
    fluxes = edge_weights(network) * (p[network.tails] - p[network.heads])
    return network.with_state(fluxes=fluxes)


def solve_flow(network, terminals, tol=1e-10, method="auto", ground=None):
    system = assemble_system(network, terminals, ground)
    pressures = solve_pressures(system, tol, method)
    return compute_fluxes(network, pressures), pressures
