import math
from dataclasses import dataclass, fields, replace

import numpy as np
from PyQt5 import QtCore

from src.CoreOperations.AntColony.PheromoneUpdate import hybrid_pheromone_update, tour_length
from src.CoreOperations.AntColony.PhysarumField import physarum_conductance_field
from src.Utils.Exceptions import InvalidInstanceError, InvalidParameterError
from src.Utils.MessageLog import null_log
from src.Utils.Random import check_seed, seeded_stream

translate = QtCore.QCoreApplication.translate


@dataclass(frozen=True)
class AcoParams:
    ants:          int   = 10
    iterations:    int   = 100
    alpha_pher:    float = 1.
    beta_heur:     float = 3.
    rho:           float = 0.1
    epsilon:       float = 0.3
    seed:          int   = 0
    field_iters:   int   = 200
    field_refresh: int   = 0
    tau0:          float = 1.

    def validate(self):
        def fail(message):
            raise InvalidParameterError(translate("AntColony", "Invalid ACO parameter: {message}").format(message=message))
        if self.ants < 1 or self.iterations < 1 or self.field_iters < 1:
            fail("ants, iterations and field_iters must be positive")
        if self.alpha_pher < 0 or self.beta_heur < 0:
            fail("alpha_pher and beta_heur must be non-negative")
        if not 0 < self.rho < 1:
            fail(f"rho={self.rho} must lie in (0, 1)")
        if not 0 <= self.epsilon <= 1:
            fail(f"epsilon={self.epsilon} must lie in [0, 1]")
        if self.field_refresh < 0 or not self.tau0 > 0:
            fail("field_refresh must be non-negative and tau0 positive")
        check_seed(self.seed)
        return self

    def updated(self, **overrides):
        return replace(self, **overrides).validate()

    @classmethod
    def field_names(cls):
        return [field.name for field in fields(cls)]


class TspResult:
    __slots__ = ("best_tour", "best_length", "convergence_iteration", "history")

    def __init__(self, best_tour, best_length, convergence_iteration, history):
        self.best_tour             = best_tour
        self.best_length           = best_length
        self.convergence_iteration = convergence_iteration
        self.history               = history

    def as_dict(self):
        return {"best_tour": self.best_tour, "best_length": self.best_length,
                "convergence_iteration": self.convergence_iteration, "history": self.history}


def check_instance(distances):
    distances = np.asarray(distances, dtype=float)
    if distances.ndim != 2 or distances.shape[0] != distances.shape[1]:
        raise InvalidInstanceError(translate("AntColony", "Distance matrix must be square."))
    n = len(distances)
    if n < 3:
        raise InvalidInstanceError(translate("AntColony", "A tour needs at least 3 cities, got {n}.").format(n=n))
    off_diagonal = distances[~np.eye(n, dtype=bool)]
    if not np.all(np.isfinite(off_diagonal)) or not np.all(off_diagonal > 0):
        raise InvalidInstanceError(translate("AntColony", "Distances between distinct cities must be positive and finite."))
    if not np.array_equal(distances, distances.T):
        raise InvalidInstanceError(translate("AntColony", "Distance matrix must be symmetric."))
    return distances


def distance_matrix(coordinates):
    points = np.asarray(coordinates, dtype=float)
    return np.sqrt(((points[:, None, :] - points[None, :, :])**2).sum(axis=-1))


def construct_tour(tau, eta, params, rng):
    n = len(tau)
    current = int(rng.integers(n))
    tour = [current]
    unvisited = [city for city in range(n) if city != current]
    while unvisited:
        weights = tau[current, unvisited]**params.alpha_pher * eta[current, unvisited]**params.beta_heur
        cumulative = np.cumsum(weights)
        total = cumulative[-1]
        if total > 0 and math.isfinite(total):
            pick = int(np.searchsorted(cumulative, rng.random() * total, side="right"))
            pick = min(pick, len(unvisited) - 1)
        else:
            pick = int(rng.integers(len(unvisited)))
        current = unvisited.pop(pick)
        tour.append(current)
    return tour


def solve_tsp(distances, params=None, log=null_log, updateLog=null_log):
    """
    Ant system with the Physarum-blended pheromone update. Each ant draws
    from its own stream keyed by (seed, iteration, ant); with epsilon 0 no
    conductance field is computed and the run is plain ACO.
    """
    params = (params or AcoParams()).validate()
    distances = check_instance(distances)
    n = len(distances)
    eta = np.zeros_like(distances)
    np.divide(1., distances, out=eta, where=~np.eye(n, dtype=bool))
    tau = np.full((n, n), params.tau0)

    D_norm = None
    if params.epsilon > 0:
        log(translate("AntColony", "Adapting the conductance field over {n} cities...").format(n=n))
        D_norm = physarum_conductance_field(distances, params)

    best_tour, best_length = None, math.inf
    history = []
    for iteration in range(params.iterations):
        tours = []
        for ant in range(params.ants):
            tour = construct_tour(tau, eta, params, seeded_stream(params.seed, iteration, ant))
            tours.append((tour, tour_length(tour, distances)))
        for tour, length in tours:
            if length < best_length:
                best_tour, best_length = tour, length
        history.append(best_length)

        if D_norm is not None and params.field_refresh and iteration and not iteration % params.field_refresh:
            D_norm = physarum_conductance_field(distances, params, tau=tau)
        tau = hybrid_pheromone_update(tau, tours, D_norm, params)
        updateLog(translate("AntColony", "[{i}/{n}] best tour length {best:.6g}").format(i=iteration + 1, n=params.iterations, best=best_length))

    convergence_iteration = next(i for i, length in enumerate(history) if length == best_length)
    log(translate("AntColony", "Best tour length {best:.6g}, first reached at iteration {i}.").format(best=best_length, i=convergence_iteration))
    return TspResult(best_tour, best_length, convergence_iteration, history)
