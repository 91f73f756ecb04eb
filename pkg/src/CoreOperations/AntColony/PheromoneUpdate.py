import numpy as np

from src.Utils.Settings import pheromone_floor


def tour_edges(tour):
    return zip(tour, tour[1:] + tour[:1])


def tour_length(tour, distances):
    return float(sum(distances[a, b] for a, b in tour_edges(tour)))


def deposits(tau_shape, tours):
    """Sum of 1/length over the edges of each (tour, length), added in ant order."""
    laid = np.zeros(tau_shape)
    for tour, length in tours:
        amount = 1.0 / length
        for a, b in tour_edges(tour):
            laid[a, b] += amount
            laid[b, a] += amount
    return laid


def standard_update(tau, tours, rho):
    return (1 - rho) * tau + deposits(tau.shape, tours)


def hybrid_pheromone_update(tau, tours, D_norm, params):
    """
    Convex blend of the evaporate-and-deposit update with the normalised
    Physarum conductance field, floored to stay positive.
    """
    updated = standard_update(tau, tours, params.rho)
    if D_norm is not None and params.epsilon > 0:
        updated = (1 - params.epsilon) * updated + params.epsilon * D_norm
    return np.maximum(updated, pheromone_floor)
