import math

import networkx as nx
import numpy as np
from PyQt5 import QtCore

from src.Utils.Exceptions import DisconnectedNetworkError, DuplicateEdgeError, EmptyNetworkError, \
                                 InvalidEdgeError, OverlappingTerminalsError, UnbalancedFlowError, \
                                 UnknownTerminalError, InvalidParameterError

translate = QtCore.QCoreApplication.translate


class Edge:
    __slots__ = ("u", "v", "length", "conductivity", "flux")

    def __init__(self, u, v, length, conductivity=0., flux=0.):
        self.u = u
        self.v = v
        self.length = length
        self.conductivity = conductivity
        self.flux = flux

    def flow(self, src, dst):
        if (src, dst) == (self.u, self.v):
            return self.flux
        elif (src, dst) == (self.v, self.u):
            return -self.flux
        raise InvalidEdgeError(translate("Network", "Edge ({u}, {v}) does not join {src} and {dst}.").format(u=self.u, v=self.v, src=src, dst=dst))

    def __repr__(self):
        return f"Edge({self.u}, {self.v}, length={self.length}, D={self.conductivity}, Q={self.flux})"


class Network:
    """
    Simple undirected graph over dense vertex ids 0..n-1. Per-edge state is
    held in parallel numpy arrays; ``edges`` gives an ``Edge`` view.
    Instances are not mutated after construction: solver steps build new
    networks through ``with_state``.
    """
    __slots__ = ("n_vertices", "tails", "heads", "lengths", "conductivities", "fluxes", "names", "__adjacency")

    def __init__(self, n_vertices, tails, heads, lengths, conductivities, fluxes, names):
        self.n_vertices     = n_vertices
        self.tails          = tails
        self.heads          = heads
        self.lengths        = lengths
        self.conductivities = conductivities
        self.fluxes         = fluxes
        self.names          = names
        self.__adjacency    = None

    @property
    def n_edges(self):
        return len(self.lengths)

    @property
    def edges(self):
        return [self.edge(i) for i in range(self.n_edges)]

    def edge(self, idx):
        return Edge(int(self.tails[idx]), int(self.heads[idx]), float(self.lengths[idx]),
                    float(self.conductivities[idx]), float(self.fluxes[idx]))

    @property
    def adjacency(self):
        if self.__adjacency is None:
            adjacency = {vertex: [] for vertex in range(self.n_vertices)}
            for idx, (u, v) in enumerate(zip(self.tails, self.heads)):
                adjacency[int(u)].append(idx)
                adjacency[int(v)].append(idx)
            self.__adjacency = adjacency
        return self.__adjacency

    def edge_flow(self, idx, src, dst):
        return self.edge(idx).flow(src, dst)

    def find_edge(self, u, v):
        for idx in self.adjacency[u]:
            if {int(self.tails[idx]), int(self.heads[idx])} == {u, v}:
                return idx
        return None

    def name_of(self, vertex):
        return self.names[vertex]

    def vertex_of(self, name):
        for vertex, vertex_name in enumerate(self.names):
            if vertex_name == str(name):
                return vertex
        raise UnknownTerminalError(name)

    def with_state(self, conductivities=None, fluxes=None):
        return Network(self.n_vertices, self.tails, self.heads, self.lengths,
                       self.conductivities if conductivities is None else np.asarray(conductivities, dtype=float),
                       self.fluxes if fluxes is None else np.asarray(fluxes, dtype=float),
                       self.names)

    def restrict(self, mask):
        mask = np.asarray(mask, dtype=bool)
        return Network(self.n_vertices, self.tails[mask], self.heads[mask], self.lengths[mask],
                       self.conductivities[mask], self.fluxes[mask], self.names)

    def net_outflow(self):
        outflow = np.zeros(self.n_vertices)
        np.add.at(outflow, self.tails, self.fluxes)
        np.add.at(outflow, self.heads, -self.fluxes)
        return outflow

    def total_length(self):
        return float(self.lengths.sum())

    def to_networkx(self):
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n_vertices))
        for idx, (u, v) in enumerate(zip(self.tails, self.heads)):
            graph.add_edge(int(u), int(v), length=float(self.lengths[idx]), index=idx)
        return graph

    def edge_pairs(self):
        return {frozenset((int(u), int(v))) for u, v in zip(self.tails, self.heads)}

    def triples(self):
        return [(self.names[int(u)], self.names[int(v)], float(c)) for u, v, c in zip(self.tails, self.heads, self.lengths)]


class TerminalConfig:
    __slots__ = ("sources", "sinks")

    def __init__(self, sources, sinks):
        self.sources = tuple((int(vertex), float(amount)) for vertex, amount in sources)
        self.sinks   = tuple((int(vertex), float(amount)) for vertex, amount in sinks)
        for vertex, amount in (*self.sources, *self.sinks):
            if not amount > 0:
                raise InvalidParameterError(translate("Network", "Terminal '{vertex}' has non-positive flow {amount}.").format(vertex=vertex, amount=amount))

    @property
    def ground(self):
        return self.sinks[0][0]

    def total_inflow(self):
        return math.fsum(amount for _, amount in self.sources)

    def total_outflow(self):
        return math.fsum(amount for _, amount in self.sinks)

    def injection(self, n_vertices):
        b = np.zeros(n_vertices)
        for vertex, amount in self.sources:
            b[vertex] += amount
        for vertex, amount in self.sinks:
            b[vertex] -= amount
        return b

    def vertices(self):
        return [vertex for vertex, _ in (*self.sources, *self.sinks)]

    def __eq__(self, other):
        return isinstance(other, TerminalConfig) and self.sources == other.sources and self.sinks == other.sinks

    def __repr__(self):
        return f"TerminalConfig(sources={list(self.sources)}, sinks={list(self.sinks)})"


def _densify(ids):
    if all(isinstance(i, (int, np.integer)) and not isinstance(i, bool) for i in ids):
        order = sorted(set(int(i) for i in ids))
    else:
        order = list(dict.fromkeys(ids))
    return {vertex_id: dense for dense, vertex_id in enumerate(order)}, [str(i) for i in order]


def build_network(edge_list, init_conductivity=0.5, vertex_names=None):
    """
    Builds a Network from (u, v, length) triples. External ids are kept in
    ``names``; ``vertex_names`` may list extra (isolated) vertices, fixing
    the dense order.
    """
    edge_list = list(edge_list)
    if not len(edge_list) and not vertex_names:
        raise EmptyNetworkError(translate("Network", "Edge list is empty."))
    if init_conductivity < 0:
        raise InvalidParameterError(translate("Network", "Initial conductivity must be non-negative."))

    if vertex_names is None:
        lookup, names = _densify([x for u, v, _ in edge_list for x in (u, v)])
    else:
        names = [str(name) for name in vertex_names]
        lookup = {name: i for i, name in enumerate(vertex_names)}

    seen = set()
    tails, heads, lengths = [], [], []
    for u, v, length in edge_list:
        if u not in lookup or v not in lookup:
            raise UnknownTerminalError(u if u not in lookup else v)
        if u == v:
            raise InvalidEdgeError(translate("Network", "Self loop at '{u}'.").format(u=u))
        length = float(length)
        if not (length > 0 and math.isfinite(length)):
            raise InvalidEdgeError(translate("Network", "Edge ({u}, {v}) has non-positive length {length}.").format(u=u, v=v, length=length))
        key = frozenset((lookup[u], lookup[v]))
        if key in seen:
            raise DuplicateEdgeError(u, v)
        seen.add(key)
        tails.append(lookup[u])
        heads.append(lookup[v])
        lengths.append(length)

    n_edges = len(lengths)
    return Network(len(names),
                   np.array(tails, dtype=np.int64),
                   np.array(heads, dtype=np.int64),
                   np.array(lengths, dtype=float),
                   np.full(n_edges, float(init_conductivity)),
                   np.zeros(n_edges),
                   names)


def sources_reach_sinks(network, terminals):
    """Returns the first source with no sink in its component, or None."""
    graph = network.to_networkx()
    sinks = {vertex for vertex, _ in terminals.sinks}
    for source, _ in terminals.sources:
        if not sinks & nx.node_connected_component(graph, source):
            return source
    return None


def validate(network, terminals):
    for vertex in terminals.vertices():
        if not 0 <= vertex < network.n_vertices:
            raise UnknownTerminalError(vertex)
    overlap = {v for v, _ in terminals.sources} & {v for v, _ in terminals.sinks}
    if overlap:
        raise OverlappingTerminalsError(network.name_of(min(overlap)))
    inflow, outflow = terminals.total_inflow(), terminals.total_outflow()
    if not math.isclose(inflow, outflow, rel_tol=1e-9, abs_tol=1e-12):
        raise UnbalancedFlowError(inflow, outflow)
    if not len(terminals.sources) or not len(terminals.sinks):
        raise UnbalancedFlowError(inflow, outflow)

    graph = network.to_networkx()
    reached = nx.node_connected_component(graph, 0)
    if len(reached) != network.n_vertices:
        missing = min(set(range(network.n_vertices)) - reached)
        raise DisconnectedNetworkError(network.name_of(missing))
