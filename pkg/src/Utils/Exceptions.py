from PyQt5 import QtCore

translate = QtCore.QCoreApplication.translate


class PhysarumError(Exception):
    pass


class UsageError(Exception):
    pass


###############
# GRAPH ERRORS #
###############
class InvalidEdgeError(PhysarumError):
    pass

class DuplicateEdgeError(PhysarumError):
    def __init__(self, u, v):
        super().__init__(translate("Network", "Duplicate edge between '{u}' and '{v}'.").format(u=u, v=v))
        self.u = u
        self.v = v

class DisconnectedNetworkError(PhysarumError):
    def __init__(self, vertex):
        super().__init__(translate("Network", "Network is disconnected: vertex '{vertex}' is unreachable.").format(vertex=vertex))
        self.vertex = vertex

class UnknownTerminalError(PhysarumError):
    def __init__(self, vertex):
        super().__init__(translate("Network", "Terminal '{vertex}' is not a vertex of the network.").format(vertex=vertex))
        self.vertex = vertex

class OverlappingTerminalsError(PhysarumError):
    def __init__(self, vertex):
        super().__init__(translate("Network", "Vertex '{vertex}' is both a source and a sink.").format(vertex=vertex))
        self.vertex = vertex

class UnbalancedFlowError(PhysarumError):
    def __init__(self, inflow, outflow):
        super().__init__(translate("Network", "Total inflow {inflow} does not match total outflow {outflow}.").format(inflow=inflow, outflow=outflow))
        self.inflow = inflow
        self.outflow = outflow

class EmptyNetworkError(PhysarumError):
    pass


################
# SOLVER ERRORS #
################
class InvalidParameterError(PhysarumError):
    pass

class SingularSystemError(PhysarumError):
    pass

class PruneDisconnectsTerminalsError(PhysarumError):
    def __init__(self, source):
        super().__init__(translate("Adaptation", "Pruning separates source '{source}' from every sink.").format(source=source))
        self.source = source

class TooFewTerminalsError(PhysarumError):
    def __init__(self, mode, count, required):
        super().__init__(translate("Strategies", "Mode '{mode}' needs at least {required} terminals, got {count}.").format(mode=mode, required=required, count=count))
        self.mode = mode
        self.count = count

class DisconnectedTerminalsError(PhysarumError):
    def __init__(self, terminals):
        super().__init__(translate("Strategies", "Surviving network does not connect terminals: {terminals}.").format(terminals=", ".join(str(t) for t in terminals)))
        self.terminals = terminals


#####################
# COMPETITION ERRORS #
#####################
class OutOfGridError(PhysarumError):
    def __init__(self, cell, radius):
        super().__init__(translate("HexLattice", "Cell {cell} lies outside the grid of radius {radius}.").format(cell=tuple(cell), radius=radius))
        self.cell = cell

class EmptyFrontierError(PhysarumError):
    def __init__(self, agent_id):
        super().__init__(translate("Competition", "Agent {agent_id} has no free cell to expand into.").format(agent_id=agent_id))
        self.agent_id = agent_id

class InvalidConfigError(PhysarumError):
    pass


#############
# ACO ERRORS #
#############
class InvalidInstanceError(PhysarumError):
    pass


###############
# PARSE ERRORS #
###############
class ParseError(PhysarumError):
    def __init__(self, message, line=None):
        if line is not None:
            message = translate("FileFormats", "line {line}: {message}").format(line=line, message=message)
        super().__init__(message)
        self.line = line

class RaggedRowsError(ParseError):
    pass

class MultipleSourcesError(ParseError):
    pass

class MultipleSinksError(ParseError):
    pass

class MissingTerminalError(ParseError):
    pass

class NoPathError(ParseError):
    pass
