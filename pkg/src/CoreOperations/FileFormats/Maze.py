from collections import deque

from PyQt5 import QtCore

from src.CoreOperations.Network import TerminalConfig, build_network
from src.Utils.Exceptions import MissingTerminalError, MultipleSinksError, MultipleSourcesError, NoPathError, \
                                 ParseError, RaggedRowsError

translate = QtCore.QCoreApplication.translate

WALL, CORRIDOR, SOURCE, SINK = "#", ".", "S", "T"


def maze_rows(text):
    rows = text.splitlines()
    while rows and not rows[-1].strip():
        rows.pop()
    if not rows:
        raise ParseError(translate("Maze", "Maze is empty."))
    width = len(rows[0])
    source = sink = None
    for row_idx, row in enumerate(rows):
        if len(row) != width:
            raise RaggedRowsError(translate("Maze", "Row has {got} cells, expected {width}.").format(got=len(row), width=width), row_idx + 1)
        for col_idx, char in enumerate(row):
            if char not in (WALL, CORRIDOR, SOURCE, SINK):
                raise ParseError(translate("Maze", "Unknown maze character '{char}'.").format(char=char), row_idx + 1)
            if char == SOURCE:
                if source is not None:
                    raise MultipleSourcesError(translate("Maze", "Second source 'S' in the maze."), row_idx + 1)
                source = (row_idx, col_idx)
            elif char == SINK:
                if sink is not None:
                    raise MultipleSinksError(translate("Maze", "Second sink 'T' in the maze."), row_idx + 1)
                sink = (row_idx, col_idx)
    if source is None:
        raise MissingTerminalError(translate("Maze", "Maze has no source 'S'."))
    if sink is None:
        raise MissingTerminalError(translate("Maze", "Maze has no sink 'T'."))
    return rows, source, sink


def cell_name(cell):
    return f"{cell[0]}:{cell[1]}"


def parse_maze(text, inflow=1.):
    """
    Corridor cells reachable from S become vertices named ``row:col``; each
    pair of 4-adjacent corridor cells becomes a unit-length edge.
    """
    rows, source, sink = maze_rows(text)

    def open_cell(r, c):
        return 0 <= r < len(rows) and 0 <= c < len(rows[r]) and rows[r][c] != WALL

    reached = {source}
    queue = deque([source])
    while queue:
        r, c = queue.popleft()
        for neighbour in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if neighbour not in reached and open_cell(*neighbour):
                reached.add(neighbour)
                queue.append(neighbour)
    if sink not in reached:
        raise NoPathError(translate("Maze", "No corridor joins S at {source} to T at {sink}.").format(source=cell_name(source), sink=cell_name(sink)))

    cells = sorted(reached)
    names = [cell_name(cell) for cell in cells]
    edges = []
    for r, c in cells:
        for neighbour in ((r, c + 1), (r + 1, c)):
            if neighbour in reached:
                edges.append((cell_name((r, c)), cell_name(neighbour), 1.))
    network = build_network(edges, vertex_names=names)
    terminals = TerminalConfig([(names.index(cell_name(source)), inflow)], [(names.index(cell_name(sink)), inflow)])
    return network, terminals
