import numpy as np
from PyQt5 import QtCore

from src.CoreOperations.AntColony import check_instance, distance_matrix
from src.CoreOperations.FileFormats import content_lines
from src.Utils.Exceptions import InvalidInstanceError, ParseError

translate = QtCore.QCoreApplication.translate


def parse_tsp(text):
    """
    Reads ``x y`` coordinate lines or a full n x n distance matrix.
    Returns (distances, coordinates) with coordinates None for matrices.
    """
    rows = []
    for lineno, line in content_lines(text):
        try:
            rows.append([float(token) for token in line.split()])
        except ValueError as e:
            raise ParseError(translate("TspInstance", "Non-numeric entry in '{line}'.").format(line=line), lineno) from e
    if not rows:
        raise ParseError(translate("TspInstance", "Instance holds no cities."))

    widths = {len(row) for row in rows}
    if widths == {2} and len(rows) != 2:
        coordinates = np.array(rows)
        return check_instance(distance_matrix(coordinates)), coordinates
    if widths == {len(rows)}:
        return check_instance(np.array(rows)), None
    raise InvalidInstanceError(translate("TspInstance", "Expected 'x y' lines or a square distance matrix."))
