import math

from PyQt5 import QtCore

from src.CoreOperations.FileFormats import content_lines
from src.CoreOperations.Network import build_network
from src.Utils.Exceptions import ParseError

translate = QtCore.QCoreApplication.translate


def _vertex_id(token):
    try:
        return int(token)
    except ValueError:
        return token


def parse_edgelist(text, init_conductivity=0.5):
    rows = []
    for lineno, line in content_lines(text):
        tokens = line.split()
        if len(tokens) != 3:
            raise ParseError(translate("EdgeList", "Expected 'u v length', got '{line}'.").format(line=line), lineno)
        u, v, length = tokens
        try:
            length = float(length)
        except ValueError as e:
            raise ParseError(translate("EdgeList", "Edge length '{length}' is not a number.").format(length=length), lineno) from e
        if not (length > 0 and math.isfinite(length)):
            raise ParseError(translate("EdgeList", "Edge length must be positive, got {length}.").format(length=length), lineno)
        rows.append((lineno, u, v, length))
    if not rows:
        raise ParseError(translate("EdgeList", "Edge list holds no edges."))

    numeric = all(isinstance(_vertex_id(token), int) for _, u, v, _ in rows for token in (u, v))
    triples = []
    seen = set()
    for lineno, u, v, length in rows:
        if numeric:
            u, v = int(u), int(v)
        if u == v:
            raise ParseError(translate("EdgeList", "Self loop at '{u}'.").format(u=u), lineno)
        if frozenset((u, v)) in seen:
            raise ParseError(translate("EdgeList", "Duplicate edge between '{u}' and '{v}'.").format(u=u, v=v), lineno)
        seen.add(frozenset((u, v)))
        triples.append((u, v, length))
    return build_network(triples, init_conductivity)


def serialize_edgelist(network):
    return "".join(f"{u} {v} {length!r}\n" for u, v, length in network.triples())
