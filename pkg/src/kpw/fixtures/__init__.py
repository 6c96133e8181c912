"""Shipped fixture graphs G1-G4 and representation families."""
from __future__ import annotations

from importlib import resources

NAMES = ("G1", "G2", "G3", "G4")


def path_of(name: str):
    """Resource path of a shipped fixture, e.g. ``G2`` or ``G4_units.fam``."""
    if "." not in name:
        name += ".kg"
    return resources.files(__name__) / name


def read_text(name: str) -> str:
    return path_of(name).read_text()


def load(name: str, ring=None):
    """``(graph, ring)`` for a fixture name such as ``"G3"``."""
    from ..textio import parse_graph_file

    g, spec = parse_graph_file(read_text(name), name=name.split(".")[0])
    return g, (ring or spec)


def load_family(name: str, graph):
    from ..textio import parse_family

    if "." not in name:
        name += ".fam"
    return parse_family(read_text(name), graph)
