from __future__ import annotations

import random
import warnings

import pytest

from kpw.errors import ParseError
from kpw.fixtures import read_text
from kpw.ring import ZZ, zmod
from kpw.sampling import random_element
from kpw.textio import (InvalidGraphError, SourceMismatchWarning, format_family, format_graph,
                        parse_element, parse_family, parse_graph_file)


def test_graph_file_round_trip(graphs):
    for name in ("G1", "G2", "G3", "G4"):
        g, R = parse_graph_file(read_text(name))
        g2, R2 = parse_graph_file(format_graph(g, R))
        assert (g2.rank, g2.vertices, g2.squares, R2) == (g.rank, g.vertices, g.squares, R)
        assert list(g2.edges.values()) == list(g.edges.values())


def test_graph_file_errors():
    text = read_text("G2") + "edge e v v 1\n"
    with pytest.raises(ParseError, match="line 7: duplicate edge 'e'"):
        parse_graph_file(text)
    with pytest.raises(InvalidGraphError, match="missing square"):
        parse_graph_file(read_text("G3").replace("square a.b = b.a", ""))
    with pytest.raises(ParseError, match="line 1"):
        parse_graph_file("vertex v\n")
    with pytest.raises(ParseError, match="unknown vertex"):
        parse_graph_file("kgraph k=1\nedge e v v 1\n")
    with pytest.raises(ParseError, match="color 2 outside"):
        parse_graph_file("kgraph k=1\nvertex v\nedge e v v 2\n")


def test_missing_ring_defaults_to_integers():
    g, R = parse_graph_file("kgraph k=1\nvertex v\nedge e v v 1\n")
    assert R == ZZ


def test_element_errors(G2, G4):
    g, R = G2
    with pytest.raises(ParseError):
        parse_element("s[x]", g, R)
    with pytest.raises(ParseError):
        parse_element("2 +", g, R)
    with pytest.raises(ParseError):
        parse_element("1/2 p[v]", g, ZZ)
    g4, R4 = G4
    with pytest.raises(ParseError, match="not composable"):
        parse_element("s[e] s[e]", g4, R4)
    with pytest.warns(SourceMismatchWarning):
        a = parse_element("s[e] t[f]", g4, R4)
    assert a.is_zero()
    assert parse_element("0", g4, R4).is_zero()


def test_element_syntax(G2):
    g, R = G2
    a = parse_element("2 * s[e]t[f] − 1/2 p[v] + t[e]", g, R)
    assert str(a) == "t[e] - 1/2 s[e]t[e] + 2 s[e]t[f] - 1/2 s[f]t[f]"


@pytest.mark.parametrize("name", ["G1", "G2", "G3", "G4"])
@pytest.mark.parametrize("R", [None, zmod(4)], ids=["file-ring", "Z/4"])
def test_print_parse_round_trip(graphs, name, R):
    g, R0 = graphs[name]
    R = R or R0
    rng = random.Random(name)
    for _ in range(50):
        a = random_element(g, R, rng, 2)
        text = str(a)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            b = parse_element(text, g, R)
        assert str(b) == text
        assert b.equals(a)


def test_family_round_trip(G4):
    g, _ = G4
    text = read_text("G4_units.fam")
    fam = parse_family(text, g)
    again = parse_family(format_family(fam), g)
    assert (again.vertex, again.edge, again.ghost, again.dim) == (fam.vertex, fam.edge, fam.ghost, fam.dim)


def test_family_errors(G4):
    g, _ = G4
    with pytest.raises(ParseError, match="missing matrix"):
        parse_family("dim 1\nring Q\nmatrix p[u]\n1\n", g)
    with pytest.raises(ParseError, match="row has 1 entries"):
        parse_family("dim 2\nring Q\nmatrix p[u]\n1\n", g)
    with pytest.raises(ParseError, match="unknown edge"):
        parse_family("dim 1\nring Q\nmatrix s[z]\n1\n", g)
