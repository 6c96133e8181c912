from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from kpw.errors import GraphError, ParseError
from kpw.infpath import (cycle_paths, cylinder_member, infpath_eq, make_infpath, parse_infpath,
                         segment, shift, unique_infinite_path)
from kpw.kgraph import Edge, KGraph, deg_add


def test_segment_examples(G1, G4):
    g1, _ = G1
    x = parse_infpath(g1, "v;e")
    assert str(segment(x, (0,), (3,))) == "e.e.e"
    assert segment(x, (2,), (2,)) == g1.vertex("v")
    g4, _ = G4
    y = parse_infpath(g4, "u;e.f")
    assert str(segment(y, (1,), (3,))) == "f.e"


def test_shift_examples(G1, G4):
    g4, _ = G4
    y = parse_infpath(g4, "u;e.f")
    assert infpath_eq(shift(y, (1,)), parse_infpath(g4, "v;f.e"))
    assert shift(y, (0,)) == y
    g1, _ = G1
    x = parse_infpath(g1, "v;e")
    assert infpath_eq(shift(x, (5,)), x)


def test_equality_examples(G1, G4):
    g1, _ = G1
    assert infpath_eq(parse_infpath(g1, "e;e.e"), parse_infpath(g1, "v;e"))
    g4, _ = G4
    a, b = parse_infpath(g4, "u;e.f"), parse_infpath(g4, "v;f.e")
    assert not infpath_eq(a, b)
    assert infpath_eq(a, a)


def test_cylinder_examples(G1, G2):
    g1, _ = G1
    x = parse_infpath(g1, "v;e")
    assert cylinder_member(x, g1.path("e.e"))
    assert cylinder_member(x, g1.vertex("v"))
    g2, _ = G2
    assert not cylinder_member(parse_infpath(g2, "v;e"), g2.path("f"))


def test_normalization_shares_representation(G2, G4):
    g2, _ = G2
    a = parse_infpath(g2, "e.f;e.f")
    b = parse_infpath(g2, "v;e.f.e.f")
    assert (a.prefix, a.cycle) == (b.prefix, b.cycle)
    g4, _ = G4
    c = parse_infpath(g4, "e;f.e")
    d = parse_infpath(g4, "u;e.f")
    assert (c.prefix, c.cycle) == (d.prefix, d.cycle)


def test_torus_has_one_point(G3):
    g, _ = G3
    x = make_infpath(g, g.vertex("v"), g.path("a.a.b"))
    y = make_infpath(g, g.vertex("v"), g.path("a.b.b"))
    assert infpath_eq(x, y)
    assert infpath_eq(x, unique_infinite_path(g, "v"))


def _product_graph():
    """Two loops of each color, every square trivial."""
    edges = [Edge(n, "v", "v", c) for n, c in (("a", 1), ("a2", 1), ("b", 2), ("b2", 2))]
    squares = {(x, y): (y, x) for x in ("a", "a2") for y in ("b", "b2")}
    return KGraph(2, ["v"], edges, squares)


def test_non_parallel_cycles():
    g = _product_graph()
    assert g.validate().valid
    x = make_infpath(g, g.vertex("v"), g.path("a.a2.b"))
    y = make_infpath(g, g.vertex("v"), g.path("a.b.b2"))
    assert not infpath_eq(x, y)
    assert x.is_periodic() and y.is_periodic()
    # equal points written with cycles of different degrees
    z = make_infpath(g, g.vertex("v"), g.path("a.a2.a.a2.b.b"))
    assert infpath_eq(x, z)
    w = make_infpath(g, g.path("a"), g.path("a2.a.b"))
    assert infpath_eq(x, w)


def test_bad_input(G4):
    g, _ = G4
    with pytest.raises(GraphError):
        make_infpath(g, g.vertex("u"), g.path("e"))
    with pytest.raises(ParseError):
        parse_infpath(g, "u")


def _all_paths(graphs):
    out = []
    for g, _ in graphs.values():
        for v in g.vertices:
            out.extend(cycle_paths(g, v, 3))
    return out


@given(data=st.data())
def test_shift_composition(graphs, data):
    xs = _all_paths(graphs)
    x = data.draw(st.sampled_from(xs))
    k = x.graph.rank
    p = tuple(data.draw(st.integers(0, 3)) for _ in range(k))
    q = tuple(data.draw(st.integers(0, 3)) for _ in range(k))
    assert infpath_eq(shift(shift(x, p), q), shift(x, deg_add(p, q)))


@given(data=st.data())
def test_reconstruction(graphs, data):
    x = data.draw(st.sampled_from(_all_paths(graphs)))
    g = x.graph
    n = tuple(data.draw(st.integers(0, 3)) for _ in range(g.rank))
    y = shift(x, n).prepend(segment(x, (0,) * g.rank, n))
    assert infpath_eq(x, y)
    far = tuple(2 * c + 2 for c in n)
    assert x.initial(far) == y.initial(far)


def test_equivalence_relation(graphs):
    rng = random.Random(3)
    xs = _all_paths(graphs)
    sample = rng.sample(xs, min(50, len(xs)))
    for x in sample:
        assert infpath_eq(x, x)
        for y in sample:
            if x.graph is not y.graph:
                continue
            assert infpath_eq(x, y) == infpath_eq(y, x)
            if infpath_eq(x, y):
                # equal points have identical normal representations
                assert (x.prefix, x.cycle) == (y.prefix, y.cycle)
