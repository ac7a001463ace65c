import random

import pytest

from injhom.digraph import (
    Mode,
    OrientedGraph,
    disjoint_union,
    identify_vertices,
    induced_subgraph,
    is_strongly_connected,
    neighbourhood,
    parse_graph,
    serialize_graph,
)
from injhom.catalog import named_target
from injhom.errors import (
    DigonViolation,
    DuplicateArc,
    MalformedLine,
    SelfMergeCycle,
    VertexOutOfRange,
)


def test_parse_simple_arc():
    g = parse_graph("n 2\na 0 1")
    assert g.n == 2 and g.arcs == {(0, 1)}


def test_parse_loop_gives_self_in_neighbourhood():
    g = parse_graph("n 1\na 0 0")
    assert neighbourhood(g, 0, "in").members == {0}
    assert neighbourhood(g, 0, "out").members == {0}


def test_parse_digon_rejected():
    with pytest.raises(DigonViolation):
        parse_graph("n 2\na 0 1\na 1 0")


def test_parse_errors():
    with pytest.raises(MalformedLine):
        parse_graph("a 0 1")
    with pytest.raises(MalformedLine):
        parse_graph("n 2\nxyzzy")
    with pytest.raises(VertexOutOfRange):
        parse_graph("n 2\na 0 5")
    with pytest.raises(DuplicateArc):
        parse_graph("n 2\na 0 1\na 0 1")


def test_parse_comments_and_ports_tolerated():
    g = parse_graph("# a comment\nn 2\na 0 1\nport left 0")
    assert g.arcs == {(0, 1)}


def test_serialize_empty():
    assert serialize_graph(OrientedGraph(0)) == "n 0"


def test_serialize_loop_round_trip():
    g = OrientedGraph(1, [(0, 0)])
    assert serialize_graph(g) == "n 1\na 0 0"
    assert parse_graph(serialize_graph(g)) == g


def test_serialize_orders_arcs():
    g = OrientedGraph(3, [(2, 0), (0, 1), (1, 2)])
    assert serialize_graph(g) == "n 3\na 0 1\na 1 2\na 2 0"


def test_neighbourhood_directions():
    g = OrientedGraph(2, [(0, 1)])
    assert neighbourhood(g, 1, "in").members == {0}
    g2 = OrientedGraph(2, [(0, 0), (0, 1)])
    assert neighbourhood(g2, 0, "out").members == {0, 1}
    assert neighbourhood(g2, 0, "both").members == {0, 1}
    with pytest.raises(VertexOutOfRange):
        neighbourhood(g, 5, "in")


def test_mode_sets_loop_convention():
    g = OrientedGraph(2, [(0, 0), (0, 1)])
    (both,) = g.mode_sets(0, Mode.IOT)
    assert both == {0, 1}
    nin, nout = g.mode_sets(0, Mode.IOS)
    assert nin == {0} and nout == {0, 1}


def test_disjoint_union_examples():
    a = OrientedGraph(2, [(0, 1)])
    u, offs = disjoint_union([a, a])
    assert u.n == 4 and u.arcs == {(0, 1), (2, 3)} and offs == [0, 2]
    empty, offs = disjoint_union([])
    assert empty.n == 0 and offs == []
    many, _ = disjoint_union([a] * 5)
    assert many.n == 10 and many.arc_count == 5


def test_identify_basic():
    g = OrientedGraph(3, [(0, 1)])
    merged, relabel = identify_vertices(g, [(1, 2)])
    assert merged.n == 2 and merged.arcs == {(0, 1)}
    assert relabel[1] == relabel[2]


def test_identify_duplicate_collapse():
    # x->u and x->w both exist; merging u into w leaves a single arc
    g = OrientedGraph(3, [(0, 1), (0, 2)])
    merged, _ = identify_vertices(g, [(2, 1)])
    assert merged.n == 2 and merged.arc_count == 1


def test_identify_digon_error():
    # u->x and x->w: merging u into w creates both (w,x) and (x,w)
    g = OrientedGraph(3, [(0, 1), (1, 2)])
    with pytest.raises(DigonViolation):
        identify_vertices(g, [(2, 0)])


def test_identify_cycle_error():
    g = OrientedGraph(3, [])
    with pytest.raises(SelfMergeCycle):
        identify_vertices(g, [(0, 1), (1, 0)])


def test_induced_subgraph_examples():
    g = OrientedGraph(3, [(0, 1), (1, 2)])
    empty, _ = induced_subgraph(g, [])
    assert empty.n == 0
    same, relabel = induced_subgraph(g, range(3))
    assert same == g and relabel == {0: 0, 1: 1, 2: 2}


def test_induced_t4_strict_out_neighbourhood():
    t4 = named_target("T4").graph
    strict_out_a = sorted(t4.out_set(0) - {0})
    sub, _ = induced_subgraph(t4, strict_out_a)
    # b and c with loops and the arc b->c: a reflexive 2-vertex tournament
    assert sub == OrientedGraph(2, [(0, 0), (1, 1), (0, 1)])


def test_strongly_connected():
    assert is_strongly_connected(OrientedGraph(3, [(0, 1), (1, 2), (2, 0)]))
    assert not is_strongly_connected(named_target("TT3").graph)
    assert is_strongly_connected(named_target("T4").graph)
    assert is_strongly_connected(OrientedGraph(0))
    assert is_strongly_connected(OrientedGraph(1))


def _random_graph(rng, n):
    arcs = []
    for u in range(n):
        if rng.random() < 0.2:
            arcs.append((u, u))
        for v in range(u + 1, n):
            r = rng.random()
            if r < 0.3:
                arcs.append((u, v))
            elif r < 0.6:
                arcs.append((v, u))
    return OrientedGraph(n, arcs)


def test_property_serialize_parse_identity():
    rng = random.Random(42)
    for _ in range(200):
        g = _random_graph(rng, rng.randint(0, 8))
        assert parse_graph(serialize_graph(g)) == g


def test_property_no_digon_survives_surgery():
    rng = random.Random(43)
    for _ in range(200):
        g = _random_graph(rng, rng.randint(2, 7))
        u, offs = disjoint_union([g, g])
        assert u.n == 2 * g.n and u.arc_count == 2 * g.arc_count
        keep, merge = rng.sample(range(u.n), 2)
        try:
            merged, relabel = identify_vertices(u, [(keep, merge)])
        except DigonViolation:
            continue
        assert merged.n == u.n - 1
        for a, b in merged.arcs:
            assert a == b or (b, a) not in merged.arcs


def test_property_loop_membership():
    rng = random.Random(44)
    for _ in range(100):
        g = _random_graph(rng, rng.randint(1, 6))
        for v in range(g.n):
            has = g.has_loop(v)
            assert (v in g.in_set(v)) == has
            assert (v in g.out_set(v)) == has
