import itertools

import pytest

from injhom.catalog import (
    Target,
    automorphisms,
    canonical_form,
    degree_profile,
    enumerate_reflexive_tournaments,
    is_vertex_transitive,
    named_target,
    serialize_target,
)
from injhom.digraph import OrientedGraph, parse_graph
from injhom.errors import BoundExceeded


def test_c3_arcs():
    c3 = named_target("C3").graph
    assert c3.arcs == {(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (2, 0)}


def test_t4_neighbourhood_structure():
    t4 = named_target("T4").graph
    # out-neighbourhoods, loops included
    assert t4.out_set(0) == {0, 1, 2}
    assert t4.out_set(1) == {1, 2, 3}
    assert t4.out_set(2) == {2, 3}
    assert t4.out_set(3) == {3, 0}
    assert t4.in_set(1) == {0, 1}
    assert t4.in_set(2) == {0, 1, 2}
    assert t4.in_set(3) == {1, 2, 3}


def test_t5_neighbourhood_structure():
    t5 = named_target("T5").graph
    assert t5.out_set(0) == {0, 1, 2}
    assert t5.out_set(3) == {3, 4, 0}
    # b, d, e induce a directed three-cycle
    assert t5.has_arc(1, 3) and t5.has_arc(3, 4) and t5.has_arc(4, 1)


def test_ttn():
    tt6 = named_target("TT6")
    assert tt6.graph.arc_count == 6 + 15
    assert degree_profile(tt6).out_degrees[0] == 6  # source dominates everything


def test_named_targets_are_reflexive_tournaments():
    for name in ("C3", "TT3", "T4", "T5", "TT1", "TT7"):
        t = named_target(name)
        assert t.reflexive and t.is_tournament


def test_enumeration_counts():
    assert [len(enumerate_reflexive_tournaments(n)) for n in range(1, 6)] == [
        1, 1, 2, 4, 12,
    ]


def test_enumeration_bounds():
    with pytest.raises(BoundExceeded):
        enumerate_reflexive_tournaments(0)
    with pytest.raises(BoundExceeded):
        enumerate_reflexive_tournaments(8)


def test_enumeration_members_are_reflexive_tournaments():
    for t in enumerate_reflexive_tournaments(4):
        assert t.reflexive and t.is_tournament


def test_enumeration_degree_sums():
    # strict out-degrees of a tournament sum to n(n-1)/2; reflexive average
    # out-degree is (n-1)/2 + 1
    for n in (3, 4, 5, 6):
        for t in enumerate_reflexive_tournaments(n):
            prof = degree_profile(t)
            assert sum(prof.out_degrees) - n == n * (n - 1) // 2
            assert sum(prof.out_degrees) / n == (n - 1) / 2 + 1


def test_enumeration_pairwise_non_isomorphic():
    keys = [canonical_form(t) for t in enumerate_reflexive_tournaments(5)]
    assert len(keys) == len(set(keys))


@pytest.mark.slow
def test_enumeration_seven_vertices():
    assert len(enumerate_reflexive_tournaments(7)) == 456


def test_canonical_form_invariance():
    t4 = named_target("T4").graph
    for pi in itertools.permutations(range(4)):
        relabelled = OrientedGraph(4, [(pi[u], pi[v]) for u, v in t4.arcs])
        assert canonical_form(relabelled) == canonical_form(t4)


def test_canonical_form_distinguishes():
    assert canonical_form(named_target("C3")) != canonical_form(named_target("TT3"))


def test_canonical_form_stable():
    key = canonical_form(named_target("T5"))
    assert key == canonical_form(named_target("T5"))
    assert isinstance(key, bytes)


def test_canonical_form_bound():
    with pytest.raises(BoundExceeded):
        canonical_form(OrientedGraph(9))


def test_automorphisms_tt3_trivial():
    assert automorphisms(named_target("TT3")) == ((0, 1, 2),)


def test_automorphisms_t5():
    auts = automorphisms(named_target("T5"))
    assert len(auts) == 5
    assert any(pi[0] == 2 and pi[2] == 4 for pi in auts)  # a->c and c->e
    # group closure under composition and inverse
    as_set = set(auts)
    for p in auts:
        for q in auts:
            assert tuple(p[q[v]] for v in range(5)) in as_set
        assert tuple(sorted(range(5), key=lambda v: p[v])) in as_set


def test_automorphisms_c3():
    assert len(automorphisms(named_target("C3"))) == 3


def test_automorphism_preserves_arcs():
    t = named_target("T5")
    arcs = t.graph.arcs
    for pi in automorphisms(t):
        assert {(pi[u], pi[v]) for u, v in arcs} == arcs


def test_vertex_transitivity():
    assert is_vertex_transitive(named_target("T5"))
    assert not is_vertex_transitive(named_target("T4"))
    assert is_vertex_transitive(Target(OrientedGraph(1, [(0, 0)])))


def test_degree_profile_t5():
    prof = degree_profile(named_target("T5"))
    assert prof.in_degrees == (3, 3, 3, 3, 3)
    assert prof.out_degrees == (3, 3, 3, 3, 3)
    assert prof.high_vertices == ()


def test_degree_profile_t4():
    prof = degree_profile(named_target("T4"))
    assert prof.out_degrees == (3, 3, 2, 2)
    assert prof.high_vertices == ()


def test_t4_t5_unique_without_degree_four_vertices():
    # on 4 and 5 vertices exactly one tournament has no vertex of in- or
    # out-degree >= 4 (loops counted), and it is the named one
    four = [t for t in enumerate_reflexive_tournaments(4)
            if not degree_profile(t).high_vertices]
    assert len(four) == 1
    assert canonical_form(four[0]) == canonical_form(named_target("T4"))
    five = [t for t in enumerate_reflexive_tournaments(5)
            if not degree_profile(t).high_vertices]
    assert len(five) == 1
    assert canonical_form(five[0]) == canonical_form(named_target("T5"))


def test_serialize_target_header_and_round_trip():
    t5 = named_target("T5")
    text = serialize_target(t5)
    assert text.startswith("# target T5\n")
    assert parse_graph(text) == t5.graph


def test_degree_profile_reflexive_degree_identity():
    for t in enumerate_reflexive_tournaments(5):
        prof = degree_profile(t)
        for v in range(5):
            assert prof.in_degrees[v] + prof.out_degrees[v] == 5 + 1
