import random

import pytest

from injhom.catalog import named_target
from injhom.digraph import MODES, Mode, OrientedGraph
from injhom.errors import InvalidFixedAssignment, PartialColouring
from injhom.gadgets import load_gadget
from injhom.naive import naive_witnesses
from injhom.solver import (
    SolveOptions,
    decide,
    enumerate_colourings,
    enumerate_mod_aut,
    solve,
    verify_colouring,
)

C3 = named_target("C3")
TT3 = named_target("TT3")
T4 = named_target("T4")
T5 = named_target("T5")

THREE_CYCLE = OrientedGraph(3, [(0, 1), (1, 2), (2, 0)])


def _random_graph(rng, n, loop_p=0.2):
    arcs = []
    for u in range(n):
        if rng.random() < loop_p:
            arcs.append((u, u))
        for v in range(u + 1, n):
            r = rng.random()
            if r < 0.3:
                arcs.append((u, v))
            elif r < 0.6:
                arcs.append((v, u))
    return OrientedGraph(n, arcs)


# -- verify_colouring --------------------------------------------------------


def test_verify_identity_cycle():
    ok, why = verify_colouring(THREE_CYCLE, C3, (0, 1, 2), Mode.IOT)
    assert ok and why is None


def test_verify_reflexive_absorbs_constant_map():
    g = OrientedGraph(2, [(0, 1)])
    ok, _ = verify_colouring(g, T4, (0, 0), Mode.IOS)
    assert ok


def test_verify_reports_injectivity_violation():
    # two in-neighbours of vertex 2 both coloured a
    g = OrientedGraph(3, [(0, 2), (1, 2)])
    ok, why = verify_colouring(g, T4, (0, 0, 1), Mode.IN)
    assert not ok and "in-neighbourhood of 2" in why


def test_verify_reports_arc_violation():
    g = OrientedGraph(2, [(0, 1)])
    ok, why = verify_colouring(g, C3, (0, 2), Mode.IOS)  # a->c is not a C3 arc
    assert not ok and "arc (0, 1)" in why


def test_verify_partial_rejected():
    with pytest.raises(PartialColouring):
        verify_colouring(THREE_CYCLE, C3, {0: 0, 1: 1}, Mode.IOS)
    with pytest.raises(PartialColouring):
        verify_colouring(THREE_CYCLE, C3, (0, 1), Mode.IOS)


# -- decide ------------------------------------------------------------------


def test_decide_out_star_pigeonhole():
    star = OrientedGraph(5, [(0, i) for i in range(1, 5)])
    res = decide(star, T4, Mode.IOS)
    assert res.status == "unsat"


def test_decide_single_vertex():
    g = OrientedGraph(1)
    for t in (C3, TT3, T4, T5):
        for mode in MODES:
            assert decide(g, t, mode).sat


def test_decide_hx_forced_values():
    hx = load_gadget("Hx")
    res = decide(hx.graph, T4, Mode.IOS)
    assert res.sat
    w = res.witnesses[0]
    assert w[3] == w[13] == w[23] == 0  # colour a
    assert w[31] == 3  # colour d


def test_decide_fixed_validation():
    g = OrientedGraph(2, [(0, 1)])
    with pytest.raises(InvalidFixedAssignment):
        decide(g, C3, Mode.IOS, fixed={0: 0, 1: 2})  # a->c not an arc
    with pytest.raises(InvalidFixedAssignment):
        decide(g, C3, Mode.IOS, fixed={0: 7})
    sibs = OrientedGraph(3, [(0, 2), (1, 2)])
    with pytest.raises(InvalidFixedAssignment):
        decide(sibs, T4, Mode.IN, fixed={0: 1, 1: 1})


def test_decide_budget_exhaustion():
    g = _random_graph(random.Random(1), 6)
    res = decide(g, T5, Mode.IN, node_budget=1)
    assert res.status in ("budget_exhausted", "sat")
    res0 = decide(g, T5, Mode.IN, node_budget=0)
    assert res0.status == "budget_exhausted" and not res0.complete


# -- enumerate ---------------------------------------------------------------


def test_enumerate_single_vertex_c3():
    res = enumerate_colourings(OrientedGraph(1), C3, Mode.IOS)
    assert res.witnesses == [(0,), (1,), (2,)]


def test_enumerate_single_arc_c3():
    # brute force over the 9 maps: the three "reversed" pairs break arc
    # preservation, leaving 6 witnesses
    g = OrientedGraph(2, [(0, 1)])
    ref = naive_witnesses(g, C3, Mode.IOS)
    assert len(ref) == 6
    res = enumerate_colourings(g, C3, Mode.IOS)
    assert res.witnesses == ref


def test_enumerate_matches_naive_filter():
    rng = random.Random(2024)
    for _ in range(80):
        g = _random_graph(rng, rng.randint(0, 5))
        for t in (C3, TT3, T4, T5):
            for mode in MODES:
                assert (
                    enumerate_colourings(g, t, mode).witnesses
                    == naive_witnesses(g, t, mode)
                )


def test_enumerate_limit_is_lex_prefix():
    g = OrientedGraph(1)
    res = enumerate_colourings(g, T5, Mode.IOS, limit=2)
    assert res.witnesses == [(0,), (1,)] and not res.complete


def test_mode_monotonicity_random():
    rng = random.Random(77)
    for _ in range(60):
        g = _random_graph(rng, rng.randint(1, 5))
        for t in (C3, T4, T5):
            w_in = set(enumerate_colourings(g, t, Mode.IN).witnesses)
            w_ios = set(enumerate_colourings(g, t, Mode.IOS).witnesses)
            w_iot = set(enumerate_colourings(g, t, Mode.IOT).witnesses)
            assert w_iot <= w_ios <= w_in


def test_automorphism_closure():
    rng = random.Random(99)
    for _ in range(20):
        g = _random_graph(rng, 4)
        wits = set(enumerate_colourings(g, T5, Mode.IOS).witnesses)
        for pi in T5.automorphisms():
            for w in wits:
                assert tuple(pi[c] for c in w) in wits


def test_every_witness_verifies():
    rng = random.Random(5)
    for _ in range(40):
        g = _random_graph(rng, rng.randint(1, 5))
        for mode in MODES:
            for w in enumerate_colourings(g, T4, mode).witnesses:
                ok, why = verify_colouring(g, T4, w, mode)
                assert ok, why


def test_determinism():
    g = _random_graph(random.Random(3), 5)
    a = enumerate_colourings(g, T4, Mode.IOS)
    b = enumerate_colourings(g, T4, Mode.IOS)
    assert a.witnesses == b.witnesses
    assert repr(a.witnesses) == repr(b.witnesses)


def test_empty_instance():
    g = OrientedGraph(0)
    assert decide(g, T4, Mode.IOS).sat
    assert enumerate_colourings(g, T4, Mode.IOS).witnesses == [()]


# -- enumerate_mod_aut -------------------------------------------------------


def test_mod_aut_vertex_transitive_target():
    res = enumerate_mod_aut(OrientedGraph(1), T5, Mode.IOS)
    assert res.orbits == 1


def test_mod_aut_trivial_group():
    res = enumerate_mod_aut(OrientedGraph(1), TT3, Mode.IOS)
    assert res.orbits == 3


def test_mod_aut_orbit_sizes_sum():
    rng = random.Random(11)
    for _ in range(20):
        g = _random_graph(rng, rng.randint(1, 4))
        full = set(enumerate_colourings(g, T5, Mode.IOS).witnesses)
        reps = enumerate_mod_aut(g, T5, Mode.IOS).witnesses
        auts = T5.automorphisms()
        orbit_union = set()
        for w in reps:
            orbit_union |= {tuple(pi[c] for c in w) for pi in auts}
        assert orbit_union == full


def test_solve_options_dispatch():
    g = OrientedGraph(1)
    assert solve(g, C3, SolveOptions(mode=Mode.IOS)).sat
    assert len(solve(g, C3, SolveOptions(mode=Mode.IOS, limit=10)).witnesses) == 3
    assert solve(g, T5, SolveOptions(mode=Mode.IOS, mod_aut=True)).orbits == 1
