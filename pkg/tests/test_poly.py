import itertools
import random

import pytest

from injhom.catalog import named_target
from injhom.digraph import MODES, Mode, OrientedGraph
from injhom.errors import TargetTooLarge
from injhom.poly import TwoSatInstance, decide_small_target, twosat_solve
from injhom.solver import decide, verify_colouring

TT1 = named_target("TT1")
TT2 = named_target("TT2")


def _brute_twosat(ins):
    for bits in itertools.product((False, True), repeat=ins.nvars):
        ok = True
        for a, b in ins.clauses:
            va = bits[abs(a) - 1] == (a > 0)
            vb = bits[abs(b) - 1] == (b > 0)
            if not (va or vb):
                ok = False
                break
        if ok:
            return True
    return False


def test_twosat_empty_all_false():
    assert twosat_solve(TwoSatInstance(3, ())) == [False, False, False]


def test_twosat_forced_contradiction():
    assert twosat_solve(TwoSatInstance(1, ((1, 1), (-1, -1)))) is None


def test_twosat_duplicate_clause_rejected():
    with pytest.raises(ValueError):
        TwoSatInstance(1, ((1, 1), (1, 1)))
    with pytest.raises(ValueError):
        TwoSatInstance(1, ((2, 1),))


def test_twosat_random_vs_brute_force():
    rng = random.Random(10)
    for _ in range(200):
        nvars = 10
        clauses = set()
        for _ in range(rng.randint(0, 25)):
            a = rng.choice([1, -1]) * rng.randint(1, nvars)
            b = rng.choice([1, -1]) * rng.randint(1, nvars)
            clauses.add((a, b))
        ins = TwoSatInstance(nvars, tuple(sorted(clauses)))
        got = twosat_solve(ins)
        want = _brute_twosat(ins)
        assert (got is not None) == want
        if got is not None:
            for a, b in ins.clauses:
                va = got[abs(a) - 1] == (a > 0)
                vb = got[abs(b) - 1] == (b > 0)
                assert va or vb


def test_small_target_path_single_colour():
    path = OrientedGraph(3, [(0, 1), (1, 2)])
    assert decide_small_target(path, TT1, Mode.IOS).sat


def test_small_target_in_star_pigeonhole():
    star = OrientedGraph(3, [(1, 0), (2, 0)])
    assert not decide_small_target(star, TT1, Mode.IN).sat


def test_small_target_too_large():
    with pytest.raises(TargetTooLarge):
        decide_small_target(OrientedGraph(1), named_target("TT3"), Mode.IOS)
    with pytest.raises(TargetTooLarge):
        from injhom.catalog import Target
        decide_small_target(OrientedGraph(1), Target(OrientedGraph(2)), Mode.IOS)


def test_small_target_agrees_with_solver_random():
    rng = random.Random(17)
    for _ in range(250):
        n = rng.randint(0, 7)
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
        g = OrientedGraph(n, arcs)
        for t in (TT1, TT2):
            for mode in MODES:
                fast = decide_small_target(g, t, mode)
                assert fast.sat == decide(g, t, mode).sat
                if fast.sat:
                    ok, why = verify_colouring(g, t, fast.witnesses[0], mode)
                    assert ok, why


def test_small_target_scales_along_a_size_ladder():
    # clause growth is quadratic in degrees, so the 1k and 10k rungs must
    # both finish comfortably (smoke check, no timing assertions)
    for n in (1_000, 10_000):
        g = OrientedGraph(n, [(i, i + 1) for i in range(n - 1)])
        res = decide_small_target(g, TT2, Mode.IOS)
        assert res.sat
        ok, _ = verify_colouring(g, TT2, res.witnesses[0], Mode.IOS)
        assert ok
