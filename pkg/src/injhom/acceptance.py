"""The acceptance battery: every gate criterion as a callable check.

Each criterion returns a CriterionResult; run_all executes them in order and
is what both `injhom selfcheck` and tests/test_acceptance.py drive.  All
randomized batteries are seeded (DEFAULT_SEED) and deterministic.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .catalog import (
    canonical_form,
    degree_profile,
    enumerate_reflexive_tournaments,
    is_vertex_transitive,
    named_target,
)
from .digraph import MODES, Mode, OrientedGraph, is_strongly_connected
from .gadgets import ALL_LEMMAS, ASSET_NAMES, lemma_reports, load_gadget, verify_gadget
from .naive import naive_witnesses
from .poly import decide_small_target
from .reductions import (
    UndirectedGraph,
    build_ios_collapse,
    build_ios_t4,
    build_iot_collapse,
    build_iot_t4,
    build_ios_t5,
    build_iot_t5,
    extract_edge_colouring,
    is_proper_edge_colouring,
    lift_colouring,
    three_edge_colouring_oracle,
)
from .solver import decide, enumerate_colourings, verify_colouring

DEFAULT_SEED = 2018

BATTERY_TARGETS = ("C3", "TT3", "T4", "T5")


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.name} ({self.seconds:.1f}s) {self.detail}"


def _timed(number: int, name: str, fn) -> CriterionResult:
    start = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failure, not an abort
        passed, detail = False, f"exception: {exc!r}"
    return CriterionResult(number, name, passed, detail, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# instance generators
# ---------------------------------------------------------------------------


def all_oriented_graphs(n: int):
    """Every oriented graph on n labelled vertices (loops included)."""
    pairs = list(itertools.combinations(range(n), 2))
    for loops in itertools.product((False, True), repeat=n):
        base = [(v, v) for v in range(n) if loops[v]]
        for states in itertools.product((0, 1, 2), repeat=len(pairs)):
            arcs = list(base)
            for (u, v), s in zip(pairs, states):
                if s == 1:
                    arcs.append((u, v))
                elif s == 2:
                    arcs.append((v, u))
            yield OrientedGraph(n, arcs)


def random_oriented_graph(rng: random.Random, n: int, arc_p: float = 0.35,
                          loop_p: float = 0.15) -> OrientedGraph:
    arcs = []
    for u in range(n):
        if rng.random() < loop_p:
            arcs.append((u, u))
        for v in range(u + 1, n):
            r = rng.random()
            if r < arc_p:
                arcs.append((u, v))
            elif r < 2 * arc_p:
                arcs.append((v, u))
    return OrientedGraph(n, arcs)


@lru_cache(maxsize=None)
def subcubic_graphs_upto_iso(n: int) -> tuple[UndirectedGraph, ...]:
    """All simple graphs on n vertices with max degree <= 3, one per iso class."""
    pairs = list(itertools.combinations(range(n), 2))
    k = len(pairs)
    if k == 0:
        return (UndirectedGraph(n),)
    masks = np.arange(1 << k, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(k)[::-1]) & 1).astype(np.uint8)
    inc = np.zeros((k, n), dtype=np.uint8)
    for i, (u, v) in enumerate(pairs):
        inc[i, u] = inc[i, v] = 1
    degrees = bits @ inc.astype(np.int64)
    bits = bits[(degrees <= 3).all(axis=1)]
    # canonicalize: minimal edge bit-string over all vertex permutations
    perms = list(itertools.permutations(range(n)))
    pair_index = {p: i for i, p in enumerate(pairs)}
    weights = (1 << np.arange(k, dtype=np.int64))[::-1]
    best = None
    for pi in perms:
        idx = np.array(
            [pair_index[tuple(sorted((pi[u], pi[v])))] for u, v in pairs],
            dtype=np.int64,
        )
        vals = bits[:, idx].astype(np.int64) @ weights
        best = vals if best is None else np.minimum(best, vals)
    graphs = []
    for value in np.unique(best):
        edges = [pairs[i] for i in range(k) if (int(value) >> (k - 1 - i)) & 1]
        graphs.append(UndirectedGraph(n, edges))
    return tuple(graphs)


def petersen_graph() -> UndirectedGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return UndirectedGraph(10, outer + inner + spokes)


# ---------------------------------------------------------------------------
# shared solver-vs-oracle battery (feeds criteria 4 and 5)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _solver_battery(seed: int) -> tuple[bool, str, bool, str]:
    rng = random.Random(seed)
    instances = []
    for n in range(0, 5):
        instances.extend(all_oriented_graphs(n))
    exhaustive = len(instances)
    for _ in range(200):
        instances.append(random_oriented_graph(rng, rng.choice((5, 6))))
    targets = [named_target(name) for name in BATTERY_TARGETS]

    checked = 0
    for g in instances:
        for t in targets:
            sets = {}
            for mode in MODES:
                ref = naive_witnesses(g, t, mode)
                res = enumerate_colourings(g, t, mode)
                if res.witnesses != ref:
                    return (
                        False,
                        f"witness mismatch on {g!r} vs {t.name} ({mode.value})",
                        False,
                        "not evaluated",
                    )
                d = decide(g, t, mode)
                if d.sat != bool(ref):
                    return (
                        False,
                        f"decide mismatch on {g!r} vs {t.name} ({mode.value})",
                        False,
                        "not evaluated",
                    )
                sets[mode] = set(res.witnesses)
                checked += 1
            if not (sets[Mode.IOT] <= sets[Mode.IOS] <= sets[Mode.IN]):
                return (
                    True,
                    f"{checked} checks",
                    False,
                    f"mode nesting fails on {g!r} vs {t.name}",
                )
    detail = (
        f"{checked} solver/oracle comparisons "
        f"({exhaustive} exhaustive graphs + 200 random)"
    )
    return True, detail, True, detail


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def criterion_1() -> CriterionResult:
    def run():
        counts = [len(enumerate_reflexive_tournaments(n)) for n in range(1, 6)]
        if counts != [1, 1, 2, 4, 12]:
            return False, f"counts {counts}"
        if counts[3] + counts[4] != 16:
            return False, "4+5 vertex total is not 16"
        return True, f"counts 1..5 = {counts}, 4- and 5-vertex total 16"

    return _timed(1, "reflexive tournament catalog counts", run)


def criterion_2() -> CriterionResult:
    def run():
        four = enumerate_reflexive_tournaments(4)
        strong = [t for t in four if is_strongly_connected(t.graph)]
        if len(strong) != 1:
            return False, f"{len(strong)} strongly connected 4-vertex tournaments"
        if canonical_form(strong[0]) != canonical_form(named_target("T4")):
            return False, "strongly connected 4-vertex tournament is not T4"
        five = enumerate_reflexive_tournaments(5)
        regular = [
            t
            for t in five
            if set(degree_profile(t).in_degrees) == {3}
            and set(degree_profile(t).out_degrees) == {3}
        ]
        if len(regular) != 1:
            return False, f"{len(regular)} degree-(3,3) 5-vertex tournaments"
        if canonical_form(regular[0]) != canonical_form(named_target("T5")):
            return False, "degree-(3,3) 5-vertex tournament is not T5"
        six = enumerate_reflexive_tournaments(6)
        if len(six) != 56:
            return False, f"{len(six)} tournaments on 6 vertices"
        low = [t for t in six if not degree_profile(t).high_vertices]
        if low:
            return False, f"{len(low)} 6-vertex tournaments without degree-4 vertex"
        return True, "T4/T5 unique as described; all 56 6-vertex tournaments have one"

    return _timed(2, "T4/T5 uniqueness and 6-vertex degree facts", run)


def criterion_3() -> CriterionResult:
    def run():
        t5 = named_target("T5")
        auts = t5.automorphisms()
        if len(auts) != 5:
            return False, f"|Aut(T5)| = {len(auts)}"
        if not is_vertex_transitive(t5):
            return False, "T5 not vertex-transitive"
        if not any(pi[0] == 2 and pi[2] == 4 for pi in auts):
            return False, "no automorphism with a->c and c->e"
        return True, "|Aut(T5)| = 5, vertex-transitive, contains a->c, c->e"

    return _timed(3, "T5 automorphism group", run)


def criterion_4(seed: int = DEFAULT_SEED) -> CriterionResult:
    def run():
        ok4, d4, _, _ = _solver_battery(seed)
        return ok4, d4

    return _timed(4, "solver equals the naive filter", run)


def criterion_5(seed: int = DEFAULT_SEED) -> CriterionResult:
    def run():
        _, _, ok5, d5 = _solver_battery(seed)
        return ok5, d5

    return _timed(5, "mode monotonicity iot <= ios <= in", run)


def criterion_6() -> CriterionResult:
    def run():
        failures = []
        total = 0
        for lemma in ALL_LEMMAS:
            for report in lemma_reports(lemma):
                total += 1
                if not report.passed:
                    failures.append(f"lemma {lemma} / {report.subject}")
        for name in ASSET_NAMES:
            report = verify_gadget(load_gadget(name))
            total += 1
            if not report.passed:
                failures.append(f"asset {name}")
        if failures:
            return False, "; ".join(failures)
        return True, f"{total} contract verifications, all by full enumeration"

    return _timed(6, "gadget contracts (lemmas 3.1-4.5)", run)


def criterion_7(quick: bool = False) -> CriterionResult:
    def run():
        cases = 0
        for n in range(1, 7):
            for g in subcubic_graphs_upto_iso(n):
                want = three_edge_colouring_oracle(g) is not None
                for build, mode in ((build_ios_t4, Mode.IOS), (build_iot_t4, Mode.IOT)):
                    ri = build(g)
                    got = decide(ri.graph, ri.target, ri.mode).sat
                    if got != want:
                        return False, (
                            f"{ri.kind} disagrees with the oracle on {g!r}"
                        )
                    cases += 1
        detail = f"{cases} reduction instances vs oracle"
        if not quick:
            pet = petersen_graph()
            if three_edge_colouring_oracle(pet) is not None:
                return False, "oracle 3-colours the Petersen graph"
            for build in (build_ios_t4, build_iot_t4):
                ri = build(pet)
                if decide(ri.graph, ri.target, ri.mode).sat:
                    return False, f"{ri.kind} instance for Petersen is satisfiable"
            detail += "; Petersen unsat on both reductions"
        return True, detail

    return _timed(7, "3-edge-colouring reduction equivalence", run)


def criterion_8(seed: int = DEFAULT_SEED) -> CriterionResult:
    def run():
        rng = random.Random(seed + 8)
        c3 = named_target("C3")
        for i in range(100):
            g = random_oriented_graph(rng, rng.randint(1, 5))
            for build, mode in ((build_ios_t5, Mode.IOS), (build_iot_t5, Mode.IOT)):
                want = decide(g, c3, mode).sat
                ri = build(g)
                got = decide(ri.graph, ri.target, ri.mode).sat
                if got != want:
                    return False, f"{ri.kind} disagrees on {g!r}"
        return True, "100 random graphs, ios and iot lifts agree with C3"

    return _timed(8, "C3 -> T5 reduction equivalence", run)


def criterion_9(seed: int = DEFAULT_SEED) -> CriterionResult:
    def run():
        rng = random.Random(seed + 9)
        tt5 = named_target("TT5")
        tt4 = named_target("TT4")
        configs = [(0, "out"), (4, "in")]  # source pivot and sink pivot
        for i in range(100):
            g = random_oriented_graph(rng, rng.randint(1, 4))
            for pivot, direction in configs:
                for build, mode in (
                    (build_ios_collapse, Mode.IOS),
                    (build_iot_collapse, Mode.IOT),
                ):
                    want = decide(g, tt4, mode).sat
                    ri = build(g, tt5, pivot, direction)
                    got = decide(ri.graph, ri.target, ri.mode).sat
                    if got != want:
                        return False, (
                            f"{ri.kind} pivot={pivot} dir={direction} disagrees on {g!r}"
                        )
        return True, "100 random graphs, source/out and sink/in pivots, both modes"

    return _timed(9, "collapse reduction equivalence (TT5 -> TT4)", run)


def criterion_10(seed: int = DEFAULT_SEED) -> CriterionResult:
    def run():
        rng = random.Random(seed + 10)
        targets = [named_target("TT1"), named_target("TT2")]
        checked = 0
        for n in range(0, 5):
            for g in all_oriented_graphs(n):
                for t in targets:
                    for mode in MODES:
                        fast = decide_small_target(g, t, mode)
                        slow = decide(g, t, mode)
                        if fast.sat != slow.sat:
                            return False, f"disagree on {g!r} vs {t.name} {mode.value}"
                        if fast.sat:
                            ok, why = verify_colouring(g, t, fast.witnesses[0], mode)
                            if not ok:
                                return False, f"invalid witness: {why}"
                        checked += 1
        for _ in range(500):
            g = random_oriented_graph(rng, rng.randint(5, 10))
            for t in targets:
                for mode in MODES:
                    fast = decide_small_target(g, t, mode)
                    slow = decide(g, t, mode)
                    if fast.sat != slow.sat:
                        return False, f"disagree on {g!r} vs {t.name} {mode.value}"
                    checked += 1
        return True, f"{checked} comparisons (exhaustive <=4 plus 500 random <=10)"

    return _timed(10, "poly decider agrees with the search solver", run)


def criterion_11() -> CriterionResult:
    def run():
        k3 = UndirectedGraph(3, [(0, 1), (0, 2), (1, 2)])
        k4 = UndirectedGraph(4, list(itertools.combinations(range(4), 2)))
        for g in (k3, k4):
            base = three_edge_colouring_oracle(g)
            if base is None:
                return False, "oracle failed on a complete graph"
            for build in (build_ios_t4, build_iot_t4):
                ri = build(g)
                res = enumerate_colourings(ri.graph, ri.target, ri.mode)
                if not res.witnesses:
                    return False, f"{ri.kind} instance unexpectedly unsat"
                for w in res.witnesses:
                    ec = extract_edge_colouring(ri, w)
                    if not is_proper_edge_colouring(g, ec):
                        return False, f"{ri.kind}: extracted colouring improper"
                lifted = lift_colouring(ri, base)
                ok, why = verify_colouring(ri.graph, ri.target, lifted, ri.mode)
                if not ok:
                    return False, f"{ri.kind}: lifted colouring invalid ({why})"
                if extract_edge_colouring(ri, lifted) != base:
                    return False, f"{ri.kind}: extract(lift) is not the identity"
        return True, "K3/K4 witnesses project properly; lift/extract round-trips"

    return _timed(11, "projection and lift round-trips", run)


CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
)


def run_all(quick: bool = False, seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    results = []
    for fn in CRITERIA:
        if fn is criterion_7:
            results.append(criterion_7(quick=quick))
        elif fn in (criterion_4, criterion_5, criterion_8, criterion_9, criterion_10):
            results.append(fn(seed=seed))
        else:
            results.append(fn())
    return results
