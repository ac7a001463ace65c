"""Gadgets as verified data assets.

Each gadget ships as two files in the asset directory (overridable through
the INJHOM_ASSET_DIR environment variable):

  <name>.graph       edge-list format with `port <name> <vertex>` lines
  <name>.contract    the machine-checkable content of its forced-colouring
                     lemma, one fact per line:

                         target T4
                         mode ios
                         anchor 0 a
                         nonempty
                         forced 31 d
                         equal 0 9
                         range 0 b,c,d
                         extends 1=b,11=c,21=d

Contract verification is oracle grade: it enumerates the complete witness set
(node-budget checked, never the pruned decide path) and evaluates every fact
against it.  FORCED/EQUAL/RANGE facts additionally require a nonempty witness
set, so they can never pass vacuously.  EXTENDS facts are checked by decide
with the stated partial colouring fixed; the contract anchor is deliberately
not added to EXTENDS partials (a partial assignment already breaks the
symmetry the anchor relies on).

When a contract carries an anchor, the witness set is enumerated with the
anchor fixed.  That is the `enumerate modulo automorphisms` semantics for the
vertex-transitive targets the anchored lemmas use, at a fifth of the cost;
vertex-transitivity is checked.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .catalog import colour_letter, is_vertex_transitive, named_target, parse_colour
from .digraph import Mode, OrientedGraph, disjoint_union, identify_vertices, parse_document
from .errors import AssetMissing, ContractMalformed, SynthesisNotFound, UnknownPort
from .solver import _Engine, decide, verify_colouring

ASSET_NAMES = ("Hx", "He", "Fx", "Fe", "Jv", "Dv")

Fact = tuple  # ("nonempty",) | ("forced", v, c) | ("equal", u, v) | ("range", v, frozenset) | ("extends", dict)


@dataclass(frozen=True)
class Contract:
    target: str
    mode: Mode
    anchor: tuple[int, int] | None
    facts: tuple[Fact, ...]


@dataclass
class GadgetSpec:
    name: str
    graph: OrientedGraph
    ports: dict[str, int]
    contract: Contract
    provenance: str = "reconstructed"

    def port(self, name: str) -> int:
        if name not in self.ports:
            raise UnknownPort(f"gadget {self.name} has no port {name!r}")
        return self.ports[name]


def asset_dir() -> Path:
    env = os.environ.get("INJHOM_ASSET_DIR")
    if env:
        return Path(env)
    return Path(__file__).parent / "assets"


def parse_contract(text: str) -> Contract:
    target_name: str | None = None
    mode: Mode | None = None
    anchor: tuple[int, int] | None = None
    facts: list[Fact] = []
    tn: int | None = None

    def colour(tok: str) -> int:
        if tn is None:
            raise ContractMalformed("colour before target line")
        return parse_colour(tok, tn)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "target" and len(parts) == 2:
                target_name = parts[1]
                tn = named_target(target_name).graph.n
            elif parts[0] == "mode" and len(parts) == 2:
                mode = Mode.parse(parts[1])
            elif parts[0] == "anchor" and len(parts) == 3:
                anchor = (int(parts[1]), colour(parts[2]))
            elif parts[0] == "nonempty" and len(parts) == 1:
                facts.append(("nonempty",))
            elif parts[0] == "forced" and len(parts) == 3:
                facts.append(("forced", int(parts[1]), colour(parts[2])))
            elif parts[0] == "equal" and len(parts) == 3:
                facts.append(("equal", int(parts[1]), int(parts[2])))
            elif parts[0] == "range" and len(parts) == 3:
                cols = frozenset(colour(tok) for tok in parts[2].split(","))
                facts.append(("range", int(parts[1]), cols))
            elif parts[0] == "extends" and len(parts) == 2:
                partial = {}
                for item in parts[1].split(","):
                    v, _, c = item.partition("=")
                    vid = int(v)
                    if vid in partial and partial[vid] != colour(c):
                        raise ValueError(f"vertex {vid} pre-coloured twice")
                    partial[vid] = colour(c)
                facts.append(("extends", partial))
            else:
                raise ValueError("unrecognised")
        except (ValueError, KeyError) as exc:
            raise ContractMalformed(f"line {lineno}: {line!r} ({exc})")
    if target_name is None or mode is None:
        raise ContractMalformed("contract needs target and mode lines")
    return Contract(target=target_name, mode=mode, anchor=anchor, facts=tuple(facts))


def serialize_contract(contract: Contract) -> str:
    tn = named_target(contract.target).graph.n

    def letter(c: int) -> str:
        return colour_letter(c) if tn <= 26 else str(c)

    lines = [f"target {contract.target}", f"mode {contract.mode.value}"]
    if contract.anchor is not None:
        lines.append(f"anchor {contract.anchor[0]} {letter(contract.anchor[1])}")
    for fact in contract.facts:
        kind = fact[0]
        if kind == "nonempty":
            lines.append("nonempty")
        elif kind == "forced":
            lines.append(f"forced {fact[1]} {letter(fact[2])}")
        elif kind == "equal":
            lines.append(f"equal {fact[1]} {fact[2]}")
        elif kind == "range":
            lines.append(f"range {fact[1]} {','.join(letter(c) for c in sorted(fact[2]))}")
        elif kind == "extends":
            items = ",".join(f"{v}={letter(c)}" for v, c in sorted(fact[1].items()))
            lines.append(f"extends {items}")
        else:
            raise ContractMalformed(f"unknown fact kind {kind!r}")
    return "\n".join(lines)


def load_gadget(name: str, directory: Path | None = None) -> GadgetSpec:
    base = Path(directory) if directory is not None else asset_dir()
    graph_path = base / f"{name}.graph"
    contract_path = base / f"{name}.contract"
    if not graph_path.is_file():
        raise AssetMissing(f"no gadget asset {graph_path}")
    if not contract_path.is_file():
        raise AssetMissing(f"no contract sidecar {contract_path}")
    graph, ports = parse_document(graph_path.read_text())
    contract = parse_contract(contract_path.read_text())
    if len(set(ports.values())) != len(ports):
        raise ContractMalformed(f"gadget {name}: ports must name distinct vertices")
    if contract.anchor is not None and not 0 <= contract.anchor[0] < graph.n:
        raise ContractMalformed(f"gadget {name}: anchor vertex out of range")
    for fact in contract.facts:
        refs = []
        if fact[0] in ("forced", "range"):
            refs = [fact[1]]
        elif fact[0] == "equal":
            refs = list(fact[1:3])
        elif fact[0] == "extends":
            refs = list(fact[1].keys())
        for v in refs:
            if not 0 <= v < graph.n:
                raise ContractMalformed(
                    f"gadget {name}: contract references vertex {v} outside 0..{graph.n - 1}"
                )
    return GadgetSpec(name=name, graph=graph, ports=ports, contract=contract)


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------

ScopeMap = dict[tuple[int, int], int]  # (copy index, original vertex) -> final id


def compose(
    specs: Sequence[GadgetSpec],
    identifications: Sequence[tuple[tuple[int, str], tuple[int, str]]] = (),
) -> tuple[OrientedGraph, ScopeMap]:
    """Disjoint union of gadget copies, then identify ports pairwise.

    Each identification ((i, port_a), (j, port_b)) merges port_b of copy j
    into port_a of copy i.  The scope map sends (copy, original vertex) to
    the vertex id in the composed graph.
    """
    union, offsets = disjoint_union([s.graph for s in specs])
    pairs = []
    for (i, pa), (j, pb) in identifications:
        pairs.append((offsets[i] + specs[i].port(pa), offsets[j] + specs[j].port(pb)))
    merged, relabel = identify_vertices(union, pairs)
    scope: ScopeMap = {}
    for i, spec in enumerate(specs):
        for v in range(spec.graph.n):
            scope[(i, v)] = relabel[offsets[i] + v]
    return merged, scope


def ring(
    spec: GadgetSpec, copies: int, out_ports: Sequence[str], in_port: str
) -> tuple[OrientedGraph, ScopeMap]:
    """Cyclic composition: each copy's out ports feed the next copy's in port."""
    union, offsets = disjoint_union([spec.graph] * copies)
    arcs = set(union.arcs)
    for i in range(copies):
        nxt = offsets[(i + 1) % copies] + spec.port(in_port)
        for p in out_ports:
            arcs.add((offsets[i] + spec.port(p), nxt))
    graph = OrientedGraph(union.n, arcs)
    scope: ScopeMap = {
        (i, v): offsets[i] + v for i in range(copies) for v in range(spec.graph.n)
    }
    return graph, scope


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


@dataclass
class FactReport:
    fact: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    subject: str
    target: str
    mode: str
    facts: list[FactReport]
    witness_count: int
    complete: bool
    counterexample: tuple[int, ...] | None = None

    @property
    def passed(self) -> bool:
        return self.complete and all(f.passed for f in self.facts)

    def lines(self) -> list[str]:
        out = [
            f"{self.subject}: {self.witness_count} witnesses"
            + ("" if self.complete else " (BUDGET EXHAUSTED, inconclusive)")
        ]
        for f in self.facts:
            status = "pass" if f.passed else "FAIL"
            detail = f" ({f.detail})" if f.detail else ""
            out.append(f"  [{status}] {f.fact}{detail}")
        return out


def _fact_label(fact: Fact, tn: int) -> str:
    kind = fact[0]
    if kind == "nonempty":
        return "nonempty"
    if kind == "forced":
        return f"forced {fact[1]} = {colour_letter(fact[2])}"
    if kind == "equal":
        return f"equal {fact[1]} {fact[2]}"
    if kind == "range":
        return f"range {fact[1]} in {{{','.join(sorted(colour_letter(c) for c in fact[2]))}}}"
    if kind == "extends":
        items = ",".join(f"{v}={colour_letter(c)}" for v, c in sorted(fact[1].items()))
        return f"extends {items}"
    return repr(fact)


def verify_contract(
    graph: OrientedGraph,
    contract: Contract,
    scope: Mapping[int, int] | None = None,
    subject: str = "gadget",
    node_budget: int | None = 50_000_000,
) -> VerificationReport:
    """Enumerate every valid colouring and evaluate the contract facts.

    `scope` optionally remaps the vertex ids the facts mention (used when the
    contract of a gadget is checked inside a composition).
    """
    target = named_target(contract.target)
    mode = contract.mode

    def resolve(v: int) -> int:
        return scope[v] if scope is not None else v

    fixed = None
    if contract.anchor is not None:
        if not is_vertex_transitive(target):
            raise ContractMalformed(
                f"anchored contract needs a vertex-transitive target, {contract.target} is not"
            )
        fixed = {resolve(contract.anchor[0]): contract.anchor[1]}

    eng = _Engine(graph, target, mode, fixed)
    witnesses: list[tuple[int, ...]] = []
    for w in eng.run(static_order=True, node_budget=node_budget):
        witnesses.append(w)
    complete = not eng.exhausted

    reports: list[FactReport] = []
    counterexample = None

    def record_counterexample(w):
        nonlocal counterexample
        if counterexample is None:
            ok, _ = verify_colouring(graph, target, w, mode)
            assert ok, "solver produced an invalid witness"
            counterexample = w

    for fact in contract.facts:
        kind = fact[0]
        label = _fact_label(fact, target.graph.n)
        if kind == "nonempty":
            reports.append(
                FactReport(label, bool(witnesses), "" if witnesses else "no colourings")
            )
            continue
        if kind == "extends":
            partial = {resolve(v): c for v, c in fact[1].items()}
            res = decide(graph, target, mode, fixed=partial, node_budget=node_budget)
            reports.append(
                FactReport(label, res.sat, "" if res.sat else f"decide: {res.status}")
            )
            continue
        if not witnesses:
            reports.append(FactReport(label, False, "vacuous: witness set empty"))
            continue
        if kind == "forced":
            v, c = resolve(fact[1]), fact[2]
            bad = next((w for w in witnesses if w[v] != c), None)
        elif kind == "equal":
            u, v = resolve(fact[1]), resolve(fact[2])
            bad = next((w for w in witnesses if w[u] != w[v]), None)
        elif kind == "range":
            v, allowed = resolve(fact[1]), fact[2]
            bad = next((w for w in witnesses if w[v] not in allowed), None)
        else:
            raise ContractMalformed(f"unknown fact kind {kind!r}")
        if bad is not None:
            record_counterexample(bad)
            reports.append(FactReport(label, False, f"violated by witness {bad}"))
        else:
            reports.append(FactReport(label, True))

    return VerificationReport(
        subject=subject,
        target=contract.target,
        mode=mode.value,
        facts=reports,
        witness_count=len(witnesses),
        complete=complete,
        counterexample=counterexample,
    )


def verify_gadget(spec: GadgetSpec, node_budget: int | None = 50_000_000) -> VerificationReport:
    return verify_contract(
        spec.graph, spec.contract, subject=spec.name, node_budget=node_budget
    )


# ---------------------------------------------------------------------------
# the lemma registry: which compositions realize which forced-colouring lemma
# ---------------------------------------------------------------------------

ALL_LEMMAS = ("3.1", "3.2", "3.4", "4.1", "4.2", "4.3", "4.5")

_SQUARES_H = ("s1", "s2", "s3")
_SQUARES_F = ("s1", "s2", "s3")


def lemma_reports(lemma: str, directory: Path | None = None) -> list[VerificationReport]:
    """Run the contract checks realizing one forced-colouring lemma."""
    bcd = frozenset({1, 2, 3})
    out: list[VerificationReport] = []

    if lemma == "3.1":
        out.append(verify_gadget(load_gadget("Hx", directory)))
    elif lemma == "3.2":
        he = load_gadget("He", directory)
        hx = load_gadget("Hx", directory)
        for sa in _SQUARES_H:
            for sb in _SQUARES_H:
                graph, scope = compose(
                    [he, hx, hx], [((1, sa), (0, "e0")), ((2, sb), (0, "e9"))]
                )
                contract = Contract(
                    "T4",
                    Mode.IOS,
                    None,
                    (
                        ("nonempty",),
                        ("equal", scope[(0, 0)], scope[(0, 9)]),
                        ("range", scope[(0, 0)], bcd),
                    ),
                )
                out.append(
                    verify_contract(graph, contract, subject=f"He'[{sa},{sb}]")
                )
    elif lemma == "3.4":
        jv = load_gadget("Jv", directory)
        chain = {4: 2, 8: 4, 12: 1, 16: 3}  # c, e, b, d under anchor 0 = a
        for copies in (2, 3):
            graph, scope = ring(jv, copies, ("out17", "out18", "out19"), "in0")
            facts: list[Fact] = [("nonempty",)]
            for i in range(copies):
                if i > 0:
                    facts.append(("forced", scope[(i, 0)], 0))
                facts.extend(("forced", scope[(i, v)], c) for v, c in chain.items())
            # forward-direction pre-colourings: the attachment vertex of copy 0
            # can take each colour that feeds b, d and e to an attached vertex
            for c11 in (0, 1, 2):
                facts.append(("extends", {scope[(0, 8)]: 0, scope[(0, 11)]: c11}))
            contract = Contract("T5", Mode.IOS, (scope[(0, 0)], 0), tuple(facts))
            out.append(verify_contract(graph, contract, subject=f"J_{copies}"))
    elif lemma == "4.1":
        out.append(verify_gadget(load_gadget("Fx", directory)))
    elif lemma == "4.2":
        out.append(verify_gadget(load_gadget("Fe", directory)))
    elif lemma == "4.3":
        fe = load_gadget("Fe", directory)
        fx = load_gadget("Fx", directory)
        for sa in _SQUARES_F:
            for sb in _SQUARES_F:
                graph, scope = compose(
                    [fe, fx, fx], [((1, sa), (0, "e0")), ((2, sb), (0, "e6"))]
                )
                contract = Contract(
                    "T4",
                    Mode.IOT,
                    None,
                    (
                        ("nonempty",),
                        ("equal", scope[(0, 0)], scope[(0, 6)]),
                        ("range", scope[(0, 0)], bcd),
                    ),
                )
                out.append(
                    verify_contract(graph, contract, subject=f"Fe'[{sa},{sb}]")
                )
    elif lemma == "4.5":
        dv = load_gadget("Dv", directory)
        chain = {0: 3, 4: 0, 8: 2}  # d, a, c
        for copies in (2, 3):
            graph, scope = ring(dv, copies, ("out8",), "in0")
            facts: list[Fact] = [("nonempty",)]
            for i in range(copies):
                for v, c in chain.items():
                    if i == 0 and v == 0:
                        continue  # that is the anchor itself
                    facts.append(("forced", scope[(i, v)], c))
            for c5 in (0, 1, 2):
                facts.append(("extends", {scope[(0, 0)]: 3, scope[(0, 5)]: c5}))
            contract = Contract("T5", Mode.IOT, (scope[(0, 0)], 3), tuple(facts))
            out.append(verify_contract(graph, contract, subject=f"D_{copies}"))
    else:
        raise ValueError(f"unknown lemma {lemma!r}; known: {', '.join(ALL_LEMMAS)}")
    return out


# ---------------------------------------------------------------------------
# synthesis fallback
# ---------------------------------------------------------------------------

SYNTHESIS_MAX_VERTICES = 12


def synthesize_gadget(
    contract: Contract,
    size_bound: int = SYNTHESIS_MAX_VERTICES,
    port_count: int = 0,
    seed: int = 0,
    tries_per_size: int = 200,
    node_budget: int = 20_000,
) -> GadgetSpec:
    """Bounded seeded search for a digon-free gadget satisfying the contract.

    Sizes are tried in ascending order; within a size the empty graph first,
    then seeded random orientations, so results are stable for a fixed seed.
    Raises SynthesisNotFound when the bound is exhausted.
    """
    if size_bound > SYNTHESIS_MAX_VERTICES:
        raise ValueError(f"size bound capped at {SYNTHESIS_MAX_VERTICES}")
    referenced = [0]
    if contract.anchor is not None:
        referenced.append(contract.anchor[0])
    for fact in contract.facts:
        if fact[0] in ("forced", "range"):
            referenced.append(fact[1])
        elif fact[0] == "equal":
            referenced.extend(fact[1:3])
        elif fact[0] == "extends":
            referenced.extend(fact[1].keys())
    min_n = max(1, port_count, max(referenced) + 1)
    rng = random.Random(seed)
    for n in range(min_n, size_bound + 1):
        candidates = [OrientedGraph(n)]
        for _ in range(tries_per_size):
            arcs = []
            for u in range(n):
                if rng.random() < 0.1:
                    arcs.append((u, u))
                for v in range(u + 1, n):
                    r = rng.random()
                    if r < 0.25:
                        arcs.append((u, v))
                    elif r < 0.5:
                        arcs.append((v, u))
            candidates.append(OrientedGraph(n, arcs))
        for graph in candidates:
            report = verify_contract(graph, contract, node_budget=node_budget)
            if report.passed:
                ports = {f"p{i}": i for i in range(port_count)}
                return GadgetSpec(
                    name=f"synth{n}", graph=graph, ports=ports,
                    contract=contract, provenance="synthesized",
                )
    raise SynthesisNotFound(
        f"no gadget on <= {size_bound} vertices satisfies the contract"
    )
