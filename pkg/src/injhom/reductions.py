"""Mechanical builders for the hardness reductions, plus projection and lifting.

Four gadget reductions and two collapse reductions are provided:

  ios-t4 / iot-t4    3-edge-colouring of a subcubic graph  ->  T4 instance
  ios-t5 / iot-t5    C3-colourability of an oriented graph ->  T5 instance
  collapse-ios/iot   T'-colourability -> T-colourability, T' induced by the
                     strict out-(or in-)neighbourhood of a high-degree pivot

Builders are deterministic: identical inputs give identical instances, and a
ReductionInstance carries complete bookkeeping (gadget copy offsets, port
identifications, inner-vertex images) so solutions can be projected back to
the source problem and source solutions lifted to full instance colourings.

Ring constructions on fewer than two source vertices are padded with
isolated dummy vertices: a one-copy ring would close an arc pair into a
digon, and an isolated dummy is always colourable, so padding preserves the
yes/no answer.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .catalog import Target, named_target
from .digraph import (
    Mode,
    OrientedGraph,
    disjoint_union,
    identify_vertices,
    induced_subgraph,
)
from .errors import (
    DegreeTooHigh,
    DegreeTooLow,
    DuplicateArc,
    MalformedLine,
    NormalizationFailed,
    PortColourMismatch,
    SquareExhausted,
    TemplateNotFound,
    VertexOutOfRange,
)
from .gadgets import GadgetSpec, load_gadget
from .solver import decide, verify_colouring

Edge = tuple[int, int]

# colours b, c, d of T4 double as the three edge colours
EDGE_COLOURS = (1, 2, 3)

# the vertices b, d, e induce the directed three-cycle inside T5;
# C3's letters a, b, c correspond to them in that cyclic order
C3_EMBEDDING = {0: 1, 1: 3, 2: 4}
C3_FROM_T5 = {v: k for k, v in C3_EMBEDDING.items()}


class UndirectedGraph:
    """Simple undirected graph (no loops, no multi-edges)."""

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise VertexOutOfRange(f"vertex count {n} is negative")
        es: set[Edge] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise MalformedLine(f"loop at {u} not allowed in a simple graph")
            es.add((min(u, v), max(u, v)))
        self.n = n
        self.edges = frozenset(es)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def incident(self, v: int) -> list[Edge]:
        return sorted(e for e in self.edges if v in e)

    def __eq__(self, other):
        return (
            isinstance(other, UndirectedGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"UndirectedGraph(n={self.n}, edges={sorted(self.edges)})"


def parse_undirected(text: str) -> UndirectedGraph:
    """Edge-list format read with undirected semantics ('a u v' is an edge)."""
    n: int | None = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "n" and len(parts) == 2:
            n = int(parts[1])
        elif parts[0] == "a" and len(parts) == 3:
            if n is None:
                raise MalformedLine(f"line {lineno}: edge before vertex-count line")
            u, v = int(parts[1]), int(parts[2])
            e = (min(u, v), max(u, v))
            if e in seen:
                raise DuplicateArc(f"line {lineno}: edge {e} listed twice")
            seen.add(e)
            edges.append(e)
        else:
            raise MalformedLine(f"line {lineno}: unrecognised line {line!r}")
    if n is None:
        raise MalformedLine("missing vertex-count line 'n <count>'")
    return UndirectedGraph(n, edges)


def orient_edges(g: UndirectedGraph) -> OrientedGraph:
    """The fixed arbitrary orientation: every edge {u, v} becomes min -> max."""
    return OrientedGraph(g.n, sorted(g.edges))


# ---------------------------------------------------------------------------
# 3-edge-colouring oracle (exhaustive backtracking, independent of the solver)
# ---------------------------------------------------------------------------


def three_edge_colouring_oracle(g: UndirectedGraph) -> dict[Edge, int] | None:
    """A proper 3-edge-colouring with colours {b, c, d} = {1, 2, 3}, or None."""
    if g.max_degree() > 3:
        raise DegreeTooHigh(f"max degree {g.max_degree()} > 3")
    edges = sorted(g.edges)
    touching: list[list[int]] = [[] for _ in range(len(edges))]
    for i, (u, v) in enumerate(edges):
        for j in range(i):
            a, b = edges[j]
            if u in (a, b) or v in (a, b):
                touching[i].append(j)
    colours = [0] * len(edges)

    def rec(i: int) -> bool:
        if i == len(edges):
            return True
        for c in EDGE_COLOURS:
            if all(colours[j] != c for j in touching[i]):
                colours[i] = c
                if rec(i + 1):
                    return True
                colours[i] = 0
        return False

    if not rec(0):
        return None
    return {e: colours[i] for i, e in enumerate(edges)}


def is_proper_edge_colouring(g: UndirectedGraph, colouring: Mapping[Edge, int]) -> bool:
    if set(colouring) != set(g.edges):
        return False
    if any(c not in EDGE_COLOURS for c in colouring.values()):
        return False
    for v in range(g.n):
        cols = [colouring[e] for e in g.incident(v)]
        if len(cols) != len(set(cols)):
            return False
    return True


# ---------------------------------------------------------------------------
# reduction instances
# ---------------------------------------------------------------------------


@dataclass
class ReductionInstance:
    kind: str
    graph: OrientedGraph
    target: Target
    mode: Mode
    source_n: int
    padded: int = 0
    # source vertex / edge -> {gadget label -> final instance vertex}
    vertex_gadget: dict[int, dict[int, int]] = field(default_factory=dict)
    edge_gadget: dict[Edge, dict[int, int]] = field(default_factory=dict)
    # collapse-iot only: the T* copy attached to each ring position
    star_gadget: dict[int, dict[int, int]] = field(default_factory=dict)
    # source edge -> the two merged port vertices and the squares they used
    ports: dict[Edge, tuple[int, int]] = field(default_factory=dict)
    squares_used: dict[Edge, tuple[str, str]] = field(default_factory=dict)
    # image of each original source vertex inside the instance
    inner: dict[int, int] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def map_lines(self) -> list[str]:
        """Deterministic key=value bookkeeping lines for the .map sidecar."""
        lines = [
            f"kind={self.kind}",
            f"mode={self.mode.value}",
            f"target={self.target.name or 'custom'}",
            f"source_n={self.source_n}",
            f"padded={self.padded}",
        ]
        for v in sorted(self.inner):
            lines.append(f"inner.{v}={self.inner[v]}")
        for x in sorted(self.vertex_gadget):
            for lbl in sorted(self.vertex_gadget[x]):
                lines.append(f"vgadget.{x}.{lbl}={self.vertex_gadget[x][lbl]}")
        for e in sorted(self.edge_gadget):
            for lbl in sorted(self.edge_gadget[e]):
                lines.append(f"egadget.{e[0]},{e[1]}.{lbl}={self.edge_gadget[e][lbl]}")
        for i in sorted(self.star_gadget):
            for lbl in sorted(self.star_gadget[i]):
                lines.append(f"star.{i}.{lbl}={self.star_gadget[i][lbl]}")
        for e in sorted(self.ports):
            p, q = self.ports[e]
            lines.append(f"port.{e[0]},{e[1]}={p},{q}")
        for e in sorted(self.squares_used):
            a, b = self.squares_used[e]
            lines.append(f"square.{e[0]},{e[1]}={a},{b}")
        for key in sorted(self.meta):
            val = self.meta[key]
            if isinstance(val, dict):
                for k in sorted(val):
                    lines.append(f"{key}.{k}={val[k]}")
            elif not isinstance(val, (Target, OrientedGraph)):
                lines.append(f"{key}={val}")
        return lines


# -- T4 reductions (from 3-edge-colouring) ----------------------------------


def _build_t4(
    g: UndirectedGraph,
    kind: str,
    mode: Mode,
    vertex_spec: GadgetSpec,
    edge_spec: GadgetSpec,
    port_a: str,
    port_b: str,
) -> ReductionInstance:
    if g.max_degree() > 3:
        raise DegreeTooHigh(f"max degree {g.max_degree()} > 3")
    arcs = sorted(orient_edges(g).arcs)
    union, offsets = disjoint_union(
        [vertex_spec.graph] * g.n + [edge_spec.graph] * len(arcs)
    )
    v_off = {x: offsets[x] for x in range(g.n)}
    e_off = {e: offsets[g.n + i] for i, e in enumerate(arcs)}

    square_names = ("s1", "s2", "s3")
    used: dict[int, int] = {x: 0 for x in range(g.n)}
    merges: list[tuple[int, int]] = []
    squares_used: dict[Edge, tuple[str, str]] = {}

    def claim(x: int) -> str:
        if used[x] >= len(square_names):
            raise SquareExhausted(f"source vertex {x} needs a fourth square")
        name = square_names[used[x]]
        used[x] += 1
        return name

    for e in arcs:
        u, v = e
        su, sv = claim(u), claim(v)
        squares_used[e] = (su, sv)
        merges.append((v_off[u] + vertex_spec.port(su), e_off[e] + edge_spec.port(port_a)))
        merges.append((v_off[v] + vertex_spec.port(sv), e_off[e] + edge_spec.port(port_b)))

    merged, relabel = identify_vertices(union, merges)
    ri = ReductionInstance(
        kind=kind,
        graph=merged,
        target=named_target("T4"),
        mode=mode,
        source_n=g.n,
    )
    for x in range(g.n):
        ri.vertex_gadget[x] = {
            lbl: relabel[v_off[x] + lbl] for lbl in range(vertex_spec.graph.n)
        }
    for e in arcs:
        ri.edge_gadget[e] = {
            lbl: relabel[e_off[e] + lbl] for lbl in range(edge_spec.graph.n)
        }
        ri.ports[e] = (
            ri.edge_gadget[e][edge_spec.port(port_a)],
            ri.edge_gadget[e][edge_spec.port(port_b)],
        )
    ri.squares_used = squares_used
    return ri


def build_ios_t4(g: UndirectedGraph, directory: Path | None = None) -> ReductionInstance:
    return _build_t4(
        g, "ios-t4", Mode.IOS,
        load_gadget("Hx", directory), load_gadget("He", directory), "e0", "e9",
    )


def build_iot_t4(g: UndirectedGraph, directory: Path | None = None) -> ReductionInstance:
    return _build_t4(
        g, "iot-t4", Mode.IOT,
        load_gadget("Fx", directory), load_gadget("Fe", directory), "e0", "e6",
    )


# -- T5 reductions (from C3-colourability) ----------------------------------


def _pad_isolated(g: OrientedGraph, minimum: int) -> tuple[OrientedGraph, int]:
    if g.n >= minimum:
        return g, 0
    extra = minimum - g.n
    return OrientedGraph(minimum, g.arcs), extra


def _build_t5(
    g: OrientedGraph, kind: str, mode: Mode, spec: GadgetSpec,
    out_ports: tuple[str, ...], anchor_label: int, anchor_colour: int,
) -> ReductionInstance:
    padded, extra = _pad_isolated(g, 2)
    n = padded.n
    union, offsets = disjoint_union([padded] + [spec.graph] * n)
    arcs = set(union.arcs)
    for i in range(n):
        off = offsets[1 + i]
        nxt = offsets[1 + (i + 1) % n] + spec.port("in0")
        for p in out_ports:
            arcs.add((off + spec.port(p), nxt))
        arcs.add((off + spec.port("attach"), offsets[0] + i))
    ri = ReductionInstance(
        kind=kind,
        graph=OrientedGraph(union.n, arcs),
        target=named_target("T5"),
        mode=mode,
        source_n=g.n,
        padded=extra,
    )
    ri.inner = {v: offsets[0] + v for v in range(g.n)}
    for i in range(n):
        ri.vertex_gadget[i] = {
            lbl: offsets[1 + i] + lbl for lbl in range(spec.graph.n)
        }
    ri.meta["anchor_vertex"] = ri.vertex_gadget[0][anchor_label]
    ri.meta["anchor_colour"] = anchor_colour
    ri.meta["source"] = g
    return ri


def build_ios_t5(g: OrientedGraph, directory: Path | None = None) -> ReductionInstance:
    # vertex 8 of every copy is forced (up to automorphism) to colour a
    return _build_t5(
        g, "ios-t5", Mode.IOS, load_gadget("Jv", directory),
        ("out17", "out18", "out19"), anchor_label=8, anchor_colour=0,
    )


def build_iot_t5(g: OrientedGraph, directory: Path | None = None) -> ReductionInstance:
    # vertex 0 of every copy is forced (up to automorphism) to colour d
    return _build_t5(
        g, "iot-t5", Mode.IOT, load_gadget("Dv", directory),
        ("out8",), anchor_label=0, anchor_colour=3,
    )


# -- collapse reductions -----------------------------------------------------


def collapse_target(t: Target, v: int, direction: str) -> tuple[Target, dict[int, int]]:
    """Sub-tournament induced by the strict out-(or in-)neighbourhood of v.

    Returns the collapsed target and the map from original target vertices to
    collapsed ids.  Requires in/out-degree (loop included) at least 4.
    """
    g = t.graph
    if direction == "out":
        deg = len(g.out_set(v))
        strict = sorted(g.out_set(v) - {v})
    elif direction == "in":
        deg = len(g.in_set(v))
        strict = sorted(g.in_set(v) - {v})
    else:
        raise ValueError(f"direction must be out or in, got {direction!r}")
    if deg < 4:
        raise DegreeTooLow(
            f"vertex {v} has {direction}-degree {deg} (loop included), need >= 4"
        )
    sub, relabel = induced_subgraph(g, strict)
    name = f"{t.name or 'T'}/{v}:{direction}"
    return Target(sub, name=name), relabel


def _irreflexive(g: OrientedGraph) -> OrientedGraph:
    return OrientedGraph(g.n, [(u, v) for u, v in g.arcs if u != v])


def build_ios_collapse(
    g: OrientedGraph, t: Target, v: int, direction: str = "out"
) -> ReductionInstance:
    """Ring of irreflexive target copies with x-vertices feeding the source."""
    collapsed, cmap = collapse_target(t, v, direction)
    padded, extra = _pad_isolated(g, 2)
    n = padded.n
    tn = t.graph.n
    union, offsets = disjoint_union([padded] + [_irreflexive(t.graph)] * n)
    x0 = union.n  # x_i gets id x0 + i
    arcs = set(union.arcs)
    for i in range(n):
        w_i = offsets[0] + i
        v_i = offsets[1 + i] + v
        v_next = offsets[1 + (i + 1) % n] + v
        x_i = x0 + i
        if direction == "out":
            arcs.add((x_i, w_i))
        else:
            arcs.add((w_i, x_i))
        arcs.add((v_i, x_i))
        arcs.add((x_i, v_next))
    ri = ReductionInstance(
        kind="collapse-ios",
        graph=OrientedGraph(union.n + n, arcs),
        target=t,
        mode=Mode.IOS,
        source_n=g.n,
        padded=extra,
    )
    ri.inner = {u: offsets[0] + u for u in range(g.n)}
    for i in range(n):
        ri.vertex_gadget[i] = {lbl: offsets[1 + i] + lbl for lbl in range(tn)}
    ri.meta.update(
        pivot=v,
        direction=direction,
        x_vertices={i: x0 + i for i in range(n)},
        anchor_vertex=ri.vertex_gadget[0][v],
        anchor_colour=v,
        collapse_map=cmap,
        collapsed=collapsed,
        source=g,
    )
    return ri


def build_iot_collapse(
    g: OrientedGraph, t: Target, v: int, direction: str = "out"
) -> ReductionInstance:
    """Paired rings of irreflexive T and T* copies chained vertex-wise."""
    collapsed, cmap = collapse_target(t, v, direction)
    padded, extra = _pad_isolated(g, 2)
    n = padded.n
    tn = t.graph.n
    if direction == "out":
        star_arcs = [(a, b) for a, b in t.graph.arcs if a != v]
    else:
        star_arcs = [(a, b) for a, b in t.graph.arcs if b != v]
    t_star = _irreflexive(OrientedGraph(tn, star_arcs))
    union, offsets = disjoint_union(
        [padded] + [_irreflexive(t.graph)] * n + [t_star] * n
    )
    t_off = {i: offsets[1 + i] for i in range(n)}
    s_off = {i: offsets[1 + n + i] for i in range(n)}
    arcs = set(union.arcs)
    for i in range(n):
        for u in range(tn):
            if u != v:
                arcs.add((s_off[(i - 1) % n] + u, t_off[i] + u))
        arcs.add((t_off[i] + v, s_off[i] + v))
        w_i = offsets[0] + i
        if direction == "out":
            arcs.add((s_off[i] + v, w_i))
        else:
            arcs.add((w_i, s_off[i] + v))
    ri = ReductionInstance(
        kind="collapse-iot",
        graph=OrientedGraph(union.n, arcs),
        target=t,
        mode=Mode.IOT,
        source_n=g.n,
        padded=extra,
    )
    ri.inner = {u: offsets[0] + u for u in range(g.n)}
    for i in range(n):
        ri.vertex_gadget[i] = {lbl: t_off[i] + lbl for lbl in range(tn)}
        ri.star_gadget[i] = {lbl: s_off[i] + lbl for lbl in range(tn)}
    ri.meta.update(
        pivot=v,
        direction=direction,
        anchor_vertex=ri.vertex_gadget[0][v],
        anchor_colour=v,
        collapse_map=cmap,
        collapsed=collapsed,
        source=g,
    )
    return ri


# ---------------------------------------------------------------------------
# projection and lifting
# ---------------------------------------------------------------------------


def _normalizing_automorphism(t: Target, have: int, want: int) -> tuple[int, ...]:
    for pi in t.automorphisms():
        if pi[have] == want:
            return pi
    raise NormalizationFailed(
        f"no automorphism of {t.name or 'target'} maps colour {have} to {want}"
    )


def extract_edge_colouring(ri: ReductionInstance, f) -> dict[Edge, int]:
    """Project an instance colouring to the edge colouring it encodes."""
    if ri.kind not in ("ios-t4", "iot-t4"):
        raise ValueError(f"extract_edge_colouring needs a t4 kind, got {ri.kind}")
    colouring = {}
    for e, (p, q) in sorted(ri.ports.items()):
        cp, cq = f[p], f[q]
        if cp != cq:
            raise PortColourMismatch(
                f"edge {e}: ports coloured {cp} and {cq}, gadget contract violated"
            )
        if cp not in EDGE_COLOURS:
            raise PortColourMismatch(f"edge {e}: port colour {cp} outside {{b,c,d}}")
        colouring[e] = cp
    return colouring


def extract_inner_colouring(ri: ReductionInstance, f) -> dict[int, int]:
    """Restrict to the source vertices, normalized by a target automorphism.

    For the t5 kinds the result is a C3 colouring (ids 0..2); for the collapse
    kinds it is a colouring in the collapsed target's ids.
    """
    t = ri.target
    pi = _normalizing_automorphism(
        t, f[ri.meta["anchor_vertex"]], ri.meta["anchor_colour"]
    )
    out: dict[int, int] = {}
    if ri.kind in ("ios-t5", "iot-t5"):
        for u, vid in sorted(ri.inner.items()):
            c = pi[f[vid]]
            if c not in C3_FROM_T5:
                raise NormalizationFailed(
                    f"source vertex {u} coloured {c}, outside the embedded C3"
                )
            out[u] = C3_FROM_T5[c]
        return out
    if ri.kind in ("collapse-ios", "collapse-iot"):
        cmap = ri.meta["collapse_map"]
        for u, vid in sorted(ri.inner.items()):
            c = pi[f[vid]]
            if c not in cmap:
                raise NormalizationFailed(
                    f"source vertex {u} coloured {c}, outside the collapsed target"
                )
            out[u] = cmap[c]
        return out
    raise ValueError(f"extract_inner_colouring does not apply to kind {ri.kind}")


def lift_colouring(ri: ReductionInstance, base) -> tuple[int, ...]:
    """Extend a source-problem solution to a full valid instance colouring."""
    fixed: dict[int, int] = {}
    if ri.kind in ("ios-t4", "iot-t4"):
        source = UndirectedGraph(
            ri.source_n, [(u, v) for u, v in ri.ports.keys()]
        )
        if not is_proper_edge_colouring(source, base):
            raise ValueError("base is not a proper {b,c,d} edge colouring")
        for e, (p, q) in ri.ports.items():
            fixed[p] = base[e]
            fixed[q] = base[e]
    elif ri.kind in ("ios-t5", "iot-t5"):
        ok, why = verify_colouring(ri.meta["source"], named_target("C3"), base, ri.mode)
        if not ok:
            raise ValueError(f"base is not a valid C3 colouring of the source: {why}")
        for u, vid in ri.inner.items():
            fixed[vid] = C3_EMBEDDING[base[u]]
        fixed[ri.meta["anchor_vertex"]] = ri.meta["anchor_colour"]
    elif ri.kind in ("collapse-ios", "collapse-iot"):
        ok, why = verify_colouring(ri.meta["source"], ri.meta["collapsed"], base, ri.mode)
        if not ok:
            raise ValueError(f"base is not valid for the collapsed target: {why}")
        back = {cid: orig for orig, cid in ri.meta["collapse_map"].items()}
        for u, vid in ri.inner.items():
            fixed[vid] = back[base[u]]
        pivot = ri.meta["pivot"]
        for labels in ri.vertex_gadget.values():
            for lbl, vid in labels.items():
                fixed[vid] = lbl
        for labels in ri.star_gadget.values():
            for lbl, vid in labels.items():
                fixed[vid] = lbl
        if ri.kind == "collapse-ios":
            for x in ri.meta["x_vertices"].values():
                fixed[x] = pivot
    else:
        raise ValueError(f"unknown kind {ri.kind}")
    res = decide(ri.graph, ri.target, ri.mode, fixed=fixed)
    if not res.sat:
        raise TemplateNotFound(
            f"no completion of the fixed ports exists for kind {ri.kind}"
        )
    witness = res.witnesses[0]
    ok, why = verify_colouring(ri.graph, ri.target, witness, ri.mode)
    assert ok, why
    return witness
