"""Loop-aware oriented graphs and the surgery operations built on them.

An oriented graph is a directed graph in which two distinct vertices are
joined by at most one arc (no digons); loops are permitted.  A loop at v
puts v inside both its own in- and out-neighbourhood, which is what makes
the local injectivity modes sensitive to loops.

Graphs are immutable after construction, so they can be shared freely.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import (
    DigonViolation,
    DuplicateArc,
    MalformedLine,
    SelfMergeCycle,
    VertexOutOfRange,
)

Arc = tuple[int, int]


class Mode(Enum):
    """Local injectivity mode: which neighbourhood(s) must be rainbow."""

    IN = "in"  # injective on N-(v)
    IOS = "ios"  # injective on N-(v) and on N+(v), separately
    IOT = "iot"  # injective on N-(v) union N+(v)

    @classmethod
    def parse(cls, text: str) -> "Mode":
        for m in cls:
            if m.value == text:
                return m
        raise ValueError(f"unknown mode {text!r} (expected in, ios or iot)")


MODES = (Mode.IN, Mode.IOS, Mode.IOT)


@dataclass(frozen=True)
class Neighbourhood:
    vertex: int
    direction: str  # "in" | "out" | "both"
    members: frozenset[int]


class OrientedGraph:
    """Immutable digon-free directed graph on vertices 0..n-1."""

    __slots__ = ("n", "arcs", "_nin", "_nout")

    def __init__(self, n: int, arcs: Iterable[Arc] = ()):
        if n < 0:
            raise VertexOutOfRange(f"vertex count {n} is negative")
        arcset: set[Arc] = set()
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"arc ({u}, {v}) outside 0..{n - 1}")
            if u != v and (v, u) in arcset:
                raise DigonViolation(f"arcs ({u}, {v}) and ({v}, {u}) form a digon")
            arcset.add((u, v))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "arcs", frozenset(arcset))
        nin: list[set[int]] = [set() for _ in range(n)]
        nout: list[set[int]] = [set() for _ in range(n)]
        for u, v in arcset:
            nout[u].add(v)
            nin[v].add(u)
        object.__setattr__(self, "_nin", tuple(frozenset(s) for s in nin))
        object.__setattr__(self, "_nout", tuple(frozenset(s) for s in nout))

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("OrientedGraph is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, OrientedGraph)
            and self.n == other.n
            and self.arcs == other.arcs
        )

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __repr__(self):
        return f"OrientedGraph(n={self.n}, arcs={sorted(self.arcs)})"

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def has_loop(self, v: int) -> bool:
        return (v, v) in self.arcs

    def in_set(self, v: int) -> frozenset[int]:
        self._check(v)
        return self._nin[v]

    def out_set(self, v: int) -> frozenset[int]:
        self._check(v)
        return self._nout[v]

    def both_set(self, v: int) -> frozenset[int]:
        self._check(v)
        return self._nin[v] | self._nout[v]

    def mode_sets(self, v: int, mode: Mode) -> tuple[frozenset[int], ...]:
        """The neighbourhood set(s) whose members must take distinct colours."""
        if mode is Mode.IN:
            return (self._nin[v],)
        if mode is Mode.IOS:
            return (self._nin[v], self._nout[v])
        return (self._nin[v] | self._nout[v],)

    def _check(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise VertexOutOfRange(f"vertex {v} outside 0..{self.n - 1}")


def neighbourhood(g: OrientedGraph, v: int, direction: str) -> Neighbourhood:
    """The in-, out- or combined neighbourhood of v, loop self-membership included."""
    g._check(v)
    if direction == "in":
        members = g.in_set(v)
    elif direction == "out":
        members = g.out_set(v)
    elif direction == "both":
        members = g.both_set(v)
    else:
        raise ValueError(f"direction must be in/out/both, got {direction!r}")
    return Neighbourhood(vertex=v, direction=direction, members=frozenset(members))


# ---------------------------------------------------------------------------
# edge-list text format
#
#   # comment
#   n <count>
#   a <u> <v>        (sorted by (u, v) when serialized)
#   port <name> <v>  (sorted by name; only gadget files carry ports)
# ---------------------------------------------------------------------------


def parse_document(text: str) -> tuple[OrientedGraph, dict[str, int]]:
    """Parse the edge-list format; returns the graph and any declared ports."""
    n: int | None = None
    arcs: list[Arc] = []
    seen: set[Arc] = set()
    ports: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "n" and len(parts) == 2:
            if n is not None:
                raise MalformedLine(f"line {lineno}: duplicate vertex-count line")
            try:
                n = int(parts[1])
            except ValueError:
                raise MalformedLine(f"line {lineno}: bad vertex count {parts[1]!r}")
            if n < 0:
                raise MalformedLine(f"line {lineno}: negative vertex count")
        elif parts[0] == "a" and len(parts) == 3:
            if n is None:
                raise MalformedLine(f"line {lineno}: arc before vertex-count line")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise MalformedLine(f"line {lineno}: bad arc {line!r}")
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"line {lineno}: arc ({u}, {v}) outside 0..{n - 1}")
            if (u, v) in seen:
                raise DuplicateArc(f"line {lineno}: arc ({u}, {v}) listed twice")
            if u != v and (v, u) in seen:
                raise DigonViolation(f"line {lineno}: ({u}, {v}) closes a digon")
            seen.add((u, v))
            arcs.append((u, v))
        elif parts[0] == "port" and len(parts) == 3:
            if n is None:
                raise MalformedLine(f"line {lineno}: port before vertex-count line")
            name = parts[1]
            try:
                v = int(parts[2])
            except ValueError:
                raise MalformedLine(f"line {lineno}: bad port vertex {parts[2]!r}")
            if not (0 <= v < n):
                raise VertexOutOfRange(f"line {lineno}: port vertex {v} out of range")
            if name in ports:
                raise MalformedLine(f"line {lineno}: duplicate port {name!r}")
            ports[name] = v
        else:
            raise MalformedLine(f"line {lineno}: unrecognised line {line!r}")
    if n is None:
        raise MalformedLine("missing vertex-count line 'n <count>'")
    return OrientedGraph(n, arcs), ports


def parse_graph(text: str) -> OrientedGraph:
    return parse_document(text)[0]


def serialize_graph(
    g: OrientedGraph,
    ports: Mapping[str, int] | None = None,
    header: str | None = None,
) -> str:
    """Bit-exact serialization: header comment, count, arcs by (u, v), ports by name."""
    lines: list[str] = []
    if header:
        lines.append(f"# {header}")
    lines.append(f"n {g.n}")
    lines.extend(f"a {u} {v}" for u, v in sorted(g.arcs))
    if ports:
        lines.extend(f"port {name} {ports[name]}" for name in sorted(ports))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# surgery
# ---------------------------------------------------------------------------


def disjoint_union(gs: Sequence[OrientedGraph]) -> tuple[OrientedGraph, list[int]]:
    """Disjoint union; returns the union and the vertex-id offset of each part."""
    offsets: list[int] = []
    total = 0
    arcs: list[Arc] = []
    for g in gs:
        offsets.append(total)
        arcs.extend((u + total, v + total) for u, v in g.arcs)
        total += g.n
    return OrientedGraph(total, arcs), offsets


def identify_vertices(
    g: OrientedGraph, pairs: Iterable[tuple[int, int]]
) -> tuple[OrientedGraph, list[int]]:
    """Merge each (keep, merge) pair, compact ids, and return the relabelling map.

    Duplicate arcs created by a merge collapse silently (set semantics); a digon
    created by a merge is an error.  The merge pairs must form a forest.
    """
    parent: dict[int, int] = {}

    def root(x: int) -> int:
        seen = []
        while x in parent:
            seen.append(x)
            x = parent[x]
            if x in seen:
                raise SelfMergeCycle(f"merge pairs form a cycle through vertex {x}")
        return x

    for keep, merge in pairs:
        g._check(keep)
        g._check(merge)
        rk, rm = root(keep), root(merge)
        if rk == rm:
            raise SelfMergeCycle(f"pair ({keep}, {merge}) merges a vertex with itself")
        parent[rm] = rk

    survivors = sorted(v for v in range(g.n) if v not in parent)
    compact = {v: i for i, v in enumerate(survivors)}
    relabel = [compact[root(v)] for v in range(g.n)]

    arcs: set[Arc] = set()
    for u, v in g.arcs:
        a, b = relabel[u], relabel[v]
        if a != b and (b, a) in arcs:
            raise DigonViolation(
                f"merging created a digon between {a} and {b} (from arc ({u}, {v}))"
            )
        arcs.add((a, b))
    return OrientedGraph(len(survivors), arcs), relabel


def induced_subgraph(
    g: OrientedGraph, vertices: Iterable[int]
) -> tuple[OrientedGraph, dict[int, int]]:
    """Subgraph induced on the given vertex set, relabelled densely; map returned."""
    vs = sorted(set(vertices))
    for v in vs:
        g._check(v)
    relabel = {v: i for i, v in enumerate(vs)}
    arcs = [
        (relabel[u], relabel[v]) for u, v in g.arcs if u in relabel and v in relabel
    ]
    return OrientedGraph(len(vs), arcs), relabel


def is_strongly_connected(g: OrientedGraph) -> bool:
    """True iff every ordered vertex pair is joined by a directed path."""
    if g.n <= 1:
        return True

    def reaches_all(neigh) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in neigh(v):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == g.n

    return reaches_all(g.out_set) and reaches_all(g.in_set)
