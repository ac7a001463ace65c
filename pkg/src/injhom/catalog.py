"""Named targets, exhaustive reflexive-tournament enumeration, automorphisms.

Colour letters a..h map to vertex ids 0..7 in all I/O.  The named targets:

  C3   reflexive directed three-cycle          a->b->c->a
  TTn  reflexive transitive tournament         i->j for i < j
  T4   the unique strongly connected reflexive tournament on 4 vertices
  T5   the unique reflexive tournament on 5 vertices with every in- and
       out-degree equal to 3 (loops counted)

Canonical forms are lexicographically minimal adjacency bit-strings over all
vertex permutations, so they are usable as isomorphism keys for any digraph
on at most 8 vertices.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .digraph import OrientedGraph
from .errors import BoundExceeded

_LETTERS = "abcdefghijklmnopqrstuvwxyz"

CANONICAL_MAX = 8


def colour_letter(i: int) -> str:
    return _LETTERS[i] if 0 <= i < len(_LETTERS) else str(i)


def parse_colour(text: str, n: int) -> int:
    """A colour given as a letter (a..) or an integer id."""
    t = text.strip().lower()
    if len(t) == 1 and t in _LETTERS and _LETTERS.index(t) < n:
        return _LETTERS.index(t)
    try:
        c = int(t)
    except ValueError:
        raise ValueError(f"colour {text!r} is not a letter a..{_LETTERS[n - 1]} or an id")
    if not 0 <= c < n:
        raise ValueError(f"colour id {c} outside 0..{n - 1}")
    return c


class Target:
    """A colour space: a digraph together with cached automorphisms."""

    __slots__ = ("graph", "name", "_auts")

    def __init__(self, graph: OrientedGraph, name: str | None = None):
        self.graph = graph
        self.name = name
        self._auts: tuple[tuple[int, ...], ...] | None = None

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def reflexive(self) -> bool:
        return all(self.graph.has_loop(v) for v in range(self.graph.n))

    @property
    def is_tournament(self) -> bool:
        g = self.graph
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if g.has_arc(u, v) == g.has_arc(v, u):
                    return False
        return True

    def automorphisms(self) -> tuple[tuple[int, ...], ...]:
        if self._auts is None:
            self._auts = automorphisms(self)
        return self._auts

    def __repr__(self):
        label = self.name or f"<{self.graph.n}-vertex target>"
        return f"Target({label})"

    def __eq__(self, other):
        return isinstance(other, Target) and self.graph == other.graph

    def __hash__(self):
        return hash(self.graph)


def _reflexive(n: int, strict_arcs) -> OrientedGraph:
    return OrientedGraph(n, [(v, v) for v in range(n)] + list(strict_arcs))


# T4's defining property (the unique strongly connected case) and T5's (the
# unique in/out-degree-3 case) are re-checked against the exhaustive
# enumeration by the test suite.
_T4_STRICT = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 0)]
_T5_STRICT = [(i, (i + k) % 5) for i in range(5) for k in (1, 2)]


def named_target(name: str) -> Target:
    key = name.strip()
    if key == "C3":
        return Target(_reflexive(3, [(0, 1), (1, 2), (2, 0)]), "C3")
    if key == "T4":
        return Target(_reflexive(4, _T4_STRICT), "T4")
    if key == "T5":
        return Target(_reflexive(5, _T5_STRICT), "T5")
    m = re.fullmatch(r"TT(\d+)", key)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ValueError("TTn needs n >= 1")
        return Target(
            _reflexive(n, [(i, j) for i in range(n) for j in range(i + 1, n)]),
            f"TT{n}",
        )
    raise ValueError(f"unknown target name {name!r} (C3, TTn, T4, T5)")


NAMED_TARGETS = ("C3", "TT3", "T4", "T5")


def serialize_target(t: Target) -> str:
    """Edge-list document with a '# target <name>' header comment."""
    from .digraph import serialize_graph

    return serialize_graph(t.graph, header=f"target {t.name or 'unnamed'}")


# ---------------------------------------------------------------------------
# canonical forms and automorphisms (brute force over S_n, n <= 8)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _perm_table(n: int) -> np.ndarray:
    """(n!, n) array of all permutations of range(n)."""
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64)


@lru_cache(maxsize=None)
def _perm_flat_index(n: int) -> np.ndarray:
    """(n!, n*n) gather table: row p lists flat source indices of A[p][:, p]."""
    perms = _perm_table(n)
    return (perms[:, :, None] * n + perms[:, None, :]).reshape(len(perms), n * n)


def _adjacency_bits(g: OrientedGraph) -> np.ndarray:
    bits = np.zeros(g.n * g.n, dtype=np.uint8)
    for u, v in g.arcs:
        bits[u * g.n + v] = 1
    return bits


def canonical_form(t: Target | OrientedGraph) -> bytes:
    """Isomorphism key: minimal adjacency bit-string over all relabellings."""
    g = t.graph if isinstance(t, Target) else t
    if g.n > CANONICAL_MAX:
        raise BoundExceeded(f"canonical_form limited to {CANONICAL_MAX} vertices")
    if g.n == 0:
        return b""
    bits = _adjacency_bits(g)
    packed = np.packbits(bits[_perm_flat_index(g.n)], axis=1)
    return min(row.tobytes() for row in packed)


def automorphisms(t: Target | OrientedGraph) -> tuple[tuple[int, ...], ...]:
    """All arc-preserving vertex permutations, as tuples pi with pi[v] the image."""
    g = t.graph if isinstance(t, Target) else t
    if g.n > CANONICAL_MAX:
        raise BoundExceeded(f"automorphisms limited to {CANONICAL_MAX} vertices")
    if g.n == 0:
        return ((),)
    bits = _adjacency_bits(g)
    mats = bits[_perm_flat_index(g.n)]
    mask = (mats == bits[None, :]).all(axis=1)
    return tuple(tuple(int(x) for x in p) for p in _perm_table(g.n)[mask])


def is_vertex_transitive(t: Target) -> bool:
    """True iff the automorphism group has a single vertex orbit."""
    if t.n == 0:
        return True
    # the group is closed under composition, so the orbit of 0 is one sweep
    orbit = {pi[0] for pi in t.automorphisms()}
    return len(orbit) == t.n


@dataclass(frozen=True)
class DegreeProfile:
    in_degrees: tuple[int, ...]  # loops counted
    out_degrees: tuple[int, ...]
    max_in: int
    max_out: int
    high_vertices: tuple[int, ...]  # in- or out-degree >= 4


def degree_profile(t: Target) -> DegreeProfile:
    g = t.graph
    ins = tuple(len(g.in_set(v)) for v in range(g.n))
    outs = tuple(len(g.out_set(v)) for v in range(g.n))
    high = tuple(v for v in range(g.n) if ins[v] >= 4 or outs[v] >= 4)
    return DegreeProfile(
        in_degrees=ins,
        out_degrees=outs,
        max_in=max(ins, default=0),
        max_out=max(outs, default=0),
        high_vertices=high,
    )


# ---------------------------------------------------------------------------
# exhaustive enumeration of reflexive tournaments up to isomorphism
# ---------------------------------------------------------------------------

ENUMERATION_MAX = 7


@lru_cache(maxsize=None)
def _pair_perm_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Per permutation: source pair index and flip flag for each vertex pair.

    Orientations of K_n are bit vectors over the pairs (i, j), i < j, where a
    set bit means the arc i->j.  Relabelling by pi sends pair k = (i, j) to the
    bit of pair (pi(i), pi(j)), negated when pi(i) > pi(j).
    """
    pairs = list(itertools.combinations(range(n), 2))
    pair_index = {p: k for k, p in enumerate(pairs)}
    perms = _perm_table(n)
    idx = np.zeros((len(perms), len(pairs)), dtype=np.int64)
    flip = np.zeros((len(perms), len(pairs)), dtype=np.uint8)
    for p, pi in enumerate(perms):
        for k, (i, j) in enumerate(pairs):
            a, b = int(pi[i]), int(pi[j])
            if a < b:
                idx[p, k] = pair_index[(a, b)]
                flip[p, k] = 0
            else:
                idx[p, k] = pair_index[(b, a)]
                flip[p, k] = 1
    return idx, flip


def _canonical_orientation_values(bits: np.ndarray, n: int) -> np.ndarray:
    """Minimal packed orientation value over all relabellings, per row of bits."""
    idx, flip = _pair_perm_tables(n)
    k = bits.shape[1]
    weights = (1 << np.arange(k, dtype=np.int64))[::-1]
    best = None
    for p in range(idx.shape[0]):
        vals = (bits[:, idx[p]] ^ flip[p]).astype(np.int64) @ weights
        best = vals if best is None else np.minimum(best, vals)
    return best


def _orientation_to_target(value: int, n: int) -> Target:
    pairs = list(itertools.combinations(range(n), 2))
    k = len(pairs)
    strict = []
    for bit, (i, j) in enumerate(pairs):
        if (value >> (k - 1 - bit)) & 1:
            strict.append((i, j))
        else:
            strict.append((j, i))
    return Target(_reflexive(n, strict))


@lru_cache(maxsize=None)
def _enumerate_values(n: int) -> tuple[int, ...]:
    if n == 1:
        return (0,)
    if n <= 6:
        k = n * (n - 1) // 2
        count = 1 << k
        bits = (np.arange(count, dtype=np.int64)[:, None] >> np.arange(k)[::-1]) & 1
        best = _canonical_orientation_values(bits.astype(np.uint8), n)
        return tuple(int(v) for v in np.unique(best))
    # n == 7: extend every 6-vertex representative by one vertex, then dedup.
    base = _enumerate_values(6)
    k6, k7 = 15, 21
    rows = []
    for value in base:
        base_bits = [(value >> (k6 - 1 - b)) & 1 for b in range(k6)]
        for pattern in range(1 << 6):
            # pairs of K_7 in lexicographic order: those inside 0..5, then (i, 6)
            row = list(base_bits)
            new_bits = [0] * k7
            pairs = list(itertools.combinations(range(7), 2))
            pos6 = 0
            for idx_, (i, j) in enumerate(pairs):
                if j < 6:
                    new_bits[idx_] = row[pos6]
                    pos6 += 1
                else:
                    new_bits[idx_] = (pattern >> i) & 1
            rows.append(new_bits)
    bits = np.array(rows, dtype=np.uint8)
    best = _canonical_orientation_values(bits, 7)
    return tuple(int(v) for v in np.unique(best))


def enumerate_reflexive_tournaments(n: int) -> list[Target]:
    """All reflexive tournaments on n vertices, one per isomorphism class.

    Deterministic canonical order (sorted by canonical orientation value).
    """
    if not 1 <= n <= ENUMERATION_MAX:
        raise BoundExceeded(f"enumeration supported for 1 <= n <= {ENUMERATION_MAX}")
    return [_orientation_to_target(v, n) for v in _enumerate_values(n)]
