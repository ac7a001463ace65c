"""Decide and enumerate locally-injective homomorphisms.

Search policy (pinned for reproducibility):

* constraints are materialized as binary tables between vertex pairs: arc
  preservation plus one difference constraint for every pair of vertices
  sharing a mode-relevant neighbourhood (deduplicated globally);
* unary filtering up front: loop arcs restrict a vertex to loop colours, and
  a vertex whose mode-relevant neighbourhood is larger than any colour's
  matching neighbourhood gets an empty domain (the pigeonhole screen);
* decide() branches on the smallest current domain (ties by vertex id),
  values in ascending colour order;
* enumerate() assigns vertices in id order so witnesses stream out in
  lexicographic order, deduplicated for free.

Everything is single-threaded and deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .catalog import Target
from .digraph import Mode, OrientedGraph
from .errors import InvalidFixedAssignment, PartialColouring

SAT = "sat"
UNSAT = "unsat"
BUDGET_EXHAUSTED = "budget_exhausted"

Witness = tuple[int, ...]


@dataclass
class SolveOptions:
    mode: Mode
    fixed: Mapping[int, int] | None = None
    limit: int | None = None
    node_budget: int | None = None
    mod_aut: bool = False


@dataclass
class SolveResult:
    status: str
    witnesses: list[Witness] = field(default_factory=list)
    nodes: int = 0
    propagations: int = 0
    complete: bool = True
    orbits: int | None = None

    @property
    def sat(self) -> bool:
        return self.status == SAT

    @property
    def count(self) -> int:
        return len(self.witnesses)


def difference_pairs(g: OrientedGraph, mode: Mode) -> set[tuple[int, int]]:
    """All vertex pairs forced to differ: pairs inside a mode-relevant neighbourhood."""
    pairs: set[tuple[int, int]] = set()
    for v in range(g.n):
        for members in g.mode_sets(v, mode):
            ms = sorted(members)
            for i in range(len(ms)):
                for j in range(i + 1, len(ms)):
                    pairs.add((ms[i], ms[j]))
    return pairs


def pigeonhole_unsat(g: OrientedGraph, t: Target, mode: Mode) -> bool:
    """True when some mode-relevant neighbourhood cannot fit into the target."""
    tg = t.graph
    max_in = max((len(tg.in_set(c)) for c in range(tg.n)), default=0)
    max_out = max((len(tg.out_set(c)) for c in range(tg.n)), default=0)
    max_both = max((len(tg.both_set(c)) for c in range(tg.n)), default=0)
    for v in range(g.n):
        if mode is Mode.IN:
            if len(g.in_set(v)) > max_in:
                return True
        elif mode is Mode.IOS:
            if len(g.in_set(v)) > max_in or len(g.out_set(v)) > max_out:
                return True
        else:
            if len(g.both_set(v)) > max_both:
                return True
    return False


class _Engine:
    """Shared constraint setup for one (instance, target, mode, fixed) problem."""

    def __init__(self, g: OrientedGraph, t: Target, mode: Mode, fixed=None):
        self.g = g
        self.t = t
        self.mode = mode
        self.fixed = dict(fixed or {})
        tg = t.graph
        tn = tg.n
        self.tn = tn
        full = (1 << tn) - 1

        out_mask = [0] * tn  # colours allowed on the head of an arc from c
        in_mask = [0] * tn  # colours allowed on the tail of an arc into c
        for c in range(tn):
            for d in tg.out_set(c):
                out_mask[c] |= 1 << d
            for d in tg.in_set(c):
                in_mask[c] |= 1 << d
        loop_mask = 0
        for c in range(tn):
            if tg.has_loop(c):
                loop_mask |= 1 << c

        self.pairs = difference_pairs(g, mode)
        self._validate_fixed()

        # unary filters: loops, degree capacity, fixed assignments
        dom = [full] * g.n
        cap_in = [len(tg.in_set(c)) for c in range(tn)]
        cap_out = [len(tg.out_set(c)) for c in range(tn)]
        cap_both = [len(tg.both_set(c)) for c in range(tn)]
        for v in range(g.n):
            if g.has_loop(v):
                dom[v] &= loop_mask
            need_in, need_out = len(g.in_set(v)), len(g.out_set(v))
            need_both = len(g.both_set(v))
            m = 0
            for c in range(tn):
                if self.mode is Mode.IN:
                    ok = cap_in[c] >= need_in
                elif self.mode is Mode.IOS:
                    ok = cap_in[c] >= need_in and cap_out[c] >= need_out
                else:
                    ok = cap_both[c] >= need_both
                if ok:
                    m |= 1 << c
            dom[v] &= m
        for v, c in self.fixed.items():
            dom[v] &= 1 << c
        self.dom0 = dom

        # binary tables: masks[c] = allowed colours on the partner when this side is c
        tables: dict[tuple[int, int], list[int]] = {}

        def table(v, u):
            key = (v, u)
            if key not in tables:
                tables[key] = [full] * tn
            return tables[key]

        for u, v in g.arcs:
            if u == v:
                continue  # loops were folded into the unary filter
            tu, tv = table(u, v), table(v, u)
            for c in range(tn):
                tu[c] &= out_mask[c]  # u=c constrains head v
                tv[c] &= in_mask[c]  # v=c constrains tail u
        for x, y in self.pairs:
            tx, ty = table(x, y), table(y, x)
            for c in range(tn):
                tx[c] &= ~(1 << c)
                ty[c] &= ~(1 << c)

        cons: list[list[tuple[int, list[int]]]] = [[] for _ in range(g.n)]
        for (v, u), masks in sorted(tables.items()):
            cons[v].append((u, masks))
        self.cons = cons

    def _validate_fixed(self) -> None:
        g, tg = self.g, self.t.graph
        for v, c in self.fixed.items():
            if not 0 <= v < g.n:
                raise InvalidFixedAssignment(f"fixed vertex {v} outside instance")
            if not 0 <= c < tg.n:
                raise InvalidFixedAssignment(f"fixed colour {c} outside target")
        for v, c in self.fixed.items():
            for u, d in self.fixed.items():
                if (u, v) in g.arcs and not tg.has_arc(d, c):
                    raise InvalidFixedAssignment(
                        f"fixed arc ({u}, {v}) maps to non-arc ({d}, {c})"
                    )
        for x, y in self.pairs:
            if x in self.fixed and y in self.fixed and self.fixed[x] == self.fixed[y]:
                raise InvalidFixedAssignment(
                    f"vertices {x} and {y} share a neighbourhood but are both fixed "
                    f"to colour {self.fixed[x]}"
                )
        for v, c in self.fixed.items():
            if g.has_loop(v) and not tg.has_arc(c, c):
                raise InvalidFixedAssignment(f"loop at {v} maps to loopless colour {c}")

    # -- the search ---------------------------------------------------------

    def run(
        self, static_order: bool, node_budget: int | None
    ) -> Iterator[Witness]:
        """Yield witnesses; sets self.nodes / self.propagations / self.exhausted."""
        self.nodes = 0
        self.propagations = 0
        self.exhausted = False
        n = self.g.n
        if n == 0:
            yield ()
            return
        dom = self.dom0[:]
        if any(d == 0 for d in dom):
            return
        cons = self.cons
        col = [-1] * n
        unassigned = n

        def select() -> int:
            if static_order:
                for u in range(n):
                    if col[u] < 0:
                        return u
            best_u = -1
            best = 1 << 30
            for u in range(n):
                if col[u] < 0:
                    pc = dom[u].bit_count()
                    if pc < best:
                        best, best_u = pc, u
                        if pc <= 1:
                            break
            return best_u

        # frame: [vertex, untried-colour mask, trail of (u, saved-domain)]
        v0 = select()
        stack: list[list] = [[v0, dom[v0], []]]
        while stack:
            frame = stack[-1]
            v, rem, trail = frame
            for u, old in trail:
                dom[u] = old
            trail.clear()
            if col[v] >= 0:
                col[v] = -1
                unassigned += 1
            if rem == 0:
                stack.pop()
                continue
            if node_budget is not None and self.nodes >= node_budget:
                self.exhausted = True
                return
            bit = rem & (-rem)
            frame[1] = rem ^ bit
            c = bit.bit_length() - 1
            self.nodes += 1
            col[v] = c
            unassigned -= 1
            dead = False
            for u, masks in cons[v]:
                if col[u] >= 0:
                    continue
                old = dom[u]
                new = old & masks[c]
                if new != old:
                    trail.append((u, old))
                    dom[u] = new
                    self.propagations += 1
                    if new == 0:
                        dead = True
                        break
            if dead:
                continue
            if unassigned == 0:
                yield tuple(col)
                continue
            w = select()
            stack.append([w, dom[w], []])


def decide(
    g: OrientedGraph,
    t: Target,
    mode: Mode,
    fixed: Mapping[int, int] | None = None,
    node_budget: int | None = None,
) -> SolveResult:
    """Sat with one witness iff a valid total colouring extending `fixed` exists."""
    eng = _Engine(g, t, mode, fixed)
    witnesses = []
    for w in eng.run(static_order=False, node_budget=node_budget):
        witnesses.append(w)
        break
    if witnesses:
        status = SAT
    elif eng.exhausted:
        status = BUDGET_EXHAUSTED
    else:
        status = UNSAT
    return SolveResult(
        status=status,
        witnesses=witnesses,
        nodes=eng.nodes,
        propagations=eng.propagations,
        complete=not eng.exhausted,
    )


def enumerate_colourings(
    g: OrientedGraph,
    t: Target,
    mode: Mode,
    fixed: Mapping[int, int] | None = None,
    limit: int | None = None,
    node_budget: int | None = None,
) -> SolveResult:
    """All valid total colourings extending `fixed`, in lexicographic order."""
    eng = _Engine(g, t, mode, fixed)
    witnesses: list[Witness] = []
    truncated = False
    for w in eng.run(static_order=True, node_budget=node_budget):
        witnesses.append(w)
        if limit is not None and len(witnesses) >= limit:
            truncated = True
            break
    if eng.exhausted:
        status = BUDGET_EXHAUSTED
    elif witnesses:
        status = SAT
    else:
        status = UNSAT
    return SolveResult(
        status=status,
        witnesses=witnesses,
        nodes=eng.nodes,
        propagations=eng.propagations,
        complete=not (eng.exhausted or truncated),
    )


def enumerate_mod_aut(
    g: OrientedGraph,
    t: Target,
    mode: Mode,
    fixed: Mapping[int, int] | None = None,
    limit: int | None = None,
    node_budget: int | None = None,
) -> SolveResult:
    """One representative per orbit of the witness set under Aut(target).

    Orbits are taken under post-composition; the representative is the
    lexicographically least member, and representatives are listed in order.
    """
    res = enumerate_colourings(g, t, mode, fixed=fixed, node_budget=node_budget)
    auts = t.automorphisms()
    reps = sorted({min(tuple(pi[c] for c in w) for pi in auts) for w in res.witnesses})
    if limit is not None:
        reps = reps[:limit]
    res.witnesses = list(reps)
    res.orbits = len(reps)
    return res


def solve(g: OrientedGraph, t: Target, options: SolveOptions) -> SolveResult:
    """Dispatch on SolveOptions: decide by default, enumerate when a limit is set."""
    if options.mod_aut:
        return enumerate_mod_aut(
            g, t, options.mode, options.fixed, options.limit, options.node_budget
        )
    if options.limit is not None:
        return enumerate_colourings(
            g, t, options.mode, options.fixed, options.limit, options.node_budget
        )
    return decide(g, t, options.mode, options.fixed, options.node_budget)


# ---------------------------------------------------------------------------
# independent checker (no shared machinery with the search above)
# ---------------------------------------------------------------------------


def verify_colouring(
    g: OrientedGraph,
    t: Target,
    colouring: Mapping[int, int] | Sequence[int],
    mode: Mode,
) -> tuple[bool, str | None]:
    """Check a total colouring; on failure, report one violating arc or pair."""
    f = _as_total(g, colouring)
    tg = t.graph
    for c in f:
        if not 0 <= c < tg.n:
            return False, f"colour {c} outside target"
    for u, v in sorted(g.arcs):
        if not tg.has_arc(f[u], f[v]):
            return False, (
                f"arc ({u}, {v}) maps to ({f[u]}, {f[v]}), not an arc of the target"
            )
    names = {Mode.IN: ("in",), Mode.IOS: ("in", "out"), Mode.IOT: ("both",)}
    for v in range(g.n):
        for label in names[mode]:
            members = {
                "in": g.in_set(v),
                "out": g.out_set(v),
                "both": g.both_set(v),
            }[label]
            seen: dict[int, int] = {}
            for x in sorted(members):
                if f[x] in seen:
                    return False, (
                        f"vertices {seen[f[x]]} and {x} in the {label}-neighbourhood "
                        f"of {v} both take colour {f[x]}"
                    )
                seen[f[x]] = x
    return True, None


def _as_total(g: OrientedGraph, colouring) -> list[int]:
    if isinstance(colouring, Mapping):
        missing = [v for v in range(g.n) if v not in colouring]
        if missing:
            raise PartialColouring(f"vertices {missing} are uncoloured")
        return [colouring[v] for v in range(g.n)]
    seq = list(colouring)
    if len(seq) != g.n:
        raise PartialColouring(f"colouring has {len(seq)} entries for {g.n} vertices")
    return seq
