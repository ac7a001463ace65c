"""Tour of the tournament catalog.

Builds the named targets, enumerates all reflexive tournaments on up to six
vertices, and rediscovers the structural facts the reductions lean on:
T4 is the unique strongly connected reflexive tournament on four vertices,
T5 the unique five-vertex one with every in- and out-degree three, and every
six-vertex reflexive tournament has a vertex of in- or out-degree four.
"""
from injhom import (
    automorphisms,
    canonical_form,
    degree_profile,
    enumerate_reflexive_tournaments,
    is_strongly_connected,
    is_vertex_transitive,
    named_target,
    serialize_target,
)

print("=== named targets ===")
for name in ("C3", "TT3", "T4", "T5"):
    t = named_target(name)
    print(serialize_target(t))
    print()

print("=== reflexive tournaments up to isomorphism ===")
for n in range(1, 7):
    reps = enumerate_reflexive_tournaments(n)
    print(f"n={n}: {len(reps)} classes")

print()
print("=== what makes T4 and T5 special ===")
four = enumerate_reflexive_tournaments(4)
strong = [t for t in four if is_strongly_connected(t.graph)]
print(f"strongly connected on 4 vertices: {len(strong)} "
      f"(isomorphic to T4: {canonical_form(strong[0]) == canonical_form(named_target('T4'))})")

five = enumerate_reflexive_tournaments(5)
regular = [t for t in five if set(degree_profile(t).out_degrees) == {3}
           and set(degree_profile(t).in_degrees) == {3}]
print(f"in/out-degree 3 everywhere on 5 vertices: {len(regular)} "
      f"(isomorphic to T5: {canonical_form(regular[0]) == canonical_form(named_target('T5'))})")

six = enumerate_reflexive_tournaments(6)
no_high = [t for t in six if not degree_profile(t).high_vertices]
print(f"6-vertex tournaments with no degree-4 vertex: {len(no_high)} of {len(six)}")

print()
print("=== T5's automorphism group ===")
t5 = named_target("T5")
for pi in automorphisms(t5):
    print("  " + " ".join(f"{'abcde'[v]}->{'abcde'[pi[v]]}" for v in range(5)))
print(f"vertex-transitive: {is_vertex_transitive(t5)}")
print("the rotation sending a to c also sends c to e, which the collapse normalization uses")
