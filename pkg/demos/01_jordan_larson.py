# coding: utf-8

# # NIM-reps of the Jordan–Larson ring R(p, G)
#
# The ring has the elements of a finite group G (of square order) and p-1
# further basis elements X_1, ..., X_{p-1}.  This walk-through builds the ring
# for G = Z2 x Z2 and p = 3, lists its irreducible NIM-reps and looks at their
# orbit graphs.

# %%

import numpy as np

from nimforge.fusion import jl_ring, verify_axioms
from nimforge.groups import enumerate_subgroups, parse_group
from nimforge.jl import JlParams, block_coefficients, jl_build, jl_enumerate, orbit_blocks
from nimforge.nimrep import nim_orbit_graph, to_dot

G = parse_group("Z2xZ2")
ring = jl_ring(G, 3)
print(ring.labels)
print(verify_axioms(ring))

# X_1 X_1 is twice X_2, and X_1 X_2 is the sum of the group:

# %%

x1, x2 = ring.index("X_1"), ring.index("X_2")
print(ring.format(ring.N[x1, x1]))
print(ring.format(ring.N[x1, x2]))

# # One orbit
#
# With a single G-orbit the stabilizer H must have |H|^2/|G| a square, so H is
# either an order-2 subgroup (a 2-dimensional rep) or G itself (dimension 1,
# where X_1 acts by 2).

# %%

cat = jl_enumerate(G, 3)
for e in cat.entries:
    if e.params.m == 1:
        print(e.params.describe(), "dim", e.dim, "X_1 =", e.rep.matrix("X_1").tolist())

# # Three orbits
#
# Orbit j is sent to orbit j+k by X_k.  The coefficients on each orbit pair
# form a 3x3 matrix; for stabilizers ({e}, G, G) they are:

# %%

subs = {h.members: h for h in enumerate_subgroups(G)}
params = JlParams(G, 3, (subs[(0,)], subs[(0, 1, 2, 3)], subs[(0, 1, 2, 3)]))
rep = jl_build(params)
blocks = orbit_blocks(params)
print(block_coefficients(rep, blocks, 1))
print(block_coefficients(rep, blocks, 2))

# Every three-orbit rep has the same orbit graph: a triangle with X_1 going
# one way round and X_2 the other.

# %%

print(to_dot(nim_orbit_graph(rep), "triangle"))

# # How many three-orbit classes?
#
# The classifier keys its catalog by matrix isomorphism.  When all three
# stabilizers have order 2 there are 11 classes.  Grouping them by the
# multiset of stabilizers only would give 10: the tuples (F1, F2, F3) and
# (F1, F3, F2) share a multiset, yet the X_1 cycle visits the subgroups in
# opposite orders, and no relabeling of the module basis carries one to the
# other.

# %%

three = [e for e in cat.entries if e.params.m == 3 and all(h.order == 2 for h in e.params.subgroups)]
print(len(three), "matrix classes,", len({e.theorem_class for e in three}), "multiset classes")
for key, n in cat.relation_mismatches():
    print("multiset", key, "splits into", n, "classes")

# # p = 4
#
# With p = 4 there can be 1, 2 or 4 orbits.  The self-loops in the orbit graph
# show which X_k fix an orbit.

# %%

cat4 = jl_enumerate(G, 4)
for m in (1, 2, 4):
    e = next(e for e in cat4.entries if e.params.m == m)
    g = nim_orbit_graph(e.rep)
    loops = sorted({g.ring_labels[b] for s, t, b, _ in g.edges if s == t})
    print(m, "orbits:", e.params.describe(), "loops", loops)

print(np.bincount([e.dim for e in cat4.entries]))
