# coding: utf-8

# # Checking the classifiers by brute force
#
# The oracle knows nothing about stabilizers or τ0.  It lists every
# permutation action of the invertible group on d points, then solves for
# non-negative integer matrices of the remaining basis elements that satisfy
# rigidity and the fusion rules.  Its output is compared with the classifier
# catalogs by matrix isomorphism.

# %%

import json
import time

from nimforge.fusion import glm_ring, jl_ring, ring_from_json
from nimforge.glm import glm_enumerate
from nimforge.groups import parse_group
from nimforge.jl import jl_enumerate
from nimforge.oracle import SearchConfig, cross_check, enumerate_all

# The Ising ring is TY(Z2): one irreducible NIM-rep up to dimension 3.

# %%

g = parse_group("Z2")
found = enumerate_all(jl_ring(g, 2), SearchConfig(max_dim=3))
print(cross_check([e.rep for e in jl_enumerate(g, 2).entries], found).summary())

# # A larger run
#
# All NIM-reps of R(3, Z2 x Z2) up to dimension 6, searched without any
# structural hints:

# %%

G = parse_group("Z2xZ2")
t0 = time.monotonic()
found = enumerate_all(jl_ring(G, 3), SearchConfig(max_dim=6))
print(len(found), "classes in", round(time.monotonic() - t0, 2), "s")
report = cross_check([e.rep for e in jl_enumerate(G, 3).entries], found)
print(report.summary())

# Dropping one catalog entry is caught:

# %%

cat = [e.rep for e in glm_enumerate(G, 0).entries if e.dim <= 4]
found = enumerate_all(glm_ring(G, 0), SearchConfig(max_dim=4))
print(cross_check(cat[1:], found).summary())

# # Any ring given as JSON
#
# The Fibonacci ring (t t = 1 + t) has no invertible besides the unit, so
# no entry cap can be derived and one must be passed.

# %%

fib = ring_from_json(json.dumps({
    "basis": ["1", "t"], "unit": 0, "dual": [0, 1],
    "N": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 1]],
}))
for m in enumerate_all(fib, SearchConfig(max_dim=4, entry_bound=3)):
    print(m.dim, m.matrix("t").tolist())
