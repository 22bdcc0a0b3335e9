# coding: utf-8

# # NIM-reps of the GLM ring GLM(Γ, δ)
#
# Here Γ is an abelian group of even order and the non-invertible basis
# elements X_q are indexed by Γ/2Γ.  A NIM-rep is pinned down by its
# stabilizer subgroups and a permutation τ0 of the 2Γ-orbits.

# %%

from nimforge.fusion import glm_ring, verify_axioms
from nimforge.glm import (
    GlmParams,
    cycle_string,
    enumerate_tau0,
    glm_algebra_check,
    glm_build,
    glm_enumerate,
    sigma_action,
)
from nimforge.groups import enumerate_subgroups, parse_group

G = parse_group("Z2xZ2")
print(verify_axioms(glm_ring(G, 0)))

# Translation by a class of Γ/2Γ permutes the 2Γ-orbits inside each Γ-orbit.
# For the trivial stabilizer over Z2 x Z2 (where 2Γ is trivial) these
# permutations are the regular action:

# %%

subs = {h.members: h for h in enumerate_subgroups(G)}
s = sigma_action(G, 0, (subs[(0,)],))
for x in G.elements:
    print(G.label(x), cycle_string(s.sigma_of(x)))

# τ0 squares to σ_δ and commutes with every σ.  With δ = 0 the choices are
# the identity and the three double transpositions:

# %%

print([cycle_string(t) for t in enumerate_tau0(s)])

# # Catalogs
#
# Over Z2 x Z2 with δ = 0 there are 11 one-orbit classes and 5 two-orbit
# classes.

# %%

cat = glm_enumerate(G, 0)
print("one orbit", cat.dim_counts(1))
print("two orbits", cat.dim_counts(2))

# The two-orbit count depends on what counts as a relabeling of 2Γ-orbits.
# Moving each Γ-orbit by its own translation is a Γ-set isomorphism, and the
# built matrices confirm it: reps whose τ0 differ only by such a move are
# isomorphic.  Forbidding those moves ("literal") splits isomorphic reps.

# %%

for reading in ("gamma_set", "orbit_fixing", "literal"):
    print(reading, glm_enumerate(G, 0, orbits=2, relabeling=reading).dim_counts())

# # Algebra objects
#
# For one orbit with H = Γ and τ0 = e the single point carries every group
# element and every X_q as a self-loop.

# %%

p = GlmParams(G, 0, (subs[(0, 1, 2, 3)],), (0,))
check = glm_algebra_check(p, glm_build(p))
print(check.closed_form[0])

# With H of order 2 each point carries two X terms.  Summing the one-orbit
# formula over both 2Γ-orbits doubles them, which no single point shows.

# %%

p = GlmParams(G, 0, (subs[(0, 1)],), (0, 1))
check = glm_algebra_check(p, glm_build(p))
print([str(r) for r in check.readings])
print("summed:", check.aggregate, "| matches a point:", check.aggregate_matches_some_point)
