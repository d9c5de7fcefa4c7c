"""
Smoothing components and topological smoothing data
====================================================

Each subset of branch points, up to complement, gives a hyperplane in
T^1(-1).  The topological side counts 1 + 2^(2g) smoothing data for even g.
"""

from hypercone.components import enumerate_components
from hypercone.topology import (
    isotropic_subgroups, j_invariant, link_homology, milnor_fiber_homology, smoothing_data_count,
)

comps = enumerate_components(range(1, 7))
print(len(comps), "classes,", len({c.hyperplane for c in comps}), "distinct hyperplanes")
for c in comps[:4]:
    print("  ", c.subset.indices, c.hyperplane, c.parity)

print("H_1 of the link:", link_homology(2))
print("isotropic subgroups (order, generator):", isotropic_subgroups(2))
print("smoothing data for g = 2, 4:", smoothing_data_count(2), smoothing_data_count(4))

for e in range(4):
    r = milnor_fiber_homology(2, e)
    print(f"e = {e}: {r['case']:4s} H1(F) = {r['H1F']}, H2(F) = {r['H2F']}")

# even classes map bijectively to (Z/2)^4
even = [c for c in comps if c.parity == "even"]
print(len({j_invariant(c.subset) for c in even}), "distinct J-invariants on", len(even), "even classes")
