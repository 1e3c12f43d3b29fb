"""The 11-vertex flag projective plane: Betti tables and edge density."""

from flagtorsion.betti import SubsetScanner, betti_table, semicontinuity_check, torsion_primes
from flagtorsion.construction import rp2_flag
from flagtorsion.density import essential_density

c = rp2_flag()
scan = SubsetScanner(c)  # shared memo, so each induced subcomplex is reduced once

# %% over Q and over F_2 the tables differ in the last columns
print("char 0")
print(betti_table(c, 0, scanner=scan).to_text())
print("char 2")
print(betti_table(c, 2, scanner=scan).to_text())
res = semicontinuity_check(c, 2, scanner=scan)
print("positions where F_2 is larger:", res.strict)
print("torsion primes:", torsion_primes(c, scanner=scan).as_dict())

# %% densest subgraph on each number of vertices
rep = essential_density(c.skeleton_graph())
for size, (edges, witness) in rep.per_size_max_edges.items():
    print(f"{size:2d} vertices: {edges:2d} edges on {[v + 1 for v in witness]}")
print("m(G) =", rep.density, "strictly balanced:", rep.strictly_balanced)
