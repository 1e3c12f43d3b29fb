"""Build flag complexes with prescribed torsion and look at what they contain.

Run with ``python demos/torsion_tour.py`` after installing the package.
"""

from flagtorsion.construction import BinaryDecomposition, build_group_complex, build_xm
from flagtorsion.homology import homology

# %% X_m for a few m: the binary digits of m decide the shape
for m in (2, 5, 12, 37):
    dec = BinaryDecomposition.of(m)
    c, cert = build_xm(m)
    print(f"m={m:3d} exponents={dec.exponents} f={c.fvector()} maxdeg={cert.maxdeg} H_1={cert.h1}")

# %% any finite abelian group, as a divisibility chain of invariant factors
group = build_group_complex([2, 6])
print("Z/2 + Z/6 ->", homology(group, 1))
