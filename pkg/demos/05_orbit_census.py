"""Similarity classes and orbit sizes over a small finite field.

Run with:  python demos/05_orbit_census.py
"""

import itertools

from frobkit import GF, Mat, Poly, charpoly, inverse, orbit_stats, rank

F = GF(3)

# every similarity class with charpoly x^2: the zero matrix and the
# nilpotent rank-one class, of sizes 1 and 8 (they partition the 9
# square-zero matrices)
print("classes with charpoly x^2 over GF(3):")
for row in orbit_stats(Poly(F, [0, 0, 1])):
    print(
        "  invariant factors", [f.pretty() for f in row.invariant_factors],
        " centralizer_dim", row.centralizer_dim,
        " orbit_dim", row.orbit_dim,
        " size", row.class_size,
    )

# the x^2 fiber translated by the identity: same shape for (x-1)^2
print("\nclasses with charpoly (x-1)^2 = x^2+x+1... coefficients (1,1,1):")
for row in orbit_stats(Poly(F, [1, 1, 1])):
    print("  size", row.class_size, " orbit_dim", row.orbit_dim)

# an irreducible charpoly gives one cyclic class; its centralizer is the
# multiplicative group of GF(9), so the class has 48/8 = 6 elements
print("\nclasses with charpoly x^2+1:")
for row in orbit_stats(Poly(F, [1, 0, 1])):
    print("  size", row.class_size, " centralizer_dim", row.centralizer_dim)

# cross-check the x^2 numbers by raw brute force over all 81 matrices
els = list(F.elements())
all_mats = [Mat.from_raw(F, 2, 2, list(c)) for c in itertools.product(els, repeat=4)]
gl = [(g, inverse(g)) for g in all_mats if rank(g) == 2]
target = Poly(F, [0, 0, 1])
fiber = [a for a in all_mats if charpoly(a) == target]
orbits = set()
for a in fiber:
    orbits.add(frozenset((g @ a @ gi).cells for g, gi in gl))
print("\nbrute force: |GL_2(F_3)| =", len(gl), " fiber size =", len(fiber))
print("orbit sizes:", sorted(len(o) for o in orbits), "-> sum", sum(len(o) for o in orbits))
