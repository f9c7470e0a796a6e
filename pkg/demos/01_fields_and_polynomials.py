"""Tour of the exact arithmetic layer: finite fields, rationals, polynomials.

Run with:  python demos/01_fields_and_polynomials.py
"""

from frobkit import GF, QQ, Poly, factor, is_irreducible, poly_gcd

# Prime fields hold canonical residues; everything is exact.
F3 = GF(3)
print("over GF(3): 2 + 2 =", F3.add(2, 2), " inv(2) =", F3.inv(2))

# Extension fields ship a fixed default modulus per (p, k), so results are
# reproducible across machines. GF(9) is F_3[u]/(u^2 + 1).
F9 = GF(9)
print("GF(9) modulus coefficients (low to high):", F9.modulus)
u = F9.encode([0, 1])
print("u * u =", F9.mul(u, u), " (the code for -1, since u^2 = -1)")

# Every element satisfies a^q = a.
assert all(F9.pow(a, 9) == a for a in F9.elements())
print("Frobenius identity a^9 = a holds for all of GF(9)")

# Polynomials are dense, low-to-high, and print like you'd write them.
x = Poly.x(QQ)
one = Poly.one(QQ)
f = (x - one) ** 3
print("\n(x-1)^3 over Q:", f.pretty())
q, r = divmod(f, x - one)
print("divided by (x-1):", q.pretty(), " remainder:", r.pretty())

# gcds are monic; derivatives know about the characteristic.
g = Poly(F3, [0, 0, 0, 1])  # x^3
print("\nd/dx x^3 over GF(3):", g.derivative().pretty(), " (3 x^2 = 0)")

# Factorization over odd finite fields: squarefree split (with the p-th
# root branch when the derivative dies), distinct degree, then randomized
# equal-degree splitting. The seed is part of the call, so output is stable.
h = Poly(F3, [0, 2, 0, 0, 0, 0, 1, 1])  # x^7 + x^6 + 2x
print("\nfactoring", h.pretty(), "over GF(3):")
for p, m in factor(h, seed=0):
    print("   ", p.pretty(), "^", m, " irreducible:", is_irreducible(p))

rebuilt = Poly.one(F3)
for p, m in factor(h, seed=0):
    rebuilt = rebuilt * p**m
assert rebuilt == h.monic()
print("product of the factors rebuilds the (monic) input exactly")

print("\ngcd(x^2 - 1, x - 1) over GF(3):", poly_gcd(Poly(F3, [2, 0, 1]), Poly(F3, [2, 1])).pretty())
