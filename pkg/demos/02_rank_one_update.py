"""The rank-one update: charpoly coefficients of A + lam * v(x)phi in O(n^2).

The principal minor sums c_k of the perturbed matrix are

    c_k' = c_k + lam * sum_{j < k} (-1)^j c_(k-1-j) * (phi A^j v),

so once the moments phi A^j v are known (n matrix-vector products), sweeping
lam costs O(n^2) per value instead of a fresh O(n^3) charpoly. This script
checks the identity against both direct algorithms and times the sweep.

Run with:  python demos/02_rank_one_update.py
"""

import random
import time

from frobkit import (
    GF,
    charpoly,
    charpoly_berkowitz,
    coeffs_from_charpoly,
    faddeev_chain,
    moments,
    outer,
    poly_from_coeffs,
    update_coefficients,
)
from frobkit.verify import random_col, random_matrix, random_row

F = GF(5)
n = 8
rng = random.Random(1)

a = random_matrix(F, n, rng)
v = random_col(F, n, rng)
phi = random_row(F, n, rng)

c = coeffs_from_charpoly(charpoly(a))
m = moments(a, v, phi, n)
print("moments phi A^j v:", list(m))

# one update, checked against both direct algorithms
lam = 3
c_new = update_coefficients(c, m, lam)
perturbed = a + outer(v, phi).scale(lam)
assert c_new == coeffs_from_charpoly(charpoly(perturbed))
assert c_new == coeffs_from_charpoly(charpoly_berkowitz(perturbed))
print("updated charpoly(A + 3 v(x)phi):", poly_from_coeffs(F, c_new).pretty())

# sweep every lambda in the field, both ways, and time it
t0 = time.perf_counter()
swept = [update_coefficients(c, m, lam) for lam in F.elements()]
t_update = time.perf_counter() - t0

t0 = time.perf_counter()
direct = [
    coeffs_from_charpoly(charpoly(a + outer(v, phi).scale(lam)))
    for lam in F.elements()
]
t_direct = time.perf_counter() - t0

assert swept == direct
print(f"\nsweep over {F.order} lambdas: update {t_update*1e6:.0f}us, "
      f"direct recompute {t_direct*1e6:.0f}us ({t_direct/t_update:.1f}x)")

# the same coefficients drive the matrix chain C_(k+1) = c_k I - A C_k,
# whose last element vanishes: the Cayley-Hamilton theorem in matrix form.
chain = faddeev_chain(a)
print("\nchain length:", len(chain), " final element is zero:", chain[-1].is_zero)

# a vanishing moment sequence freezes the charpoly for every lambda
from frobkit import Poly, companion, unit_col, unit_row

shift = companion(Poly.x(F) ** n)  # nilpotent shift block
v2, p2 = unit_col(F, n, n - 1), unit_row(F, n, 0)
m2 = moments(shift, v2, p2, n)
assert m2.all_zero
c_shift = coeffs_from_charpoly(charpoly(shift))
for lam in F.elements():
    assert update_coefficients(c_shift, m2, lam) == c_shift
print("a moment-null pair leaves every coefficient fixed for every lambda")
