"""Geometry of triples (A, v, phi): certificates, equivalence, filtrations.

Run with:  python demos/04_triple_geometry.py
"""

from frobkit import (
    GF,
    GroupElement,
    Mat,
    Poly,
    Triple,
    act,
    commutator,
    commutator_range,
    direct_sum_check,
    equivalence_report,
    filtration,
    filtration_union_check,
    moment_vanishing,
    outer,
    pairing,
    rank_one_shift,
    triple_charpoly,
    twist,
    unit_col,
    unit_row,
)

F = GF(3)
E21 = Mat(F, [[0, 0], [1, 0]])
e1, e2 = unit_col(F, 2, 0), unit_col(F, 2, 1)
e1s, e2s = unit_row(F, 2, 0), unit_row(F, 2, 1)

# two triples over the same nilpotent matrix, with opposite fates
inside = Triple(E21, e2, e1s)
outside = Triple(E21, e1, e2s)

mv = moment_vanishing(inside)
print("inside: moments vanish?", mv.vanishes)
cr = commutator_range(inside)
print("inside: v(x)phi = [A, B] with B =", cr.witness.to_lists())
assert commutator(E21, cr.witness) == outer(e2, e1s)

mv2 = moment_vanishing(outside)
print("outside: first nonzero moment at index", mv2.witness_index)
print("outside: in the commutator range?", commutator_range(outside).member)

# the three-way equivalence: all moments vanish <=> the charpoly never moves
# under A -> A + lam v(x)phi <=> it stays put for a single nonzero lam
for name, t in (("inside", inside), ("outside", outside)):
    rep = equivalence_report(t)
    print(f"{name}: vanish={rep.all_vanish} stable_all={rep.stable_all} "
          f"stable_some={rep.stable_some} (consistent={rep.consistent})")

shifted = rank_one_shift(outside, 1)
print("shifting 'outside' by lam=1 moves charpoly:",
      triple_charpoly(outside).pretty(), "->", triple_charpoly(shifted).pretty())

# twisting by a function coprime to the charpoly preserves everything
tw = twist(outside, Poly(F, [1, 1]))  # f = x + 1
print("twist by x+1 sends (v, phi) to", tw.v.col(0), tw.phi.row(0))

# the extended group: sign -1 acts through the transpose
e = GroupElement(Mat(F, [[1, 1], [0, 1]]), -1)
acted = act(e, outside)
print("acting with sign -1 gives A' =", acted.a.to_lists())
assert triple_charpoly(acted) == triple_charpoly(outside)

# the moment-null pairs over a companion block are a union of subspace sums:
# v in f(A)^i V and phi annihilating f(A)^(s-i) V, for some i
x = Poly.x(F)
filt = filtration(x, 2)
print("\nfiltration of companion(x^2): dims", filt.dims)
print("U_1 =", filt.spaces[1].to_lists(), " U*_1 =", filt.dual_spaces[1].to_lists())
chk = filtration_union_check(x, 2)
print("union structure over all", chk.pairs_checked, "pairs:",
      "holds," if chk.ok else "FAILS,", chk.members, "members")

chk2 = filtration_union_check(Poly(F, [1, 0, 1]), 2, pair_bound=3**8)
print("same for (x^2+1)^2 (n = 4,", chk2.pairs_checked, "pairs):", chk2.ok)

# direct sums: membership for A1 (+) A2 forces blockwise membership, and
# blockwise witnesses assemble block-diagonally
res = direct_sum_check(E21, Mat(F, [[0]]))
print("\ndirect-sum inclusions over", res.pairs_checked, "pairs: ok =", res.ok)

print("\npairing phi v of the inside pair:", pairing(inside.v, inside.phi))
