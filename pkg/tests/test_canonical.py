import random

import pytest

from frobkit import (
    GF,
    QQ,
    EvenCharacteristicUnsupported,
    Mat,
    NotFiniteField,
    NotMonic,
    Poly,
    centralizer_dimension,
    charpoly,
    companion,
    elementary_divisor_form,
    frobenius_form,
    inverse,
    minimal_polynomial,
    orbit_dimension,
    rank,
    smith_invariant_factors,
    transpose_conjugator,
    transpose_conjugator_by_solve,
)
from frobkit.verify import random_matrix

F3 = GF(3)
E21 = Mat(F3, [[0, 0], [1, 0]])


def x3(*coeffs):
    return Poly(F3, coeffs)


# -- companion matrices --------------------------------------------------------


def test_companion_cubic_layout():
    c = companion(Poly(QQ, [-1, 3, -3, 1]))
    assert c.to_lists() == [[0, 0, 1], [1, 0, -3], [0, 1, 3]]


def test_companion_linear():
    assert companion(Poly(QQ, [-5, 1])).to_lists() == [[5]]


def test_companion_degenerate():
    c = companion(Poly.one(QQ))
    assert c.nrows == c.ncols == 0
    assert charpoly(c) == Poly.one(QQ)


def test_companion_requires_monic():
    with pytest.raises(NotMonic):
        companion(Poly(QQ, [1, 2]))


def test_companion_charpoly_equals_minpoly():
    rng = random.Random(0)
    for _ in range(40):
        F = GF(rng.choice([3, 5, 9]))
        deg = rng.randint(1, 6)
        f = Poly(F, [F.random(rng) for _ in range(deg)] + [F.one])
        c = companion(f)
        assert charpoly(c) == f
        assert minimal_polynomial(c) == f


# -- invariant factors ------------------------------------------------------------


def test_smith_scalar_matrix():
    assert smith_invariant_factors(Mat.identity(F3, 2)) == (x3(2, 1), x3(2, 1))


def test_smith_companion_single_factor():
    f = x3(1, 0, 1)
    assert smith_invariant_factors(companion(f)) == (f,)


def test_smith_distinct_eigenvalues():
    assert smith_invariant_factors(Mat.diag(F3, [1, 2])) == (x3(2, 0, 1),)


def test_smith_zero_by_zero():
    assert smith_invariant_factors(Mat.identity(F3, 0)) == ()


def test_frobenius_form_of_companion():
    f = x3(1, 2, 0, 1)
    c = companion(f)
    ff = frobenius_form(c)
    assert ff.invariant_factors == (f,)
    assert ff.transform @ c @ inverse(ff.transform) == ff.block_matrix()


def test_frobenius_identity_two_blocks():
    ff = frobenius_form(Mat.identity(F3, 2))
    assert ff.invariant_factors == (x3(2, 1), x3(2, 1))
    assert rank(ff.transform) == 2


def test_frobenius_round_trip_random():
    rng = random.Random(1)
    for _ in range(150):
        F = GF(rng.choice([3, 5, 9]))
        n = rng.randint(0, 6)
        a = random_matrix(F, n, rng)
        ff = frobenius_form(a)
        g = ff.transform
        assert g @ a @ inverse(g) == ff.block_matrix()
        # divisibility chain and product
        prod = Poly.one(F)
        for f1, f2 in zip(ff.invariant_factors, ff.invariant_factors[1:]):
            assert (f2 % f1).is_zero
        for f in ff.invariant_factors:
            prod = prod * f
        assert prod == charpoly(a)
        assert ff.minimal_polynomial() == minimal_polynomial(a)
        # independent oracle
        assert smith_invariant_factors(a) == ff.invariant_factors


def test_frobenius_round_trip_rationals():
    rng = random.Random(2)
    for _ in range(25):
        a = random_matrix(QQ, rng.randint(0, 4), rng)
        ff = frobenius_form(a)
        assert ff.transform @ a @ inverse(ff.transform) == ff.block_matrix()
        assert smith_invariant_factors(a) == ff.invariant_factors


# -- elementary divisors -----------------------------------------------------------


def test_elementary_distinct_eigenvalues():
    ed = elementary_divisor_form(Mat.diag(F3, [1, 2]))
    assert ed.blocks == ((x3(1, 1), 1), (x3(2, 1), 1))


def test_elementary_companion_of_prime_power():
    f = x3(1, 0, 1)
    c = companion(f**2)
    ed = elementary_divisor_form(c)
    assert ed.blocks == ((f, 2),)


def test_elementary_zero_matrix():
    ed = elementary_divisor_form(Mat.zeros(F3, 2))
    assert ed.blocks == ((x3(0, 1), 1), (x3(0, 1), 1))


def test_elementary_transform_verifies():
    rng = random.Random(3)
    for _ in range(60):
        F = GF(rng.choice([3, 5, 9]))
        n = rng.randint(0, 5)
        a = random_matrix(F, n, rng)
        ed = elementary_divisor_form(a)
        assert ed.transform @ a @ inverse(ed.transform) == ed.block_matrix()
        prod = Poly.one(F)
        for p, e in ed.blocks:
            prod = prod * p**e
        assert prod == charpoly(a)
        # canonical ordering is sorted
        keys = [(p.sort_key(), e) for p, e in ed.blocks]
        assert keys == sorted(keys)


def test_elementary_requires_odd_finite_field():
    with pytest.raises(NotFiniteField):
        elementary_divisor_form(Mat.identity(QQ, 2))
    with pytest.raises(EvenCharacteristicUnsupported):
        elementary_divisor_form(Mat.identity(GF(4), 2))


# -- transpose conjugation ------------------------------------------------------------


def test_transpose_conjugator_symmetric_matrix():
    a = Mat(F3, [[1, 2], [2, 0]])
    g = transpose_conjugator(a)
    assert g @ a.transpose() == a @ g
    assert rank(g) == 2


def test_transpose_conjugator_nilpotent_example():
    g = transpose_conjugator(E21)
    assert g @ E21.transpose() == E21 @ g
    # the antidiagonal swap works too, as a sanity anchor
    swap = Mat(F3, [[0, 1], [1, 0]])
    assert swap @ E21.transpose() @ inverse(swap) == E21


def test_transpose_conjugator_random_both_routes():
    rng = random.Random(4)
    for _ in range(60):
        F = GF(rng.choice([3, 5, 9]))
        n = rng.randint(0, 5)
        a = random_matrix(F, n, rng)
        for g in (transpose_conjugator(a), transpose_conjugator_by_solve(a)):
            assert rank(g) == n
            assert g @ a.transpose() == a @ g


def test_transpose_conjugator_rationals():
    rng = random.Random(5)
    for _ in range(15):
        a = random_matrix(QQ, rng.randint(1, 4), rng)
        g = transpose_conjugator(a)
        assert g @ a.transpose() == a @ g
        g2 = transpose_conjugator_by_solve(a)
        assert g2 @ a.transpose() == a @ g2


# -- centralizer dimensions -----------------------------------------------------------


def test_centralizer_scalar():
    assert centralizer_dimension(Mat.identity(F3, 2)) == 4
    assert orbit_dimension(Mat.identity(F3, 2)) == 0


def test_centralizer_nilpotent():
    assert centralizer_dimension(E21) == 2
    assert orbit_dimension(E21) == 2


def test_centralizer_cyclic():
    c = companion(x3(1, 1, 0, 1))
    assert centralizer_dimension(c) == 3
    assert centralizer_dimension(c, method="invariant_factors") == 3


def test_centralizer_methods_agree():
    rng = random.Random(6)
    for _ in range(60):
        F = GF(rng.choice([3, 5]))
        a = random_matrix(F, rng.randint(1, 5), rng)
        assert centralizer_dimension(a, "kernel") == centralizer_dimension(
            a, "invariant_factors"
        )


def test_frobenius_recovers_planted_invariant_factors():
    # build g^-1 * blockdiag(companions of a divisibility chain) * g for a
    # random invertible g; the chain must come back exactly
    from frobkit import block_diag, poly_lcm
    from frobkit.verify import random_invertible

    rng = random.Random(8)
    for _ in range(80):
        F = GF(rng.choice([3, 5, 9]))
        x = Poly.x(F)
        # a chain f_1 | f_2 | ... built by multiplying in random monic factors
        chain = []
        current = Poly.one(F)
        for _ in range(rng.randint(1, 3)):
            deg = rng.randint(1, 2)
            extra = Poly(F, [F.random(rng) for _ in range(deg)] + [F.one])
            current = current * extra
            chain.append(current)
            if sum(int(f.degree) for f in chain) > 6:
                chain.pop()
                break
        chain = [f for f in chain if f.degree > 0]
        if not chain:
            continue
        n = sum(int(f.degree) for f in chain)
        block = block_diag(F, [companion(f) for f in chain])
        g = random_invertible(F, n, rng)
        a = inverse(g) @ block @ g
        ff = frobenius_form(a)
        assert ff.invariant_factors == tuple(chain)
        assert smith_invariant_factors(a) == tuple(chain)
        assert minimal_polynomial(a) == chain[-1]


def test_frobenius_on_scalar_and_derogatory_matrices():
    # worst-case invariant structure: many repeated blocks
    from frobkit import block_diag
    from frobkit.verify import random_invertible

    rng = random.Random(9)
    F = GF(3)
    f = Poly(F, [1, 1])  # x + 1
    for copies in (2, 3, 4):
        block = block_diag(F, [companion(f)] * copies)
        g = random_invertible(F, copies, rng)
        a = inverse(g) @ block @ g
        ff = frobenius_form(a)
        assert ff.invariant_factors == tuple([f] * copies)
        assert centralizer_dimension(a) == copies * copies


def test_companion_hankel_intertwines_transpose():
    # companion(f) H = H companion(f)^t, with H the symmetric coefficient Hankel
    from frobkit.canonical import _companion_hankel

    rng = random.Random(7)
    for _ in range(50):
        F = GF(rng.choice([3, 5, 9]))
        deg = rng.randint(1, 6)
        f = Poly(F, [F.random(rng) for _ in range(deg)] + [F.one])
        c = companion(f)
        h = _companion_hankel(f)
        assert h == h.transpose()
        assert rank(h) == deg
        assert c @ h == h @ c.transpose()
