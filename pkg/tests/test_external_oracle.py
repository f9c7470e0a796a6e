"""Cross-validation against sympy, when it happens to be installed.

Not a dependency: these tests skip silently without sympy. They give a
third, fully external opinion on the charpoly pair, minimal polynomials,
determinants, factorization, and the invariant factors of xI - A.
"""

import random
from fractions import Fraction

import pytest

sympy = pytest.importorskip("sympy")

from sympy import GF as sGF, Matrix, Poly as sPoly, Rational, eye, symbols
from sympy import QQ as sQQ
from sympy.matrices.normalforms import invariant_factors

import frobkit as fk

x = symbols("x")


def _to_sympy_poly_mod(f, p):
    return [int(c) % p for c in reversed(f.coeffs)] or [0]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_charpoly_and_det_match_sympy_mod_p(p):
    F = fk.GF(p)
    rng = random.Random(p)
    for _ in range(40):
        n = rng.randint(1, 5)
        cells = [F.random(rng) for _ in range(n * n)]
        a = fk.Mat.from_raw(F, n, n, cells)
        sm = Matrix(n, n, cells)
        theirs = sPoly(sm.charpoly(x).as_expr(), x, domain=sGF(p))
        assert _to_sympy_poly_mod(fk.charpoly(a), p) == [
            int(c) % p for c in theirs.all_coeffs()
        ]
        assert _to_sympy_poly_mod(fk.charpoly_berkowitz(a), p) == [
            int(c) % p for c in theirs.all_coeffs()
        ]
        assert int(fk.det(a)) % p == int(sm.det()) % p


def test_charpoly_matches_sympy_over_rationals():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(1, 5)
        cells = [Fraction(rng.randint(-9, 9)) for _ in range(n * n)]
        a = fk.Mat(fk.QQ, [cells[i * n : (i + 1) * n] for i in range(n)])
        sm = Matrix(n, n, [Rational(c.numerator, c.denominator) for c in cells])
        theirs = [Rational(c) for c in sPoly(sm.charpoly(x).as_expr(), x).all_coeffs()]
        ours = [Rational(c.numerator, c.denominator) for c in reversed(fk.charpoly(a).coeffs)]
        assert ours == theirs


def test_minimal_polynomial_matches_sympy_invariant_factor():
    # the minimal polynomial is the last invariant factor of xI - A;
    # compute that externally and evaluate our polynomial with sympy
    rng = random.Random(12)
    for _ in range(20):
        n = rng.randint(1, 4)
        cells = [rng.randint(-3, 3) for _ in range(n * n)]
        a = fk.Mat(fk.QQ, [cells[i * n : (i + 1) * n] for i in range(n)])
        sm = Matrix(n, n, cells)
        pencil = x * eye(n) - sm
        last = sPoly(invariant_factors(pencil, domain=sQQ[x])[-1], x, domain=sQQ).monic()
        mp = fk.minimal_polynomial(a)
        ours = sPoly(
            [Rational(c.numerator, c.denominator) for c in reversed(mp.coeffs)],
            x,
            domain=sQQ,
        )
        assert ours.all_coeffs() == last.all_coeffs()
        # and it annihilates the matrix under sympy's own arithmetic
        value = sympy.zeros(n)
        for c in ours.all_coeffs():
            value = value * sm + c * eye(n)
        assert value == sympy.zeros(n)


@pytest.mark.parametrize("p", [3, 5])
def test_factorization_matches_sympy(p):
    F = fk.GF(p)
    rng = random.Random(100 + p)
    for trial in range(40):
        deg = rng.randint(1, 9)
        coeffs = [F.random(rng) for _ in range(deg)] + [1]
        f = fk.Poly(F, coeffs)
        ours = sorted(
            (tuple(int(c) for c in q.coeffs), m) for q, m in fk.factor(f, seed=trial)
        )
        sp = sPoly([int(c) for c in reversed(f.coeffs)], x, domain=sGF(p))
        theirs = sorted(
            (tuple(int(c) % p for c in reversed(fac.all_coeffs())), m)
            for fac, m in sp.factor_list()[1]
        )
        assert ours == theirs


def test_invariant_factors_match_sympy_over_rationals():
    rng = random.Random(13)
    for _ in range(15):
        n = rng.randint(1, 4)
        cells = [rng.randint(-4, 4) for _ in range(n * n)]
        a = fk.Mat(fk.QQ, [cells[i * n : (i + 1) * n] for i in range(n)])
        ours = fk.smith_invariant_factors(a)
        pencil = x * eye(n) - Matrix(n, n, cells)
        theirs = [
            sPoly(t, x, domain=sQQ).monic()
            for t in invariant_factors(pencil, domain=sQQ[x])
        ]
        theirs = [t for t in theirs if t.degree() > 0]
        ours_sym = [
            sPoly([Rational(c.numerator, c.denominator) for c in reversed(f.coeffs)], x, domain=sQQ)
            for f in ours
        ]
        assert [p_.all_coeffs() for p_ in ours_sym] == [p_.all_coeffs() for p_ in theirs]
        # frobenius_form agrees with the external invariant factors too
        ff = fk.frobenius_form(a)
        assert ff.invariant_factors == ours
