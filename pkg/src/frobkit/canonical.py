"""Companion matrices, invariant factors, and canonical conjugations.

Invariant factors are computed two independent ways: `frobenius_form` runs a
cyclic decomposition directly over the ground field (maximal vector, then an
invariant complement cut out by a dual functional), while
`smith_invariant_factors` diagonalizes xI - A over F[x]. The two must agree,
and tests hold them to that.

The transpose conjugator g with g A^t g^(-1) = A comes from the Frobenius
transform and a symmetric Hankel matrix per companion block: for a companion
matrix C of f, C H = H C^t where H[r][c] is the coefficient of x^(r+c+1) in
f. A literal linear-system route is kept as `transpose_conjugator_by_solve`
for cross-checking.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import (
    EvenCharacteristicUnsupported,
    NotFiniteField,
    NotMonic,
    NotSquare,
)
from .fields import Field
from .matrix import (
    Mat,
    block_diag,
    inverse,
    kernel_basis,
    rank,
    solve_linear,
    unit_col,
)
from .poly import Poly, factor, poly_gcd, poly_lcm


def companion(f: Poly) -> Mat:
    """Companion matrix: ones under the diagonal, -coefficients in the last column."""
    if not f.is_monic:
        raise NotMonic("companion matrix wants a monic polynomial")
    F = f.field
    n = int(f.degree)
    cells = [F.zero] * (n * n)
    for i in range(n - 1):
        cells[(i + 1) * n + i] = F.one
    for i in range(n):
        cells[i * n + (n - 1)] = F.neg(f.coeff(i))
    return Mat.from_raw(F, n, n, cells)


def companion_block_matrix(field: Field, factors) -> Mat:
    return block_diag(field, [companion(f) for f in factors])


# -- Krylov helpers ------------------------------------------------------------


def _matvec(rows: list, v: list, F: Field) -> list:
    add, mul, zero = F.add, F.mul, F.zero
    out = []
    for row in rows:
        acc = zero
        for c, x in zip(row, v):
            if c != zero and x != zero:
                acc = add(acc, mul(c, x))
        out.append(acc)
    return out


def _rowmat(row: list, rows: list, F: Field) -> list:
    add, mul, zero = F.add, F.mul, F.zero
    n = len(row)
    out = [zero] * n
    for i in range(n):
        c = row[i]
        if c == zero:
            continue
        ri = rows[i]
        for j in range(n):
            if ri[j] != zero:
                out[j] = add(out[j], mul(c, ri[j]))
    return out


def annihilator_chain(a: Mat, v: list) -> tuple[Poly, list[list]]:
    """Monic annihilator of v under A and the chain v, Av, ..., A^(d-1)v."""
    F = a.field
    n = a.nrows
    add, sub, mul, inv, zero = F.add, F.sub, F.mul, F.inv, F.zero
    rows = a.rows_list()
    ech: list[tuple[int, list, list]] = []
    chain: list[list] = []
    w = list(v)
    j = 0
    while True:
        red = w[:]
        rep = [zero] * (j + 1)
        rep[j] = F.one
        for piv, bv, brep in ech:
            c = red[piv]
            if c != zero:
                for t in range(piv, n):
                    red[t] = sub(red[t], mul(c, bv[t]))
                for t in range(len(brep)):
                    rep[t] = sub(rep[t], mul(c, brep[t]))
        pivot = next((t for t in range(n) if red[t] != zero), None)
        if pivot is None:
            return Poly(F, rep), chain
        s = inv(red[pivot])
        if s != F.one:
            red = [mul(c, s) for c in red]
            rep = [mul(c, s) for c in rep]
        ech.append((pivot, red, rep))
        chain.append(w)
        w = _matvec(rows, w, F)
        j += 1


def poly_at_vector(f: Poly, a: Mat, v: list) -> list:
    """f(A) v by Horner on vectors; never forms f(A)."""
    F = a.field
    rows = a.rows_list()
    zero = F.zero
    acc = [zero] * len(v)
    add, mul = F.add, F.mul
    for c in reversed(f.coeffs):
        acc = _matvec(rows, acc, F)
        if c != zero:
            acc = [add(x, mul(c, y)) for x, y in zip(acc, v)]
    return acc


def _coprime_split(g: Poly, h: Poly) -> tuple[Poly, Poly]:
    """g1 | g, h1 | h with g1 h1 = lcm(g, h) and gcd(g1, h1) = 1."""
    d = poly_gcd(g, h)
    g1 = g // d
    while True:
        t = poly_gcd(g1, g // g1)
        if t.degree <= 0:
            break
        g1 = g1 * t
    h1 = poly_lcm(g, h) // g1
    return g1.monic(), h1.monic()


def _maximal_vector(a: Mat) -> tuple[list, Poly]:
    """A vector whose annihilator is the minimal polynomial of A."""
    F = a.field
    n = a.nrows
    best_v: list | None = None
    best_ann = Poly.one(F)
    for i in range(n):
        if best_ann.degree == n:
            break
        e = [F.zero] * n
        e[i] = F.one
        ann, _ = annihilator_chain(a, e)
        if best_v is None:
            best_v, best_ann = e, ann
            continue
        if (best_ann % ann).is_zero:
            continue
        combined = poly_lcm(best_ann, ann)
        g1, h1 = _coprime_split(best_ann, ann)
        u1 = poly_at_vector(best_ann // g1, a, best_v)
        u2 = poly_at_vector(ann // h1, a, e)
        cand = [F.add(x, y) for x, y in zip(u1, u2)]
        cand_ann, _ = annihilator_chain(a, cand)
        assert cand_ann == combined, "maximal-vector combination failed"
        best_v, best_ann = cand, combined
    if best_v is None:  # n == 0
        return [], Poly.one(F)
    return best_v, best_ann


# -- Frobenius (rational canonical) form ---------------------------------------


@dataclass(frozen=True)
class FrobeniusForm:
    """Invariant factors f_1 | ... | f_r and g with g A g^(-1) = blockdiag(companions)."""

    invariant_factors: tuple
    transform: Mat

    def block_matrix(self) -> Mat:
        return companion_block_matrix(self.transform.field, self.invariant_factors)

    def minimal_polynomial(self) -> Poly:
        if not self.invariant_factors:
            return Poly.one(self.transform.field)
        return self.invariant_factors[-1]


@dataclass(frozen=True)
class ElementaryDivisorForm:
    """Blocks (irreducible f, exponent s) with transform onto companion(f^s) blocks."""

    blocks: tuple  # of (Poly, int), canonically sorted
    transform: Mat

    def block_matrix(self) -> Mat:
        return companion_block_matrix(
            self.transform.field, [p**e for p, e in self.blocks]
        )


def _columns_matrix(field: Field, n: int, cols: list[list]) -> Mat:
    return Mat.from_raw(
        field, n, len(cols), [cols[j][i] for i in range(n) for j in range(len(cols))]
    )


def frobenius_form(a: Mat) -> FrobeniusForm:
    """Cyclic decomposition of A with an explicit, verified transform.

    Peels off one cyclic block per round: take w with annihilator equal to
    the minimal polynomial g (degree d), pick the functional psi dual to
    A^(d-1)w in a completed basis, and cut the invariant complement as the
    joint kernel of psi, psi A, ..., psi A^(d-1). The anti-triangular moment
    matrix [psi A^(i+j) w] makes the complement transversal to the chain, so
    the recursion always splits the space.
    """
    if not a.is_square:
        raise NotSquare("canonical form of a non-square matrix")
    F = a.field
    n = a.nrows
    factors_desc: list[Poly] = []
    chains_desc: list[list[list]] = []
    basis_cols = [[F.one if i == j else F.zero for i in range(n)] for j in range(n)]
    cur = a
    while cur.nrows > 0:
        np_ = cur.nrows
        w, g = _maximal_vector(cur)
        d = int(g.degree)
        rows = cur.rows_list()
        chain = [w]
        for _ in range(d - 1):
            chain.append(_matvec(rows, chain[-1], F))
        m_cols = _complete_basis(F, np_, chain)
        m_mat = _columns_matrix(F, np_, m_cols)
        psi_col = solve_linear(m_mat.transpose(), unit_col(F, np_, d - 1)).particular
        psi = psi_col.col(0)
        k_rows = []
        prow = psi
        for _ in range(d):
            k_rows.append(prow)
            prow = _rowmat(prow, rows, F)
        nker = kernel_basis(Mat(F, k_rows))
        assert len(nker) == np_ - d, "complement dimension off"
        # record this block in global coordinates
        chains_desc.append(
            [_combine(basis_cols, col, F) for col in chain]
        )
        factors_desc.append(g)
        if np_ - d == 0:
            break
        n_cols = [k.col(0) for k in nker]
        n_mat = _columns_matrix(F, np_, n_cols)
        restricted = solve_linear(n_mat, cur @ n_mat).particular
        assert restricted is not None, "complement not invariant"
        basis_cols = [_combine(basis_cols, col, F) for col in n_cols]
        cur = restricted
    factors = tuple(reversed(factors_desc))
    all_cols: list[list] = []
    for chain in reversed(chains_desc):
        all_cols.extend(chain)
    p_mat = _columns_matrix(F, n, all_cols) if n else Mat.identity(F, 0)
    g_mat = inverse(p_mat)
    block = companion_block_matrix(F, factors)
    if a @ p_mat != p_mat @ block:
        raise AssertionError("cyclic decomposition failed verification")
    for f1, f2 in zip(factors, factors[1:]):
        assert (f2 % f1).is_zero, "divisibility chain broken"
    return FrobeniusForm(factors, g_mat)


def _combine(basis_cols: list[list], coords: list, F: Field) -> list:
    add, mul, zero = F.add, F.mul, F.zero
    n = len(basis_cols[0]) if basis_cols else 0
    out = [zero] * n
    for c, col in zip(coords, basis_cols):
        if c == zero:
            continue
        for i in range(n):
            if col[i] != zero:
                out[i] = add(out[i], mul(c, col[i]))
    return out


def _complete_basis(F: Field, n: int, start_cols: list[list]) -> list[list]:
    """start_cols extended by unit vectors to a basis (greedy echelon)."""
    sub, mul, inv, zero = F.sub, F.mul, F.inv, F.zero
    ech: list[tuple[int, list]] = []
    chosen: list[list] = []

    def try_insert(col: list) -> bool:
        v = col[:]
        for piv, bv in ech:
            c = v[piv]
            if c != zero:
                for t in range(piv, n):
                    v[t] = sub(v[t], mul(c, bv[t]))
        pivot = next((t for t in range(n) if v[t] != zero), None)
        if pivot is None:
            return False
        s = inv(v[pivot])
        if s != F.one:
            v = [mul(c, s) for c in v]
        ech.append((pivot, v))
        ech.sort(key=lambda t: t[0])
        chosen.append(col)
        return True

    for col in start_cols:
        ok = try_insert(col)
        assert ok, "chain columns must be independent"
    for i in range(n):
        if len(chosen) == n:
            break
        e = [zero] * n
        e[i] = F.one
        try_insert(e)
    assert len(chosen) == n
    return chosen


# -- Smith normal form of xI - A (invariant-factor oracle) -----------------------


def smith_invariant_factors(a: Mat) -> tuple:
    """Nonunit diagonal of the Smith form of xI - A, in divisibility order.

    Pivots on the entry of least degree; when a remainder survives a
    division step the pass repeats, and the minimum degree strictly drops,
    so the loop terminates. After a pivot clears its row and column it must
    divide the remaining block; a violating row is folded in and reprocessed.
    """
    if not a.is_square:
        raise NotSquare("invariant factors of a non-square matrix")
    F = a.field
    n = a.nrows
    if n == 0:
        return ()
    M: list[list[Poly]] = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(Poly(F, (F.neg(a[i, j]), F.one)))
            else:
                row.append(Poly(F, (F.neg(a[i, j]),)))
        M.append(row)
    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if not M[i][j].is_zero and (
                        best is None or M[i][j].degree < M[best[0]][best[1]].degree
                    ):
                        best = (i, j)
            if best is None:
                break
            bi, bj = best
            if bi != t:
                M[t], M[bi] = M[bi], M[t]
            if bj != t:
                for row in M:
                    row[t], row[bj] = row[bj], row[t]
            piv = M[t][t]
            dirty = False
            for r in range(t + 1, n):
                if M[r][t].is_zero:
                    continue
                q = M[r][t] // piv
                if not q.is_zero:
                    for c2 in range(t, n):
                        M[r][c2] = M[r][c2] - q * M[t][c2]
                if not M[r][t].is_zero:
                    dirty = True
            for c in range(t + 1, n):
                if M[t][c].is_zero:
                    continue
                q = M[t][c] // piv
                if not q.is_zero:
                    for r2 in range(t, n):
                        M[r2][c] = M[r2][c] - q * M[r2][t]
                if not M[t][c].is_zero:
                    dirty = True
            if dirty:
                continue
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    if not (M[i][j] % piv).is_zero:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            for c2 in range(t, n):
                M[t][c2] = M[t][c2] + M[bad][c2]
    diag = [M[i][i].monic() for i in range(n)]
    return tuple(d for d in diag if d.degree > 0)


def elementary_divisor_form(a: Mat, seed: int = 0) -> ElementaryDivisorForm:
    """Split each invariant factor into prime powers and respin the transform."""
    F = a.field
    if not F.is_finite:
        raise NotFiniteField("elementary divisors need factorization over F_q")
    if F.characteristic == 2:
        raise EvenCharacteristicUnsupported("factorization implemented for odd q only")
    ff = frobenius_form(a)
    n = a.nrows
    p_mat = inverse(ff.transform)
    offset = 0
    blocks: list[tuple[Poly, int, list[list]]] = []
    rows = a.rows_list()
    for f in ff.invariant_factors:
        d = int(f.degree)
        w = p_mat.col(offset)
        offset += d
        for prime, exp in factor(f, seed=seed):
            q_poly = f // (prime**exp)
            u = poly_at_vector(q_poly, a, w)
            mdeg = exp * int(prime.degree)
            chain = [u]
            for _ in range(mdeg - 1):
                chain.append(_matvec(rows, chain[-1], F))
            blocks.append((prime, exp, chain))
    blocks.sort(key=lambda b: (b[0].sort_key(), b[1]))
    all_cols: list[list] = []
    for _, _, chain in blocks:
        all_cols.extend(chain)
    p2 = _columns_matrix(F, n, all_cols) if n else Mat.identity(F, 0)
    block_mat = companion_block_matrix(F, [p**e for p, e, _ in blocks])
    if a @ p2 != p2 @ block_mat:
        raise AssertionError("elementary divisor transform failed verification")
    return ElementaryDivisorForm(tuple((p, e) for p, e, _ in blocks), inverse(p2))


# -- transpose conjugation --------------------------------------------------------


def _companion_hankel(f: Poly) -> Mat:
    """Symmetric H with companion(f) H = H companion(f)^t; unit anti-diagonal."""
    F = f.field
    d = int(f.degree)
    coeffs = list(f.coeffs)  # a_0..a_d with a_d = 1

    def at(idx: int):
        return coeffs[idx] if idx <= d else F.zero

    return Mat.from_raw(
        F, d, d, [at(r + c + 1) for r in range(d) for c in range(d)]
    )


def transpose_conjugator(a: Mat) -> Mat:
    """Invertible g with g A^t g^(-1) = A, assembled from the Frobenius form."""
    if not a.is_square:
        raise NotSquare("transpose conjugation of a non-square matrix")
    F = a.field
    if a.nrows == 0:
        return Mat.identity(F, 0)
    ff = frobenius_form(a)
    s = block_diag(F, [_companion_hankel(f) for f in ff.invariant_factors])
    g1i = inverse(ff.transform)
    g = g1i @ s @ g1i.transpose()
    if g @ a.transpose() != a @ g:
        raise AssertionError("transpose conjugator failed verification")
    return g


def transpose_conjugator_by_solve(a: Mat, seed: int = 0, max_tries: int = 64) -> Mat:
    """The literal route: solve g A^t = A g, then pick an invertible solution.

    Greedy rank improvement over the kernel basis, with a bounded randomized
    fallback. An invertible solution exists over the ground field since A is
    conjugate to its transpose.
    """
    if not a.is_square:
        raise NotSquare("transpose conjugation of a non-square matrix")
    F = a.field
    n = a.nrows
    if n == 0:
        return Mat.identity(F, 0)
    at = a.transpose()
    cols = []
    for k in range(n):
        for l in range(n):
            col = [F.zero] * (n * n)
            for j in range(n):
                # (E_kl A^t)[k][j]
                col[k * n + j] = F.add(col[k * n + j], at[l, j])
            for i in range(n):
                # (A E_kl)[i][l]
                col[i * n + l] = F.sub(col[i * n + l], a[i, k])
            cols.append(col)
    op = Mat.from_raw(
        F, n * n, n * n,
        [cols[c][r] for r in range(n * n) for c in range(n * n)],
    )
    basis = kernel_basis(op)
    assert basis, "solution space of g A^t = A g is never zero"

    def to_mat(cells) -> Mat:
        return Mat.from_raw(F, n, n, list(cells))

    def is_invertible(m: Mat) -> bool:
        return rank(m) == n

    g = to_mat(basis[0].col(0))
    if not is_invertible(g):
        scalars = list(F.elements()) if F.is_finite else [F.coerce(k) for k in range(-4, 5)]
        for b in basis[1:]:
            if is_invertible(g):
                break
            bm = to_mat(b.col(0))
            best, best_rank = g, rank(g)
            for t in scalars:
                cand = g + bm.scale(t)
                r = rank(cand)
                if r > best_rank:
                    best, best_rank = cand, r
            g = best
    if not is_invertible(g):
        rng = random.Random(seed)
        for _ in range(max_tries):
            cells = [F.zero] * (n * n)
            for b in basis:
                t = F.random(rng)
                bc = b.col(0)
                cells = [F.add(c, F.mul(t, x)) for c, x in zip(cells, bc)]
            g = to_mat(cells)
            if is_invertible(g):
                break
        else:
            raise RuntimeError("no invertible solution found within retry bound")
    if g @ at != a @ g:
        raise AssertionError("transpose conjugator failed verification")
    return g


# -- centralizer and orbit dimensions ---------------------------------------------


def ad_matrix(a: Mat) -> Mat:
    """The n^2 x n^2 matrix of B -> [A, B] in the standard basis (row-major vec)."""
    if not a.is_square:
        raise NotSquare("ad of a non-square matrix")
    F = a.field
    n = a.nrows
    cells = [F.zero] * (n * n * n * n)
    width = n * n
    for k in range(n):
        for l in range(n):
            cidx = k * n + l
            for i in range(n):
                # (A E_kl)[i][l] = A[i][k]
                if a[i, k] != F.zero:
                    cells[(i * n + l) * width + cidx] = F.add(
                        cells[(i * n + l) * width + cidx], a[i, k]
                    )
            for j in range(n):
                # (E_kl A)[k][j] = A[l][j]
                if a[l, j] != F.zero:
                    cells[(k * n + j) * width + cidx] = F.sub(
                        cells[(k * n + j) * width + cidx], a[l, j]
                    )
    return Mat.from_raw(F, width, width, cells)


def centralizer_dimension(a: Mat, method: str = "kernel") -> int:
    """dim ker(ad_A), or the sum of min(deg f_i, deg f_j) over invariant factors."""
    if not a.is_square:
        raise NotSquare("centralizer of a non-square matrix")
    n = a.nrows
    if method == "kernel":
        if n == 0:
            return 0
        return n * n - rank(ad_matrix(a))
    if method == "invariant_factors":
        degs = [int(f.degree) for f in smith_invariant_factors(a)]
        return sum(min(d1, d2) for d1 in degs for d2 in degs)
    raise ValueError(f"unknown method {method!r}")


def orbit_dimension(a: Mat) -> int:
    """Dimension of the conjugation orbit: n^2 minus the centralizer dimension."""
    return a.nrows * a.nrows - centralizer_dimension(a)
