"""Fraction-free linear algebra over the domain backends.

Matrices are lists of rows of ring elements. Bareiss elimination keeps all
intermediate entries in the ring (every division is exact).
"""

from __future__ import annotations

from itertools import combinations


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def bareiss(ring, A):
    """Fraction-free row echelon form.

    Returns ``(rank, rows, cols, minor)`` where ``rows``/``cols`` index an
    ``rank x rank`` submatrix with nonzero determinant ``minor`` (up to sign).
    """
    M = [list(r) for r in A]
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    order = list(range(nrows))
    prev = ring.one()
    r = 0
    cols = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if not ring.is_zero(M[i][c]):
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
            order[r], order[piv] = order[piv], order[r]
        p = M[r][c]
        for i in range(r + 1, nrows):
            e = M[i][c]
            row_i = M[i]
            row_r = M[r]
            for j in range(c + 1, ncols):
                val = ring.sub(ring.mul(p, row_i[j]), ring.mul(e, row_r[j]))
                row_i[j] = ring.exquo(val, prev) if prev != ring.one() else val
            row_i[c] = ring.zero()
        prev = p
        cols.append(c)
        r += 1
    minor = prev if r else ring.one()
    return r, sorted(order[:r]), cols, minor


def rank(ring, A) -> int:
    if not A:
        return 0
    return bareiss(ring, A)[0]


def det(ring, A):
    n = len(A)
    if n == 0:
        return ring.one()
    M = [list(r) for r in A]
    sign = 1
    prev = ring.one()
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not ring.is_zero(M[i][c]):
                piv = i
                break
        if piv is None:
            return ring.zero()
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        p = M[c][c]
        for i in range(c + 1, n):
            e = M[i][c]
            for j in range(c + 1, n):
                val = ring.sub(ring.mul(p, M[i][j]), ring.mul(e, M[c][j]))
                M[i][j] = ring.exquo(val, prev)
            M[i][c] = ring.zero()
        prev = p
    return prev if sign > 0 else ring.neg(prev)


def adjugate(ring, A):
    """``adj(A)`` with ``A * adj(A) = det(A) * I``."""
    n = len(A)
    if n == 1:
        return [[ring.one()]]
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[A[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            d = det(ring, minor)
            out[j][i] = d if (i + j) % 2 == 0 else ring.neg(d)
    return out


def submatrix(A, rows, cols):
    return [[A[i][j] for j in cols] for i in rows]


def minors_gcd(ring, A, r, cap: int = 400, start=None):
    """gcd of (up to ``cap``) ``r x r`` minors of ``A``.

    ``start`` is a known nonzero minor used to seed the gcd. Returns
    ``(g, exhaustive)``; when ``exhaustive`` is False, ``g`` is only a
    multiple of the true gcd.
    """
    if r == 0:
        return ring.one(), True
    g = ring.zero() if start is None else start
    nrows, ncols = len(A), len(A[0])
    count = 0
    for rows in combinations(range(nrows), r):
        for cols in combinations(range(ncols), r):
            if ring.is_unit(g):
                return g, True
            if count >= cap:
                return g, False
            count += 1
            d = det(ring, submatrix(A, rows, cols))
            if not ring.is_zero(d):
                g = ring.gcd(g, d)
    return g, True


def matmul(ring, A, B):
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = []
        for j in range(ncols):
            acc = ring.zero()
            for k in range(inner):
                a = row[k]
                if not ring.is_zero(a):
                    b = B[k][j]
                    if not ring.is_zero(b):
                        acc = ring.add(acc, ring.mul(a, b))
            new.append(acc)
        out.append(new)
    return out


def vecmat(ring, v, B, ncols):
    out = [ring.zero()] * ncols
    for a, row in zip(v, B):
        if ring.is_zero(a):
            continue
        for j in range(ncols):
            if not ring.is_zero(row[j]):
                out[j] = ring.add(out[j], ring.mul(a, row[j]))
    return out


def identity(ring, n):
    return [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]


def nullspace(ring, A, ncols):
    """Basis over the fraction field of ``{y : A y = 0}``, as integral
    vectors with the content removed. Returned as a list of columns."""
    M = [list(r) for r in A if any(not ring.is_zero(e) for e in r)]
    nrows = len(M)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not ring.is_zero(M[i][c])), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        M[r] = _primitive(ring, M[r])
        p = M[r][c]
        for i in range(nrows):
            e = M[i][c]
            if i == r or ring.is_zero(e):
                continue
            g = ring.gcd(p, e)
            pg, eg = ring.exquo(p, g), ring.exquo(e, g)
            M[i] = _primitive(ring, [ring.sub(ring.mul(pg, a), ring.mul(eg, b)) for a, b in zip(M[i], M[r])])
        pivots.append(c)
        r += 1
    out = []
    pset = set(pivots)
    for f in range(ncols):
        if f in pset:
            continue
        # y_f = 1 scaled by every pivot, y_pc = -M[k][f] * (prod / pivot_k)
        d = ring.one()
        for k, c in enumerate(pivots):
            d = _lcm(ring, d, M[k][c])
        y = [ring.zero()] * ncols
        y[f] = d
        for k, c in enumerate(pivots):
            y[c] = ring.neg(ring.mul(M[k][f], ring.exquo(d, M[k][c])))
        out.append(_primitive(ring, y))
    return out


def _lcm(ring, a, b):
    g = ring.gcd(a, b)
    return ring.normalize(ring.exquo(ring.mul(a, b), g))[1]


def _primitive(ring, v):
    g = ring.zero()
    for e in v:
        if not ring.is_zero(e):
            g = ring.gcd(g, e)
            if ring.is_unit(g):
                return v
    if ring.is_zero(g):
        return v
    return [ring.exquo(e, g) for e in v]
