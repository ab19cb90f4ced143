"""Brute-force verifiers that share no code with the main algorithms.

Each oracle enforces small sizes and raises LimitExceeded beyond its caps.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .arith.integers import factorint
from .errors import InputError, LimitExceeded

# ----------------------------------------------------------------------------
# abelian-invariants: naive integer Smith normal form

SNF_MAX_DIM = 12
SNF_MAX_ENTRY = 10**12


def naive_snf(A) -> list:
    """Diagonal of the Smith normal form of an integer matrix, by repeated
    row and column reduction on the smallest entry."""
    A = [list(map(int, row)) for row in A]
    if len(A) > SNF_MAX_DIM or (A and len(A[0]) > SNF_MAX_DIM):
        raise LimitExceeded("abelian-invariants: matrix too large")
    if any(abs(e) > SNF_MAX_ENTRY for row in A for e in row):
        raise LimitExceeded("abelian-invariants: entries too large")
    m = len(A)
    n = len(A[0]) if A else 0
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if not done:
                # move the smallest remaining entry of row/column t to the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cand)
                A[t], A[i] = A[i], A[t]
                for row in A:
                    row[t], row[j] = row[j], row[t]
                continue
            # the pivot must divide the rest of the block
            bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p]
            if bad:
                i, _ = bad[0]
                A[t] = [a + b for a, b in zip(A[t], A[i])]
                done = False
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def abelian_invariants(A, ncols: int | None = None) -> dict:
    """``Z^ncols / rowspace(A)``: invariant factors > 1 and the free rank."""
    if ncols is None:
        if not A:
            raise InputError("give the number of columns for an empty matrix")
        ncols = len(A[0])
    d = naive_snf(A) if A else []
    return {"invariants": [e for e in d if e != 1], "rank": ncols - len(d)}


def elementary_divisors(invariants) -> list:
    """Prime-power parts of invariant factors, as sorted ``(p, k)``."""
    out = []
    for d in invariants:
        for p, k in factorint(d).items():
            out.append((p, k))
    return sorted(out, key=lambda t: (t[0], -t[1]))


# ----------------------------------------------------------------------------
# ext-z: extensions of Z/m by Z/n

EXT_CAP = 16


def _extension_law(m, n, a):
    """``E_a = Z/n x {0..m-1}`` with ``(k, i) + (l, j) = (k + l + a*carry, i + j mod m)``,
    the extension where m times a lift of 1 equals a."""

    def add(u, v):
        (k, i), (l, j) = u, v
        c = 1 if i + j >= m else 0
        return ((k + l + a * c) % n, (i + j) % m)

    return add


def _equivalent(m, n, a, b) -> bool:
    """Search for ``phi(k, i) = (k + s(i), i)`` with ``phi: E_a -> E_b`` a
    homomorphism; such phi fixes Z/n and induces the identity on Z/m."""
    add_a = _extension_law(m, n, a)
    add_b = _extension_law(m, n, b)
    elems = [(k, i) for k in range(n) for i in range(m)]
    for s1 in range(n):
        # phi is determined by the image of the lift (0, 1)
        s = [0] * m
        cur = (0, 0)
        gen = (s1, 1)
        for i in range(1, m):
            cur = add_b(cur, gen)
            s[i] = cur[0]
        # the generator orbit fixes s(i); check phi on all pairs
        phi = {(k, i): ((k + s[i]) % n, i) for k, i in elems}
        if all(phi[add_a(u, v)] == add_b(phi[u], phi[v]) for u in elems for v in elems):
            return True
    return False


def ext_z(m: int, n: int) -> dict:
    """Enumerate the extensions ``0 -> Z/n -> E -> Z/m -> 0`` up to
    equivalence. The classes form a cyclic group under Baer sum (which adds
    the parameter a), reported by its order and invariant factors."""
    if m < 1 or n < 1:
        raise InputError("orders must be positive")
    if m > EXT_CAP or n > EXT_CAP:
        raise LimitExceeded(f"ext-z: orders above {EXT_CAP}")
    reps = []
    for a in range(n):
        if not any(_equivalent(m, n, a, b) for b in reps):
            reps.append(a)
    trivial = [a for a in range(n) if _equivalent(m, n, a, 0)]
    order = len(reps)
    if n % len(trivial) or n // len(trivial) != order:
        raise AssertionError("classes are not the cosets of the trivial subgroup")
    return {"order": order, "invariants": [order] if order > 1 else [], "classes": reps}


# ----------------------------------------------------------------------------
# factor-check

KRONECKER_CAP = 200_000


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _strip(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _peval(a, x):
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v


def _pdivides_q(b, a) -> bool:
    """Does b divide a in Z[x] (coefficients low degree first)?"""
    a = [Fraction(c) for c in a]
    b = _strip(b)
    db = len(b) - 1
    if db == 0:
        return all(c % b[0] == 0 for c in a)
    while len(a) - 1 >= db and any(a):
        a = _strip(a)
        if len(a) - 1 < db:
            break
        q = a[-1] / b[-1]
        if q.denominator != 1:
            return False
        s = len(a) - 1 - db
        for i, c in enumerate(b):
            a[s + i] -= q * c
        a.pop()
    return not any(a)


def _divisors(v):
    v = abs(v)
    out = [d for d in range(1, int(v**0.5) + 1) if v % d == 0]
    out += [v // d for d in out if d * d != v]
    return out + [-d for d in out]


def _interpolate(xs, ys):
    """Lagrange interpolation over Q; coefficients low degree first."""
    k = len(xs)
    coeffs = [Fraction(0)] * k
    for i in range(k):
        basis = [Fraction(1)]
        den = Fraction(1)
        for j in range(k):
            if j != i:
                basis = _pmul(basis, [Fraction(-xs[j]), Fraction(1)])
                den *= xs[i] - xs[j]
        for t in range(k):
            coeffs[t] += ys[i] * basis[t] / den
    return coeffs


def _irreducible_mod_p(f, p) -> bool:
    """f mod p has the same degree and no monic factor of degree <= deg/2,
    by trial division over F_p."""
    d = len(f) - 1
    if f[-1] % p == 0:
        return False
    g = [c % p for c in f]
    for k in range(1, d // 2 + 1):
        if p**k > 5000:
            return False
        for tail in itertools.product(range(p), repeat=k):
            h = list(tail) + [1]
            r = list(g)
            for s in range(len(r) - 1 - k, -1, -1):
                q = r[s + k] % p
                if q:
                    for i, c in enumerate(h):
                        r[s + i] = (r[s + i] - q * c) % p
            if not any(r[:k]):
                return False
    return True


def _fp_strip(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_rem(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        q = a[-1] * inv % p
        s = len(a) - len(b)
        for i, c in enumerate(b):
            a[s + i] = (a[s + i] - q * c) % p
        _fp_strip(a)
    return a


def _fp_mulmod(a, b, m, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _fp_rem(_fp_strip(out), m, p)


def _fp_gcd(a, b, p):
    while b:
        a, b = b, _fp_rem(a, b, p)
    return a


def _degree_pattern(f, p):
    """Degrees of the irreducible factors of f mod p, or None when p divides
    the leading coefficient or f is not squarefree mod p."""
    g = _fp_strip([c % p for c in f])
    if len(g) != len(f):
        return None
    dg = _fp_strip([(i * c) % p for i, c in enumerate(g)][1:])
    if len(_fp_gcd(g, dg, p)) != 1:
        return None
    degs = []
    h = [0, 1]  # x^(p^k) mod g
    k = 0
    while len(g) > 1:
        k += 1
        if 2 * k > len(g) - 1:
            degs.append(len(g) - 1)
            break
        e, base, r = p, h, [1]
        while e:
            if e & 1:
                r = _fp_mulmod(r, base, g, p)
            base = _fp_mulmod(base, base, g, p)
            e >>= 1
        h = r
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        c = _fp_gcd(g, _fp_strip(diff), p)
        n = len(c) - 1
        if n:
            degs.extend([k] * (n // k))
            quo = []
            rem = list(g)
            inv = pow(c[-1], -1, p)
            quo = [0] * (len(rem) - len(c) + 1)
            while len(rem) >= len(c):
                q = rem[-1] * inv % p
                s_ = len(rem) - len(c)
                quo[s_] = q
                for i, x in enumerate(c):
                    rem[s_ + i] = (rem[s_ + i] - q * x) % p
                _fp_strip(rem)
            g = quo
            h = _fp_rem(h, g, p) if len(g) > 1 else h
    return degs


def _patterns_exclude_factors(f, primes=200) -> bool:
    """True when the factor degree patterns mod small primes leave no room
    for a factor of degree 1..deg-1 over Z."""
    d = len(f) - 1
    possible = set(range(1, d))
    for p in range(2, primes):
        if any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
            continue
        degs = _degree_pattern(f, p)
        if degs is None:
            continue
        sums = {0}
        for k in degs:
            sums |= {s + k for s in sums}
        possible &= sums
        if not possible:
            return True
    return False


def _kronecker_irreducible(f) -> bool:
    """No factor of degree 1..deg/2, by interpolation through divisors of
    values (Kronecker's method)."""
    d = len(f) - 1
    pts = sorted(range(-12, 13), key=lambda x: (abs(_peval(f, x)), abs(x)))
    for x in pts:
        if _peval(f, x) == 0:
            return d == 1
    budget = KRONECKER_CAP
    for k in range(1, d // 2 + 1):
        xs = pts[: k + 1]
        choices = [_divisors(_peval(f, x)) for x in xs]
        total = 1
        for c in choices:
            total *= len(c)
        budget -= total
        if budget < 0:
            raise LimitExceeded("factor-check: Kronecker search above its cap")
        for ys in itertools.product(*choices):
            g = _interpolate(xs, [Fraction(y) for y in ys])
            if any(c.denominator != 1 for c in g):
                continue
            g = _strip([int(c) for c in g])
            if len(g) - 1 != k:
                continue
            if _pdivides_q(g, f):
                return False
    return True


def is_irreducible_z(f) -> bool:
    """Irreducibility in Z[x]: a prime constant, or a primitive polynomial
    of positive degree with no proper factorization."""
    f = _strip(f)
    if not f:
        return False
    if len(f) == 1:
        n = abs(f[0])
        return n > 1 and all(n % q for q in range(2, math.isqrt(n) + 1))
    if math.gcd(*f) != 1:
        return False
    if len(f) == 2:
        return True
    for p in (2, 3, 5, 7, 11, 13):
        if _irreducible_mod_p(f, p):
            return True
    if _patterns_exclude_factors(f):
        return True
    return _kronecker_irreducible(f)


def factor_check(poly, unit, factors) -> dict:
    """Check ``poly = unit * prod f^e`` exactly and that each factor of
    positive degree is irreducible. Polynomials are coefficient lists, low
    degree first; ``factors`` is a list of ``(coeffs, e)``."""
    prod = [int(unit)]
    for f, e in factors:
        for _ in range(e):
            prod = _pmul(prod, list(f))
    product_ok = _strip(prod) == _strip(poly)
    irr = []
    for f, _ in factors:
        f = _strip(list(f))
        if len(f) == 1:
            irr.append(abs(f[0]) > 1 and all(f[0] % q for q in range(2, int(abs(f[0]) ** 0.5) + 1)))
        else:
            irr.append(is_irreducible_z(f))
    return {"product": product_ok, "irreducible": irr, "ok": product_ok and all(irr)}


# ----------------------------------------------------------------------------
# hereditary-trunc

TRUNC_DEPTH = 3
TRUNC_MAX_N = 6


def _radical_basis(L) -> set:
    """Basis elements ``b_ij = p^lambda_ij e_ij`` of ``B = A / pA`` spanning
    its radical: those generating a nilpotent two-sided ideal. B is monomial,
    so ideals and their powers are spans of basis elements."""
    n = len(L)
    basis = [(i, j) for i in range(n) for j in range(n)]

    def mul(u, v):
        (i, j), (k, l) = u, v
        if j != k or L[i][j] + L[j][l] - L[i][l] > 0:
            return None
        return (i, l)

    rad = set()
    for b in basis:
        ideal = {b}
        grow = True
        while grow:
            grow = False
            for u in list(ideal):
                for v in basis:
                    for w in (mul(u, v), mul(v, u)):
                        if w is not None and w not in ideal:
                            ideal.add(w)
                            grow = True
        power = set(ideal)
        for _ in range(len(basis) + 1):
            power = {w for u in power for v in ideal if (w := mul(u, v)) is not None}
            if not power:
                rad.add(b)
                break
    return rad


def _length(gens, p, n) -> int:
    """Length of ``Z_p^n / span(gens)`` when it is finite, by naive SNF."""
    d = naive_snf(gens)
    if len(d) < n:
        raise AssertionError("lattice of lower rank")
    total = 0
    for e in d:
        while e % p == 0:
            e //= p
            total += 1
    return total


def _coord_lengths(gens, p, n) -> list:
    """Lengths of the coordinate projections ``e_ii * (Z^n / span)``."""
    out = []
    for i in range(n):
        col = [[g[i]] for g in gens if g[i]]
        out.append(_length(col, p, 1))
    return out


def hereditary_trunc(L, p: int) -> dict:
    """Truncation test over ``A / p^3 A``: the radical is projective iff the
    dimension vector of the sum of the projective covers of the tops of its
    columns equals the dimension vector of the radical."""
    n = len(L)
    if n > TRUNC_MAX_N:
        raise LimitExceeded("hereditary-trunc: n too large")
    L = [[int(e) for e in row] for row in L]
    if any(L[i][i] for i in range(n)) or any(L[i][j] + L[j][k] < L[i][k] for i in range(n) for j in range(n) for k in range(n)):
        raise InputError("not an exponent matrix of an order")
    if any(abs(e) > 10 for row in L for e in row):
        raise LimitExceeded("hereditary-trunc: exponents above 10")
    rad = _radical_basis(L)
    J = [[L[i][j] + (0 if (i, j) in rad else 1) for j in range(n)] for i in range(n)]
    same = [[(i, j) not in rad for j in range(n)] for i in range(n)]
    classes = []
    for i in range(n):
        if not any(i in c for c in classes):
            classes.append([j for j in range(n) if same[i][j]])
    # a fixed base point below every exponent keeps the lattices inside Z^n
    base = min(0, min(min(row) for row in L))
    depth = TRUNC_DEPTH
    rad_dim = [0] * n
    cover_dim = [0] * n
    for j in range(n):
        col = [J[i][j] - base for i in range(n)]
        gens = [[p ** col[i] if r == i else 0 for r in range(n)] for i in range(n)]
        prod = []
        for i in range(n):
            for k in range(n):
                e = J[i][k] + J[k][j] - base
                prod.append([p**e if r == i else 0 for r in range(n)])
        full = _coord_lengths(prod, p, n)
        here = _coord_lengths(gens, p, n)
        top = [a - b for a, b in zip(full, here)]
        # truncation: the column modulo p^depth times itself
        trunc = [[p ** (col[i] + depth) if r == i else 0 for r in range(n)] for i in range(n)]
        dims = [a - b for a, b in zip(_coord_lengths(trunc, p, n), here)]
        for i in range(n):
            rad_dim[i] += dims[i]
        for cl in classes:
            t = top[cl[0]]
            k = cl[0]
            pcol = [L[i][k] - base for i in range(n)]
            pgens = [[p ** pcol[i] if r == i else 0 for r in range(n)] for i in range(n)]
            ptrunc = [[p ** (pcol[i] + depth) if r == i else 0 for r in range(n)] for i in range(n)]
            pd = [a - b for a, b in zip(_coord_lengths(ptrunc, p, n), _coord_lengths(pgens, p, n))]
            for i in range(n):
                cover_dim[i] += t * pd[i]
    return {
        "hereditary": rad_dim == cover_dim,
        "radical_dim": rad_dim,
        "cover_dim": cover_dim,
        "classes": [[j + 1 for j in c] for c in classes],
    }
