"""Smith normal form over the discrete valuation ring R_P.

The elimination runs in R itself: a pivot ``pi^a * u`` (``u`` a P-unit)
clears an entry ``e`` by ``row_i <- u*row_i - (e/pi^a)*row_t``, which is
unimodular over R_P. After each step the remaining rows are divided by the
P-unit part of their content to keep entries small.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .rings import INF, Height1Prime, ProductRing, element_valuation


@dataclass
class LocalSNF:
    prime: Height1Prime
    exponents: list  # sorted, each >= 1
    free_rank: int  # free rank of the cokernel at P
    unit_count: int  # pivots that are units at P
    diagonal: list  # pivot entries in elimination order
    U: list | None = None  # over Q, rows x rows
    V: list | None = None  # over R, cols x cols

    def to_json(self):
        return {
            "prime": self.prime.label,
            "exponents": list(self.exponents),
            "free_rank": self.free_rank,
            "unit_count": self.unit_count,
        }


def _pi_power(ring, P, a):
    g = P.gen
    if isinstance(g, int):
        return g**a
    return g**a


def _unit_part(ring, c, P):
    """``c / pi^v_P(c)``."""
    v = element_valuation(c, P)
    if v == 0:
        return c
    return ring.exquo(c, _pi_power(ring, P, v))


def _component(ring, P):
    if isinstance(ring, ProductRing):
        if P.component is None:
            raise InputError("primes of a product ring must name a component")
        return ring.factors[P.component], P.inner(), P.component
    if P.component is not None:
        raise InputError("component prime given for a domain backend")
    return ring, P, None


def local_snf(ring, Phi, P: Height1Prime, ncols: int | None = None, track: bool = False) -> LocalSNF:
    """SNF of the relation matrix ``Phi`` (rows = relations) over R_P."""
    ring, P, comp = _component(ring, P)
    if comp is not None:
        Phi = [[e[comp] for e in row] for row in Phi]
    A = [list(r) for r in Phi if any(not ring.is_zero(e) for e in r)]
    if ncols is None:
        ncols = len(Phi[0]) if Phi else 0
    nrows = len(A)
    one, zero = ring.one(), ring.zero()
    if track:
        U = [[ring.frac(one if i == j else zero) for j in range(len(Phi))] for i in range(len(Phi))]
        # only nonzero rows of Phi take part; map kept rows back to U rows
        kept = [i for i, r in enumerate(Phi) if any(not ring.is_zero(e) for e in r)]
        U = [U[i] for i in kept] + [U[i] for i in range(len(Phi)) if i not in kept]
        V = [[one if i == j else zero for j in range(ncols)] for i in range(ncols)]
    else:
        U = V = None
    vals = [[element_valuation(e, P) for e in row] for row in A]
    diag = []
    pexp = []
    t = 0
    while t < min(nrows, ncols):
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = vals[i][j]
                if v != INF and (best is None or v < best[0]):
                    best = (v, i, j)
                    if v == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        a, bi, bj = best
        if bi != t:
            A[t], A[bi] = A[bi], A[t]
            vals[t], vals[bi] = vals[bi], vals[t]
            if track:
                U[t], U[bi] = U[bi], U[t]
        if bj != t:
            for row in A:
                row[t], row[bj] = row[bj], row[t]
            for row in vals:
                row[t], row[bj] = row[bj], row[t]
            if track:
                for row in V:
                    row[t], row[bj] = row[bj], row[t]
        piv = A[t][t]
        pia = _pi_power(ring, P, a) if a else one
        u = ring.exquo(piv, pia) if a else piv
        rt = A[t]
        for i in range(t + 1, nrows):
            e = A[i][t]
            if ring.is_zero(e):
                continue
            w = ring.exquo(e, pia) if a else e
            row = A[i]
            for j in range(t, ncols):
                row[j] = ring.sub(ring.mul(u, row[j]), ring.mul(w, rt[j]))
            if track:
                U[i] = [x * ring.frac(u) - y * ring.frac(w) for x, y in zip(U[i], U[t])]
        for j in range(t + 1, ncols):
            e = rt[j]
            if ring.is_zero(e):
                continue
            w = ring.exquo(e, pia) if a else e
            for i in range(t, nrows):
                A[i][j] = ring.sub(ring.mul(u, A[i][j]), ring.mul(w, A[i][t]))
            if track:
                for row in V:
                    row[j] = ring.sub(ring.mul(u, row[j]), ring.mul(w, row[t]))
        # strip P-unit content from the remaining rows
        for i in range(t + 1, nrows):
            row = A[i]
            g = zero
            for e in row[t + 1 :]:
                if not ring.is_zero(e):
                    g = ring.gcd(g, e)
                    if ring.is_unit(g):
                        break
            if ring.is_zero(g):
                vals[i] = [INF] * ncols
                continue
            c = _unit_part(ring, g, P)
            if not ring.is_unit(c):
                A[i] = row = [ring.exquo(e, c) for e in row]
                if track:
                    inv = ring.frac(one, c)
                    U[i] = [x * inv for x in U[i]]
            vals[i] = [INF] * (t + 1) + [element_valuation(e, P) for e in row[t + 1 :]]
        diag.append(piv)
        pexp.append(a)
        t += 1
    exps = sorted(e for e in pexp if e > 0)
    return LocalSNF(
        prime=P if comp is None else Height1Prime(P.gen, comp),
        exponents=exps,
        free_rank=ncols - len(pexp),
        unit_count=sum(1 for e in pexp if e == 0),
        diagonal=diag,
        U=U,
        V=V,
    )


def local_module(M, P: Height1Prime):
    """``(free_rank, exponents)`` of M_P."""
    if isinstance(M.ring, ProductRing):
        comp = P.component
        if comp is None:
            raise InputError("primes of a product ring must name a component")
        Mc = M.component(comp)
        s = local_snf(Mc.ring, Mc.relations, P.inner(), ncols=Mc.generators)
    else:
        s = local_snf(M.ring, M.relations, P, ncols=M.generators)
    return s.free_rank, s.exponents
