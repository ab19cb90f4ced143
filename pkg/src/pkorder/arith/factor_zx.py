"""Factorization in Z[x]: content/primitive split, squarefree decomposition,
modular factorization at a good prime, Hensel lifting, and subset
recombination under a Mignotte-type coefficient bound."""

from __future__ import annotations

from itertools import combinations
from math import isqrt

from .. import config
from ..errors import InputError, LimitExceeded
from . import factor_fp
from .integers import factorint, small_primes
from .poly import (
    dup_deriv,
    dup_divmod,
    dup_exquo,
    dup_gcd,
    dup_mod,
    dup_mul,
    dup_primitive,
    dup_strip,
    dup_sub,
    dup_xgcd,
)


def _sym(c, m):
    """Symmetric residues in (-m/2, m/2]."""
    half = m // 2
    return dup_strip((x % m) - m if (x % m) > half else (x % m) for x in c)


def sqf_list_zx(f) -> list[tuple[tuple, int]]:
    """Squarefree decomposition of a primitive ``f`` with positive lc."""
    out = []
    if len(f) <= 1:
        return out
    g = dup_gcd(f, dup_deriv(f))
    w = dup_exquo(f, g)
    i = 1
    while len(w) > 1:
        y = dup_gcd(w, g)
        z = dup_exquo(w, y)
        if len(z) > 1:
            out.append((dup_primitive(z)[1], i))
        i += 1
        w = y
        g = dup_exquo(g, y)
    return out


def _hensel_step(f, g, h, s, t, m):
    """One quadratic lifting step: from ``f = g*h mod m`` to mod ``m**2``."""
    M = m * m
    e = dup_mod(dup_sub(f, dup_mul(g, h)), M)
    q, r = dup_divmod(dup_mod(dup_mul(s, e), M), h)
    q, r = dup_mod(q, M), dup_mod(r, M)
    g2 = dup_mod(dup_add3(g, dup_mul(t, e), dup_mul(q, g)), M)
    h2 = dup_mod(dup_add3(h, r), M)
    b = dup_mod(dup_sub(dup_add3(dup_mul(s, g2), dup_mul(t, h2)), (1,)), M)
    c, d = dup_divmod(dup_mod(dup_mul(s, b), M), h2)
    c, d = dup_mod(c, M), dup_mod(d, M)
    s2 = dup_mod(dup_sub(s, d), M)
    t2 = dup_mod(dup_sub(t, dup_add3(dup_mul(t, b), dup_mul(c, g2))), M)
    return g2, h2, s2, t2


def dup_add3(*polys):
    n = max((len(a) for a in polys), default=0)
    out = [0] * n
    for a in polys:
        for i, x in enumerate(a):
            out[i] += x
    return dup_strip(out)


def hensel_lift(f, factors, p, k) -> list[tuple]:
    """Lift ``f = lc(f) * prod(factors) mod p`` (factors monic) to monic
    factors modulo ``p**k``."""
    pk = p**k
    if len(factors) == 1:
        inv = pow(f[-1], -1, pk)
        return [dup_mod([x * inv for x in f], pk)]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    g = dup_mod([x * f[-1] for x in factor_fp.product(left, p)], p)
    h = factor_fp.product(right, p)
    one, s, t = dup_xgcd(g, h, p)
    if one != (1,):
        raise InputError("modular factors are not coprime")
    m = p
    while m < pk:
        g, h, s, t = _hensel_step(f, g, h, s, t, m)
        m = m * m
    g, h = dup_mod(g, pk), dup_mod(h, pk)
    return hensel_lift(g, left, p, k) + hensel_lift(h, right, p, k)


def _norm1(c) -> int:
    return sum(abs(x) for x in c)


def _choose_prime(f):
    """Among the first few good primes pick the one with fewest modular
    factors (deterministic)."""
    lc = f[-1]
    best = None
    tried = 0
    for p in small_primes()[1:]:
        if lc % p == 0:
            continue
        fp = dup_mod(f, p)
        if len(fp) != len(f):
            continue
        if dup_gcd(fp, dup_deriv(fp, p), p) != (1,):
            continue
        _, facs = factor_fp.factor(fp, p)
        mods = [g for g, _ in facs]
        if best is None or len(mods) < len(best[1]):
            best = (p, mods)
        tried += 1
        if tried >= 5 or len(mods) == 1:
            break
    if best is None:
        raise LimitExceeded("no good prime found for modular factorization")
    return best


def factor_sqf_primitive(f) -> list[tuple]:
    """Irreducible factors of a squarefree primitive ``f`` (lc > 0)."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    if f[0] == 0:
        # x divides f exactly once (squarefree)
        return [(0, 1)] + factor_sqf_primitive(f[1:])
    p, mods = _choose_prime(f)
    if len(mods) == 1:
        return [f]
    A = max(abs(x) for x in f)
    b = f[-1]
    B = (isqrt(n + 1) + 1) * (1 << n) * A * b
    k = 1
    while p**k <= 2 * B + 1:
        k += 1
    pk = p**k
    lifted = hensel_lift(f, mods, p, k)
    T = list(range(len(lifted)))
    G = []
    fstar = f
    s = 1
    meter = config.StepMeter()
    while 2 * s <= len(T):
        found = False
        for S in combinations(T, s):
            meter.tick()
            bb = fstar[-1]
            gs = [bb]
            for i in S:
                gs = dup_mul(gs, lifted[i])
            gs = _sym(gs, pk)
            hs = [bb]
            for i in T:
                if i not in S:
                    hs = dup_mul(hs, lifted[i])
            hs = _sym(hs, pk)
            if _norm1(gs) * _norm1(hs) <= B:
                T = [i for i in T if i not in S]
                G.append(dup_primitive(gs)[1])
                fstar = dup_primitive(hs)[1]
                found = True
                break
        if not found:
            s += 1
    G.append(fstar)
    return G


def factor_zx(f) -> tuple[int, list[tuple[tuple, int]]]:
    """Factor a nonzero ``f`` in Z[x].

    Returns ``(unit, factors)`` where ``unit`` is +1 or -1 and ``factors``
    lists ``(g, e)``: integer primes as constant tuples ``(p,)`` first, then
    primitive irreducible polynomials with positive leading coefficient.
    """
    f = dup_strip(f)
    if not f:
        raise InputError("cannot factor 0")
    if len(f) - 1 > config.current().max_degree:
        raise LimitExceeded(f"degree {len(f) - 1} exceeds max_degree budget")
    content, prim = dup_primitive(f)
    unit = 1 if content > 0 else -1
    out: list[tuple[tuple, int]] = [((q,), e) for q, e in factorint(abs(content)).items()]
    poly_factors: dict[tuple, int] = {}
    # strip powers of x first
    shift = 0
    while prim and prim[0] == 0:
        prim = prim[1:]
        shift += 1
    if shift:
        poly_factors[(0, 1)] = shift
    for g, e in sqf_list_zx(prim):
        for h in factor_sqf_primitive(g):
            poly_factors[h] = poly_factors.get(h, 0) + e
    for h in sorted(poly_factors, key=lambda c: (len(c), tuple(reversed(c)))):
        out.append((h, poly_factors[h]))
    return unit, out
