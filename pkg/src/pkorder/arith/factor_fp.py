"""Factorization of polynomials over prime fields F_p (dense tuples)."""

from __future__ import annotations

from .. import config
from .poly import (
    dup_add,
    dup_deriv,
    dup_divmod,
    dup_exquo,
    dup_gcd,
    dup_monic,
    dup_mul,
    dup_powmod,
    dup_strip,
    dup_sub,
)

ONE = (1,)
X = (0, 1)


def _pth_root(f, p):
    return dup_strip(f[i] for i in range(0, len(f), p))


def sqf_list(f, p) -> list[tuple[tuple, int]]:
    """Squarefree decomposition of a monic ``f``: ``[(g, e), ...]`` with
    ``f = prod g**e`` and the ``g`` squarefree, monic, pairwise coprime."""
    out: list[tuple[tuple, int]] = []
    if len(f) <= 1:
        return out
    df = dup_deriv(f, p)
    if not df:
        return [(g, e * p) for g, e in sqf_list(_pth_root(f, p), p)]
    c = dup_gcd(f, df, p)
    w = dup_exquo(f, c, p)
    i = 1
    while len(w) > 1:
        y = dup_gcd(w, c, p)
        z = dup_exquo(w, y, p)
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = dup_exquo(c, y, p)
    if len(c) > 1:
        out.extend((g, e * p) for g, e in sqf_list(_pth_root(c, p), p))
    out.sort(key=lambda ge: (ge[1], len(ge[0]), tuple(reversed(ge[0]))))
    return out


def ddf(f, p) -> list[tuple[tuple, int]]:
    """Distinct-degree factorization of squarefree monic ``f``: pairs
    ``(product of all irreducible factors of degree d, d)``."""
    out = []
    h = X
    i = 1
    rest = f
    while len(rest) - 1 >= 2 * i:
        h = dup_powmod(h, p, rest, p)
        g = dup_gcd(rest, dup_sub(h, X, p), p)
        if len(g) > 1:
            out.append((g, i))
            rest = dup_exquo(rest, g, p)
            h = dup_divmod(h, rest, p)[1]
        i += 1
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def _random_poly(rng, n, p):
    return dup_strip(rng.randrange(p) for _ in range(n))


def edf(f, d, p, rng) -> list[tuple]:
    """Equal-degree splitting (Cantor-Zassenhaus) of a squarefree monic
    ``f`` whose irreducible factors all have degree ``d``."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = _random_poly(rng, n, p)
        if len(a) <= 1:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t = a
            acc = a
            for _ in range(d - 1):
                t = dup_divmod(dup_mul(t, t, p), f, p)[1]
                acc = dup_add(acc, t, p)
            g = dup_gcd(f, acc, p)
        else:
            g = dup_gcd(f, a, p)
            if 1 < len(g) < len(f):
                break
            b = dup_powmod(a, (p**d - 1) // 2, f, p)
            g = dup_gcd(f, dup_sub(b, ONE, p), p)
        if 1 < len(g) < len(f):
            break
    return edf(g, d, p, rng) + edf(dup_exquo(f, g, p), d, p, rng)


def factor_sqf(f, p, rng=None) -> list[tuple]:
    """Irreducible monic factors of a squarefree monic ``f``, sorted."""
    if rng is None:
        rng = config.current().rng(salt=hash((f, p)) & 0xFFFF)
    out = []
    for g, d in ddf(f, p):
        out.extend(edf(g, d, p, rng))
    out.sort(key=lambda g: (len(g), tuple(reversed(g))))
    return out


def factor(f, p) -> tuple[int, list[tuple[tuple, int]]]:
    """``(leading coefficient, [(monic irreducible, exponent), ...])``."""
    if not f:
        raise ValueError("cannot factor 0")
    lc = f[-1]
    f = dup_monic(f, p)
    rng = config.current().rng(salt=(hash(f) ^ p) & 0xFFFFF)
    out = []
    for g, e in sqf_list(f, p):
        for h in factor_sqf(g, p, rng):
            out.append((h, e))
    out.sort(key=lambda he: (len(he[0]), tuple(reversed(he[0])), he[1]))
    return lc, out


def is_irreducible(f, p) -> bool:
    f = dup_monic(f, p)
    if len(f) <= 1:
        return False
    if len(f) == 2:
        return True
    if dup_gcd(f, dup_deriv(f, p), p) != ONE:
        return False
    parts = ddf(f, p)
    return len(parts) == 1 and parts[0][1] == len(f) - 1


def product(fs, p):
    out = ONE
    for g in fs:
        out = dup_mul(out, g, p)
    return out
