"""Strong Groebner bases for submodules of R^n, R one of Z, F_p[x], Z[x].

Vectors are tuples of dense coefficient tuples (low degree first). The term
order is position over term with position 0 the most significant, so the
elements of a basis whose leading position is ``>= k`` generate the
intersection with the last ``n - k`` coordinates. Over Z coefficients the
bases are *strong*: every leading term of the module is divisible by the
leading term of some basis element. The pair set uses S-polynomials and,
when neither leading coefficient divides the other, gcd-polynomials.

Syzygies and membership certificates come from the basis of the augmented
vectors ``(s_i | e_i)``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .arith.integers import xgcd
from .arith.poly import dup_addmul_term
from .config import StepMeter
from .errors import InputError


def PAIR_KEY(i, m, a, b):
    # least significant position first, then lowest degree
    return (-i, m, abs(a) + abs(b))


def _lead(v):
    for i, c in enumerate(v):
        if c:
            return i, len(c) - 1, c[-1]
    return None


def _axpy(v, k, s, w, p):
    """``v + k * x^s * w``."""
    return tuple(dup_addmul_term(a, b, k, s, p) if b else a for a, b in zip(v, w))


def _cost(w):
    """Step cost of one reduction by ``w``: one plus a size surcharge, so
    that coefficient growth is charged against the budget too."""
    bits = 0
    for b in w:
        if b:
            bits += len(b) * max(abs(b[0]), abs(b[-1])).bit_length()
    return 1 + (bits >> 12)


def _scale(v, k, p):
    if p is None:
        return tuple(tuple(k * x for x in c) for c in v)
    return tuple(tuple(k * x % p for x in c) for c in v)


def _normalize(v, p):
    """Positive leading coefficient over Z, monic over F_p."""
    _, _, c = _lead(v)
    if p is None:
        return _scale(v, -1, None) if c < 0 else v
    if c != 1:
        return _scale(v, pow(c, -1, p), p)
    return v


class _Basis:
    """Working basis indexed by leading position."""

    def __init__(self, p, euclid=False):
        self.p = p
        self.euclid = euclid
        self.by_pos: dict[int, list] = {}

    def candidates(self, i):
        return self.by_pos.get(i, ())

    def top_reduce(self, v, meter):
        p = self.p
        while True:
            ld = _lead(v)
            if ld is None:
                return v
            i, d, c = ld
            done = True
            for _, g, gd, gc in self.candidates(i):
                if gd > d:
                    continue
                if p is not None:
                    k = -c * pow(gc, -1, p) % p
                elif c % gc == 0:
                    k = -(c // gc)
                elif self.euclid and gc <= abs(c):
                    k = -(c // gc)
                else:
                    continue
                v = _axpy(v, k, d - gd, g, p)
                meter.tick(_cost(g) if p is None else 1)
                done = False
                break
            if done:
                return v


def _pair_polys(f, lf, h, lh, p):
    _, i, a = lf
    _, j, b = lh
    m = max(i, j)
    if p is not None:
        return [_spoly_field(f, i, a, h, j, b, p)]
    out = []
    g, sa, tb = xgcd(a, b)
    la, lb = b // g, a // g  # lcm/a, lcm/b
    sp = _axpy(_shift_scale(f, la, m - i, None), -lb, m - j, h, None)
    out.append(sp)
    if a % b and b % a:
        gp = _axpy(_shift_scale(f, sa, m - i, None), tb, m - j, h, None)
        out.append(gp)
    return out


def _spoly_field(f, i, a, h, j, b, p):
    m = max(i, j)
    ia, ib = pow(a, -1, p), pow(b, -1, p)
    return _axpy(_shift_scale(f, ia, m - i, p), -ib % p, m - j, h, p)


def _shift_scale(v, k, s, p):
    zero = tuple(() for _ in v)
    return _axpy(zero, k, s, v, p)


def _buchberger(gens, p, meter):
    B = _Basis(p)
    alive: dict[int, tuple] = {}
    pairs: list = []
    pending = [v for v in gens if _lead(v) is not None]
    pending.reverse()
    next_id = 0

    def insert(v):
        nonlocal next_id
        v = _normalize(v, p)
        i, d, c = _lead(v)
        v = _reduce_tail(v, i, d, c, B, meter)
        ld = (i, d, c)
        bucket = B.by_pos.setdefault(i, [])
        keep = []
        for entry in bucket:
            eid, g, gd, gc = entry
            if gd >= d and (p is not None or gc % c == 0):
                del alive[eid]
                pending.append(g)
            else:
                keep.append(entry)
                m = max(gd, d)
                heapq.heappush(pairs, (PAIR_KEY(i, m, gc, c), next_id, eid))
        keep.append((next_id, v, d, c))
        keep.sort(key=lambda e: (e[2], abs(e[3]), e[0]))
        B.by_pos[i] = keep
        alive[next_id] = (v, ld)
        next_id += 1
        # keep older tails reduced against the new element
        for j, entries in B.by_pos.items():
            if j > i:
                continue
            for k, (eid, g, gd, gc) in enumerate(entries):
                if eid == next_id - 1 or not _reducible_at(g, i, d, c, p, gd - 1 if j == i else len(g[i]) - 1):
                    continue
                g2 = _reduce_tail(g, j, gd, gc, B, meter)
                entries[k] = (eid, g2, gd, gc)
                alive[eid] = (g2, alive[eid][1])

    while pending or pairs:
        if pending:
            v = B.top_reduce(pending.pop(), meter)
            if _lead(v) is not None:
                insert(v)
            continue
        _, a, b = heapq.heappop(pairs)
        if a not in alive or b not in alive:
            continue
        (f, lf), (h, lh) = alive[a], alive[b]
        for s in _pair_polys(f, lf, h, lh, p):
            meter.tick()
            pending.append(s)
    return [v for v, _ in sorted(alive.values(), key=lambda e: e[1][:2] + (abs(e[1][2]),))]


def _minimize(basis, p):
    out = []
    for v in basis:
        i, d, c = _lead(v)
        redundant = False
        for w in out:
            j, e, b = _lead(w)
            if j == i and e <= d and (p is not None or c % b == 0):
                redundant = True
                break
        if not redundant:
            out.append(v)
    return out


def _full_reduce(v, B: _Basis, meter):
    """Reduce every term of ``v`` (top position first, high degree first)."""
    p = B.p
    n = len(v)
    for k in range(n):
        e = len(v[k]) - 1
        while e >= 0:
            c = v[k][e] if e < len(v[k]) else 0
            if c == 0:
                e -= 1
                continue
            reduced = False
            for _, g, gd, gc in B.candidates(k):
                if gd > e:
                    continue
                if p is not None:
                    q = c * pow(gc, -1, p) % p
                else:
                    q = c // gc
                    if q == 0:
                        continue
                v = _axpy(v, -q, e - gd, g, p)
                meter.tick(_cost(g) if p is None else 1)
                reduced = True
                break
            if not reduced:
                e -= 1
    return v


def _reducible_at(g, i, d, c, p, top):
    """Does ``g`` have a term at position ``i`` of degree in ``[d, top]``
    that the lead ``c*x^d`` reduces?"""
    poly = g[i]
    for e in range(d, min(top, len(poly) - 1) + 1):
        a = poly[e]
        if a and (p is not None or a >= c or a < 0):
            return True
    return False


def _reduce_tail(v, i, d, c, B, meter):
    body = v[:i] + (v[i][:-1],) + v[i + 1 :]
    red = _full_reduce(body, B, meter)
    lp = list(red[i]) + [0] * (d + 1 - len(red[i]))
    lp[d] = c
    return red[:i] + (tuple(lp),) + red[i + 1 :]


def _reduced_basis(gens, p, meter):
    basis = _minimize(_buchberger(gens, p, meter), p)
    B = _Basis(p)
    for idx, v in enumerate(basis):
        i, d, c = _lead(v)
        B.by_pos.setdefault(i, []).append((idx, v, d, c))
    out = []
    for idx, v in enumerate(basis):
        i, d, c = _lead(v)
        w = _reduce_tail(v, i, d, c, B, meter)
        out.append(w)
        B.by_pos[i] = [(e[0], w if e[0] == idx else e[1], e[2], e[3]) for e in B.by_pos[i]]
    out.sort(key=lambda w: _lead(w)[:2] + (abs(_lead(w)[2]),))
    return out


@dataclass
class StrongBasis:
    """A strong Groebner basis of the submodule spanned by ``generators``."""

    ring: object
    rank: int
    generators: list  # ring-element vectors as given
    vectors: list  # basis, ring-element vectors
    raw: list = field(repr=False, default_factory=list)
    order: str = "position-over-term; degree then coefficient"
    _aug: object = field(repr=False, default=None)

    def __len__(self):
        return len(self.vectors)

    def contains(self, v) -> bool:
        return membership(v, self, certificate=False)[0]


def _to_raw(ring, vectors, rank):
    out = []
    for v in vectors:
        if len(v) != rank:
            raise InputError(f"vector of length {len(v)} in a module of rank {rank}")
        out.append(tuple(ring.to_dup(a) for a in v))
    return out


def _from_raw(ring, vectors):
    return [[ring.from_dup(c) for c in v] for v in vectors]


def _check_ring(ring):
    if getattr(ring, "kind", None) not in ("Z", "ZX", "FpX"):
        raise InputError("Groebner bases are available over Z, F_p[x] and Z[x] only")


def raw_basis(ring, raw_vectors, rank):
    """Reduced strong basis of raw vectors (internal fast path)."""
    meter = StepMeter()
    p = ring.modulus
    return _reduced_basis(raw_vectors, p, meter)


def strong_basis(ring, vectors, rank=None) -> StrongBasis:
    _check_ring(ring)
    vectors = [list(v) for v in vectors]
    if rank is None:
        if not vectors:
            raise InputError("rank is required for an empty vector set")
        rank = len(vectors[0])
    raw = _to_raw(ring, vectors, rank)
    basis = raw_basis(ring, raw, rank)
    return StrongBasis(ring, rank, vectors, _from_raw(ring, basis), basis)


@dataclass
class _Augmented:
    basis: _Basis
    syz: list


def _augmented(ring, raw_gens, rank):
    """Basis of ``(s_i | e_i)``: split into the part with lead in the first
    ``rank`` coordinates (with cofactors) and the syzygy part."""
    n = len(raw_gens)
    aug = []
    for idx, v in enumerate(raw_gens):
        e = tuple(((1,) if j == idx else ()) for j in range(n))
        aug.append(tuple(v) + e)
    meter = StepMeter()
    p = ring.modulus
    basis = _minimize(_buchberger(aug, p, meter), p) if aug else []
    B = _Basis(p)
    syz = []
    for idx, w in enumerate(basis):
        i, d, c = _lead(w)
        if i >= rank:
            syz.append(w[rank:])
        else:
            B.by_pos.setdefault(i, []).append((idx, w, d, c))
    if syz:
        syz = _reduced_basis(syz, p, meter)
    return _Augmented(B, syz)


def _aug_of(B: StrongBasis):
    if B._aug is None:
        B._aug = _augmented(B.ring, _to_raw(B.ring, B.generators, B.rank), B.rank)
    return B._aug


def membership(v, B: StrongBasis, certificate: bool = True):
    """``(True, c)`` with ``sum c_i * generators[i] == v`` or ``(False, None)``."""
    ring = B.ring
    if len(v) != B.rank:
        raise InputError("vector length does not match the basis rank")
    raw = tuple(ring.to_dup(a) for a in v)
    meter = StepMeter()
    if not certificate:
        W = _Basis(ring.modulus)
        for idx, w in enumerate(B.raw):
            i, d, c = _lead(w)
            W.by_pos.setdefault(i, []).append((idx, w, d, c))
        return _lead(W.top_reduce(raw, meter)) is None, None
    aug = _aug_of(B)
    n = len(B.generators)
    w = aug.basis.top_reduce(raw + tuple(() for _ in range(n)), meter)
    ld = _lead(w)
    if ld is not None and ld[0] < B.rank:
        return False, None
    cert = [ring.from_dup(c) for c in w[B.rank :]]
    cert = [ring.neg(c) for c in cert]
    return True, cert


def syzygies(ring, vectors, rank=None) -> list:
    """Generators of ``{c : sum c_i * vectors[i] == 0}``."""
    _check_ring(ring)
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    if rank is None:
        rank = len(vectors[0])
    aug = _augmented(ring, _to_raw(ring, vectors, rank), rank)
    return _from_raw(ring, aug.syz)


def raw_syzygies(ring, raw_vectors, rank) -> list:
    if not raw_vectors:
        return []
    return _augmented(ring, raw_vectors, rank).syz


def raw_membership_basis(ring, raw_vectors, rank):
    """Augmented basis object for repeated certificate queries."""
    return _augmented(ring, raw_vectors, rank)


def raw_certificate(ring, aug: _Augmented, raw_v, rank, n):
    meter = StepMeter()
    w = aug.basis.top_reduce(tuple(raw_v) + tuple(() for _ in range(n)), meter)
    ld = _lead(w)
    if ld is not None and ld[0] < rank:
        return None
    p = ring.modulus
    return [tuple((-x) % p for x in c) if p else tuple(-x for x in c) for c in w[rank:]]
