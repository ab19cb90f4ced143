"""Pseudo-isomorphisms, torsion invariants and the certified splitting
``M -> (torsion model) + (reflexive hull of tf M)``."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import gb
from .matrix import bareiss, identity, transpose
from .errors import InputError, LimitExceeded
from .local_snf import local_module, local_snf
from .modules import (
    FpModule,
    Lattice,
    _free_basis,
    _check_map,
    apply_map,
    cokernel,
    direct_sum,
    height1_support,
    hom_generators,
    is_in_X,
    kernel_of_map,
    local_zero,
    rank,
    torsion_data,
)
from .rings import ProductRing, element_valuation, power, prime_element


@dataclass
class TorsionInvariants:
    """Pairs ``(P, l)`` with ``R_P/P^l`` a summand of ``M_P``, and the
    torsion-free rank of each Q-component."""

    pairs: list  # [(Height1Prime, l)], primes ascending, lengths descending
    ranks: list

    def key(self):
        return tuple((P.label, l) for P, l in self.pairs), tuple(self.ranks)

    def __eq__(self, other):
        return isinstance(other, TorsionInvariants) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def by_prime(self) -> dict:
        out = {}
        for P, l in self.pairs:
            out.setdefault(P, []).append(l)
        return {P: sorted(ls) for P, ls in out.items()}

    def to_json(self):
        return {"pairs": [[P.label, l] for P, l in self.pairs], "ranks": list(self.ranks)}


def torsion_invariants(M: FpModule) -> TorsionInvariants:
    sp = height1_support(M)
    pairs = []
    for P in sorted(sp.primes):
        _, ex = local_module(M, P)
        pairs.extend((P, l) for l in sorted(ex, reverse=True))
    return TorsionInvariants(pairs, list(sp.ranks))


@dataclass
class PseudoIsoCertificate:
    matrix: list
    kernel: FpModule | None  # None when the kernel was decided locally
    kernel_inclusion: list | None
    cokernel: FpModule
    evidence: dict = field(default_factory=dict)

    def to_json(self, ring):
        out = {
            "matrix": [[ring.fmt(e) for e in r] for r in self.matrix],
            "cokernel": self.cokernel.to_json(),
            "evidence": self.evidence,
        }
        if self.kernel is not None:
            out["kernel"] = self.kernel.to_json()
        return out


def _local_iso_data(M, N):
    """Do M and N have the same rank and local data at every prime of
    either support?"""
    if rank(M) != rank(N):
        return False, {"ranks": [rank(M), rank(N)]}
    primes = set(height1_support(M).primes) | set(height1_support(N).primes)
    for P in sorted(primes):
        if local_module(M, P) != local_module(N, P):
            return False, {"prime": P.label}
    return True, {"primes": [P.label for P in sorted(primes)]}


def is_pseudo_iso(F, M: FpModule, N: FpModule, check: bool = True):
    """``(bool, PseudoIsoCertificate)``: kernel and cokernel both in X."""
    if isinstance(M.ring, ProductRing):
        raise InputError("pseudo-isomorphism tests work per component of a product ring")
    R = _check_map(F, M, N)
    C = cokernel(F, M, N)
    c_ok = is_in_X(C)
    ev = {"cokernel_in_X": c_ok, "cokernel_rank": rank(C)}
    if not c_ok:
        return False, PseudoIsoCertificate(F, None, None, C, ev)
    K = incl = None
    try:
        K, incl = kernel_of_map(F, M, N, check=check)
    except LimitExceeded:
        ev["kernel_method"] = "local"
    if K is not None:
        k_ok = is_in_X(K)
        ev.update(kernel_method="groebner", kernel_in_X=k_ok, kernel_rank=rank(K))
        return k_ok, PseudoIsoCertificate(F, K, incl, C, ev)
    # the cokernel is in X, so f is a pseudo-isomorphism iff f_P is an
    # isomorphism at every P, iff M_P and N_P agree (a surjection between
    # isomorphic finitely generated modules is an isomorphism)
    k_ok, detail = _local_iso_data(M, N)
    ev.update(kernel_in_X=k_ok, local=detail)
    return k_ok, PseudoIsoCertificate(F, None, None, C, ev)


def kernel_in_X_local(F, M: FpModule, incl) -> bool:
    """Every kernel generator vanishes at each height-one prime."""
    R = M.ring
    td = torsion_data(M)
    for v in incl:
        if td.rank:
            if not all(R.is_zero(e) for e in apply_map(R, td.Y, v)):
                return False
    for P in height1_support(M).primes:
        s = local_snf(R, M.relations, P, ncols=M.generators, track=True)
        if not all(local_zero(M, v, P, s) for v in incl):
            return False
    return True


@dataclass
class Decomposition:
    invariants: TorsionInvariants
    tf_lattice: Lattice  # image of M in R^rank (coordinates of the hull)
    hull: Lattice  # reflexive hull of tf M, free in these coordinates
    target: FpModule  # (+)_P (+)_i R/(pi^l) (+) R^rank
    matrix: list  # images of the generators of M in the target
    multiplier: object  # the scalar s (always 1 here, see module notes)
    torsion_slots: list  # [(P, l)] for the first target coordinates

    def to_json(self):
        R = self.target.ring
        return {
            "invariants": self.invariants.to_json(),
            "hull": self.hull.to_json(),
            "tf_lattice": self.tf_lattice.to_json(),
            "target": self.target.to_json(),
            "matrix": [[R.fmt(e) for e in r] for r in self.matrix],
            "multiplier": R.fmt(self.multiplier),
        }


def decompose(M: FpModule) -> Decomposition:
    """Certified pseudo-isomorphism ``M -> T0 (+) L``.

    At each support prime P the local Smith form ``U*Phi*V = D`` gives the
    torsion coordinates: generator j maps to ``V[j][c]`` in ``R/(pi^l)``
    where column c carries the pivot ``pi^l * unit``. This is well defined
    over R itself, because ``(Phi*V)[i][c]`` lies in R and has valuation at
    least l at the principal prime P, so the multiplier is 1. The torsion
    free part is ``M -> Hom(Hom(M, R), R) = R^rank``, given by a basis of
    ``Hom(M, R)``.
    """
    if isinstance(M.ring, ProductRing):
        raise InputError("decompose works per component of a product ring")
    R = M.ring
    g = M.generators
    inv = torsion_invariants(M)
    cols = []  # target coordinates as columns of the map
    rels = []
    slots = []
    for P in sorted(inv.by_prime()):
        s = local_snf(R, M.relations, P, ncols=g, track=True)
        for c, d in enumerate(s.diagonal):
            l = element_valuation(d, P)
            if l == 0:
                continue
            cols.append([s.V[j][c] for j in range(g)])
            rels.append(power(R, prime_element(R, P), l))
            slots.append((P, l))
    t = len(cols)
    zero = R.zero()
    torsion_part = FpModule(R, t, [[rels[i] if j == i else zero for j in range(t)] for i in range(t)])
    gens, is_basis = hom_generators(M)
    if is_basis:
        rk = len(gens)
        cols.extend(gens)
        tf = Lattice(R, rk, [[s_[j] for s_ in gens] for j in range(g)], check=False)
        hull = Lattice.free(R, rk)
        free_part = FpModule.free(R, rk)
    else:
        tf, hull, free_part, images = _hull_model(R, M, gens)
        cols.extend(images)
    target = direct_sum(torsion_part, free_part)
    n = target.generators
    matrix = [[cols[k][j] for k in range(n)] for j in range(g)]
    return Decomposition(inv, tf, hull, target, matrix, R.one(), slots)



def _hull_model(R, M, S):
    """The hull ``Hom(S, R)`` for generators ``S`` of ``S = Hom(M, R)``.

    ``Hom(S, R) = {w : Z w = 0}`` where the rows of Z are the relations
    among the generators. Lattices are reported in the coordinates dual to
    ``rank`` independent generators of S.
    """
    g = M.generators
    m = len(S)
    rk = rank(M)
    _, idx, _, _ = bareiss(R, S)
    Z = gb.syzygies(R, S, g)
    W = gb.syzygies(R, transpose(Z, m), len(Z)) if Z else identity(R, m)
    basis = _free_basis(R, W, rk)
    if basis is not None:
        W = basis
    tf = Lattice(R, rk, [[S[i][j] for i in idx] for j in range(g)], check=False)
    hull = Lattice(R, rk, [[w[i] for i in idx] for w in W], check=False)
    free_part = FpModule(R, len(W), gb.syzygies(R, W, m) if basis is None else [])
    B = gb.strong_basis(R, W, m)
    images = [[] for _ in W]
    for j in range(g):
        v = [S[i][j] for i in range(m)]
        ok, cert = gb.membership(v, B)
        if not ok:
            raise AssertionError("image of a generator outside the hull")
        for k in range(len(W)):
            images[k].append(cert[k])
    return tf, hull, free_part, images
