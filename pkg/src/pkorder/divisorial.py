"""Divisorial hulls of ideals and lattices, quasidivisorial and
codivisorial tests, and the closure of a module."""

from __future__ import annotations

from dataclasses import dataclass

from . import gb
from .errors import InputError
from .local_snf import local_module, local_snf
from .matrix import adjugate, bareiss, det
from .modules import (
    FpModule,
    Lattice,
    _domain,
    height1_support,
    rank,
    tf_lattice,
    x_part,
)
from .rings import (
    Divisor,
    ProductRing,
    divisor,
    element_valuation,
    power,
    prime_element,
)


def _gcd_all(R, gens):
    g = R.zero()
    for a in gens:
        g = R.gcd(g, a)
    return g


def divisorial_hull_ideal(R, gens):
    """``(divisor, g)``: the hull of the ideal is the principal ideal (g)."""
    gens = list(gens)
    if isinstance(R, ProductRing):
        parts = []
        div = Divisor()
        for i, C in enumerate(R.factors):
            d, g = divisorial_hull_ideal(C, [a[i] for a in gens])
            parts.append(g)
            div = div + Divisor({type(P)(P.gen, i): v for P, v in d.items()})
        return div, tuple(parts)
    if not gens or all(R.is_zero(a) for a in gens):
        raise InputError("the ideal needs a nonzero generator")
    g = R.normalize(_gcd_all(R, gens))[1]
    return divisor(R, g), g


def is_quasidivisorial(R, gens) -> bool:
    """True iff the gcd of the generators lies in the ideal they generate."""
    gens = list(gens)
    if isinstance(R, ProductRing):
        return all(is_quasidivisorial(C, [a[i] for a in gens]) for i, C in enumerate(R.factors))
    gens = [a for a in gens if not R.is_zero(a)]
    if not gens:
        raise InputError("the ideal needs a nonzero generator")
    g = _gcd_all(R, gens)
    B = gb.strong_basis(R, [[a] for a in gens], 1)
    return B.contains([g])


def is_codivisorial(M: FpModule) -> bool:
    """True iff M has no nonzero submodule vanishing at every height-one prime."""
    if M.is_product:
        return all(is_codivisorial(C) for C in M.components())
    return not x_part(M).inclusion


# ----------------------------------------------------------------------------
# lattices


def _content(R, vectors):
    g = R.zero()
    for v in vectors:
        for e in v:
            if not R.is_zero(e):
                g = R.gcd(g, e)
                if R.is_unit(g):
                    return R.one()
    return g


def simplify(L: Lattice) -> Lattice:
    """Remove the common factor of the generators and the denominator, and
    drop redundant generators."""
    R = L.ring
    vecs = [list(v) for v in L.vectors]
    den = L.den
    if vecs and R.kind in ("Z", "ZX", "FpX"):
        vecs = gb.strong_basis(R, vecs, L.rank).vectors
    c = R.gcd(_content(R, vecs), den) if vecs else den
    if not R.is_zero(c) and not R.is_unit(c):
        vecs = [[R.exquo(e, c) for e in v] for v in vecs]
        den = R.exquo(den, c)
    u, den = R.normalize(den)
    if not R.is_unit(u) or u != R.one():
        inv = R.exquo(R.one(), u)
        vecs = [[R.mul(inv, e) for e in v] for v in vecs]
    return Lattice(R, L.rank, vecs, den, check=False)


def dual(L: Lattice) -> Lattice:
    """``L* = {phi : phi(L) in R}`` for the standard pairing on ``Q^r``."""
    R = L.ring
    r = L.rank
    G = L.vectors
    m = len(G)
    if m == r:
        # free lattice: the dual basis is given by the columns of adj(G) / det(G)
        A = adjugate(R, G)
        cols = [[R.mul(L.den, A[i][j]) for i in range(r)] for j in range(r)]
        return simplify(Lattice(R, r, cols, det(R, G), check=False))
    _, _, _, minor = bareiss(R, G)
    delta = R.normalize(minor)[1]
    zero = R.zero()
    # psi with G psi = 0 mod delta
    vecs = [[G[i][j] for i in range(m)] for j in range(r)]
    vecs += [[delta if i == k else zero for i in range(m)] for k in range(m)]
    sol = [s[:r] for s in gb.syzygies(R, vecs, m)]
    sol = [v for v in sol if not all(R.is_zero(e) for e in v)]
    scaled = [[R.mul(L.den, e) for e in v] for v in sol]
    return simplify(Lattice(R, r, scaled, delta, check=False))


def reflexive_hull(L: Lattice) -> Lattice:
    """The divisorial hull ``L** = (intersection of the L_P)``."""
    R = L.ring
    if L.rank == 0:
        return Lattice(R, 0, [], check=False)
    if R.dim <= 1:
        return simplify(L)
    if len(L.vectors) == L.rank:
        return simplify(L)
    if L.rank == 1:
        g = R.normalize(_gcd_all(R, [v[0] for v in L.vectors]))[1]
        return simplify(Lattice(R, 1, [[g]], L.den, check=False))
    return dual(dual(L))


def lattice_contains(A: Lattice, B: Lattice) -> bool:
    """Is ``B`` contained in ``A``?"""
    R = A.ring
    if A.rank != B.rank:
        return False
    if not B.vectors:
        return True
    if not A.vectors:
        return False
    # compare (1/a) span(GA) and (1/b) span(GB): b * GA vs a * GB
    GA = [[R.mul(B.den, e) for e in v] for v in A.vectors]
    GB = [[R.mul(A.den, e) for e in v] for v in B.vectors]
    basis = gb.strong_basis(R, GA, A.rank)
    return all(basis.contains(v) for v in GB)


def lattice_equal(A: Lattice, B: Lattice) -> bool:
    return lattice_contains(A, B) and lattice_contains(B, A)


def lattice_local_data(L: Lattice, P) -> list:
    """Elementary divisor exponents of ``L_P`` relative to ``R_P^r``."""
    R = L.ring
    s = local_snf(R, L.vectors, P, ncols=L.rank)
    shift = element_valuation(L.den, P)
    exps = sorted(element_valuation(d, P) - shift for d in s.diagonal)
    return exps + [None] * s.free_rank


def lattice_primes(L: Lattice) -> list:
    """Primes dividing the denominator or the gcd of maximal minors."""
    from .matrix import minors_gcd
    from .rings import prime_factorization

    R = L.ring
    if not L.vectors:
        return []
    g, _ = minors_gcd(R, L.vectors, L.rank)
    out = set(prime_factorization(R, g)) if not R.is_unit(g) else set()
    if not R.is_unit(L.den):
        out |= set(prime_factorization(R, L.den))
    return sorted(out)


# ----------------------------------------------------------------------------
# closure


@dataclass
class ClosureDescriptor:
    torsion: dict  # Height1Prime -> sorted exponent list
    ranks: list
    hull: Lattice | None
    representative: FpModule

    def key(self):
        return (tuple((P.label, tuple(e)) for P, e in sorted(self.torsion.items())), tuple(self.ranks))

    def __eq__(self, other):
        return isinstance(other, ClosureDescriptor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_json(self):
        return {
            "torsion": {P.label: list(e) for P, e in sorted(self.torsion.items())},
            "ranks": list(self.ranks),
            "hull": self.hull.to_json() if self.hull is not None else None,
            "representative": self.representative.to_json(),
        }


def torsion_map(M: FpModule) -> dict:
    out = {}
    for P in sorted(height1_support(M).primes):
        ex = local_module(M, P)[1]
        if ex:
            out[P] = sorted(ex)
    return out


def model_module(R, torsion: dict, r: int) -> FpModule:
    """``(+)_P (+)_i R/(pi^l) (+) R^r``."""
    diag = [power(R, prime_element(R, P), l) for P, ex in sorted(torsion.items()) for l in ex]
    n = len(diag) + r
    zero = R.zero()
    return FpModule(R, n, [[d if j == i else zero for j in range(n)] for i, d in enumerate(diag)])


def closure(M: FpModule, with_hull: bool = True) -> ClosureDescriptor:
    """Local data of the closure, the hull of tf M and a global model."""
    if M.is_product:
        raise InputError("closure works per component of a product ring")
    R = _domain(M)
    tors = torsion_map(M)
    r = rank(M)
    hull = None
    if with_hull:
        hull = reflexive_hull(tf_lattice(M)) if r else Lattice(R, 0, [], check=False)
    return ClosureDescriptor(tors, [r], hull, model_module(R, tors, r))
