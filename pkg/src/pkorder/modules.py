"""Finitely presented modules, lattices, support, annihilators and the
part of a module that vanishes at every height-one prime.

A module is ``R^g / N`` where ``N`` is the row span of the relation matrix
(one relation per row). Over a product ring a module is the product of its
component modules, and every operation works componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math
from fractions import Fraction

from . import gb
from .arith.parse import parse_fraction
from .arith.ratfunc import RatFunc
from .errors import InputError
from .matrix import bareiss, minors_gcd, nullspace, transpose
from .rings import (
    Height1Prime,
    ProductRing,
    prime_factorization,
    ring_from_json,
)


class FpModule:
    """``coker(R^k -> R^g)``, relations given as rows of length ``g``."""

    __slots__ = ("ring", "generators", "relations")

    def __init__(self, ring, generators: int, relations=()):
        if generators < 0:
            raise InputError("generator count must be non-negative")
        rels = []
        for r in relations:
            r = list(r)
            if len(r) != generators:
                raise InputError(
                    f"relation of length {len(r)} for a module with {generators} generators"
                )
            if not all(ring.is_zero(e) for e in r):
                rels.append(r)
        self.ring = ring
        self.generators = generators
        self.relations = rels

    @classmethod
    def free(cls, ring, n: int) -> "FpModule":
        return cls(ring, n, [])

    @classmethod
    def cyclic(cls, ring, ideal) -> "FpModule":
        """``R / (ideal)``."""
        return cls(ring, 1, [[a] for a in ideal])

    @classmethod
    def from_json(cls, obj, ring=None) -> "FpModule":
        if ring is None:
            if "ring" not in obj:
                raise InputError("module JSON needs a 'ring'")
            ring = ring_from_json(obj["ring"])
        g = obj.get("generators")
        if not isinstance(g, int):
            raise InputError("module JSON needs an integer 'generators'")
        rels = []
        for row in obj.get("relations", []):
            if not isinstance(row, list):
                raise InputError("each relation must be a list of element strings")
            rels.append([ring.parse(str(e)) if not isinstance(e, list) else ring.parse(e) for e in row])
        return cls(ring, g, rels)

    def to_json(self) -> dict:
        return {
            "ring": self.ring.descriptor(),
            "generators": self.generators,
            "relations": [[self.ring.fmt(e) for e in r] for r in self.relations],
        }

    def __repr__(self):
        return f"FpModule({self.ring!r}, {self.generators}, {len(self.relations)} relations)"

    @property
    def is_product(self) -> bool:
        return isinstance(self.ring, ProductRing)

    def component(self, i: int) -> "FpModule":
        R = self.ring.factors[i]
        return FpModule(R, self.generators, [[e[i] for e in r] for r in self.relations])

    def components(self) -> list:
        if self.is_product:
            return [self.component(i) for i in range(len(self.ring.factors))]
        return [self]

    def direct_sum(self, other: "FpModule") -> "FpModule":
        if other.ring != self.ring:
            raise InputError("direct sum of modules over different rings")
        z = self.ring.zero()
        g, h = self.generators, other.generators
        rels = [list(r) + [z] * h for r in self.relations]
        rels += [[z] * g + list(r) for r in other.relations]
        return FpModule(self.ring, g + h, rels)

    def quotient(self, extra) -> "FpModule":
        """``M / (span of extra vectors)``."""
        return FpModule(self.ring, self.generators, list(self.relations) + [list(v) for v in extra])


def direct_sum(*mods) -> FpModule:
    out = mods[0]
    for m in mods[1:]:
        out = out.direct_sum(m)
    return out


def _domain(M: FpModule):
    if M.is_product:
        raise InputError("operation expects a domain backend; split the product first")
    return M.ring


# ----------------------------------------------------------------------------
# lattices


class Lattice:
    """A finitely generated R-submodule of ``Q^r`` spanning ``Q^r``.

    Generators are stored as integral vectors together with one common
    denominator ``den``: the lattice is ``(1/den) * span(vectors)``.
    """

    __slots__ = ("ring", "rank", "vectors", "den")

    def __init__(self, ring, rank: int, vectors, den=None, check: bool = True):
        self.ring = ring
        self.rank = rank
        self.vectors = [list(v) for v in vectors if not all(ring.is_zero(e) for e in v)]
        self.den = ring.one() if den is None else den
        if check and rank and _rank_of(ring, self.vectors) != rank:
            raise InputError("lattice generators do not span Q^r")

    @classmethod
    def from_field_vectors(cls, ring, rank, vectors) -> "Lattice":
        """Build from vectors with entries in the fraction field."""
        den = ring.one()
        rows = [list(v) for v in vectors]
        for v in rows:
            for q in v:
                _, d = _parts(ring, q)
                den = _lcm(ring, den, d)
        ints = []
        for v in rows:
            row = []
            for q in v:
                n, d = _parts(ring, q)
                row.append(ring.mul(n, ring.exquo(den, d)))
            ints.append(row)
        return cls(ring, rank, ints, den)

    @classmethod
    def free(cls, ring, r: int) -> "Lattice":
        return cls(ring, r, [[ring.one() if i == j else ring.zero() for j in range(r)] for i in range(r)])

    def field_vectors(self):
        R = self.ring
        return [[R.frac(e, self.den) for e in v] for v in self.vectors]

    def to_json(self):
        R = self.ring
        return {
            "rank": self.rank,
            "generators": [[_fmt_field(R, R.frac(e, self.den)) for e in v] for v in self.vectors],
        }

    @classmethod
    def from_json(cls, ring, obj) -> "Lattice":
        """``{"rank": r, "generators": [["1/2", "x"], ...]}``."""
        if not isinstance(obj, dict) or not isinstance(obj.get("rank"), int):
            raise InputError("lattice JSON needs an integer 'rank' and 'generators'")
        rows = []
        for v in obj.get("generators", []):
            if not isinstance(v, list) or len(v) != obj["rank"]:
                raise InputError("each lattice generator must have length rank")
            row = []
            for e in v:
                n, d = parse_fraction(str(e))
                row.append(ring.frac(ring.parse(n), ring.parse(d)))
            rows.append(row)
        return cls.from_field_vectors(ring, obj["rank"], rows)

    def __repr__(self):
        return f"Lattice(rank={self.rank}, {len(self.vectors)} generators)"


def _fmt_field(R, q) -> str:
    return str(q)


def _parts(ring, q):
    if isinstance(q, Fraction):
        return q.numerator, q.denominator
    if isinstance(q, RatFunc):
        return q.num, q.den
    if isinstance(q, int) and ring.kind == "Z":
        return q, 1
    return ring.field_parts(q) if hasattr(ring, "field_parts") else (q, ring.one())


def _lcm(ring, a, b):
    g = ring.gcd(a, b)
    out = ring.exquo(ring.mul(a, b), g)
    return ring.normalize(out)[1]


def _rank_of(ring, rows) -> int:
    if not rows:
        return 0
    return bareiss(ring, rows)[0]


# ----------------------------------------------------------------------------
# rank and support


@dataclass
class SupportProfile:
    """Height-one support of the torsion part, with local lengths, and the
    torsion-free rank of each Q-component."""

    primes: dict  # Height1Prime -> total local length of the torsion part
    ranks: list

    @property
    def support(self) -> list:
        return sorted(self.primes)

    def to_json(self):
        return {
            "primes": [[P.label, n] for P, n in sorted(self.primes.items())],
            "ranks": list(self.ranks),
        }


def relation_rank(M: FpModule) -> int:
    R = _domain(M)
    return _rank_of(R, M.relations)


def rank(M: FpModule):
    """Rank of ``Q (x) M``: an int for a domain, a list for a product."""
    if M.is_product:
        return [rank(C) for C in M.components()]
    return M.generators - relation_rank(M)


def _candidate_primes(M: FpModule):
    """``(r, g, exhaustive)``: relation rank and a gcd of r-minors."""
    R = M.ring
    if not M.relations:
        return 0, R.one(), True
    r, rows, cols, minor = bareiss(R, M.relations)
    g, exhaustive = minors_gcd(R, M.relations, r, start=R.normalize(minor)[1])
    return r, g, exhaustive


def height1_support(M: FpModule) -> SupportProfile:
    if M.is_product:
        primes = {}
        ranks = []
        for i, C in enumerate(M.components()):
            sp = height1_support(C)
            for P, n in sp.primes.items():
                primes[Height1Prime(P.gen, i)] = n
            ranks.extend(sp.ranks)
        return SupportProfile(primes, ranks)
    from .local_snf import local_snf

    R = M.ring
    r, g, exhaustive = _candidate_primes(M)
    primes = {}
    if not R.is_unit(g):
        for P, v in prime_factorization(R, g).items():
            if exhaustive:
                primes[P] = v
            else:
                ex = local_snf(R, M.relations, P, ncols=M.generators).exponents
                if ex:
                    primes[P] = sum(ex)
    return SupportProfile(primes, [M.generators - r])


def is_in_X(M: FpModule) -> bool:
    """True iff ``M_P = 0`` at every height-one prime."""
    if M.is_product:
        return all(is_in_X(C) for C in M.components())
    R = M.ring
    if M.generators == 0:
        return True
    if len(M.relations) < M.generators:
        return False
    r, rows, cols, minor = bareiss(R, M.relations)
    if r < M.generators:
        return False
    g, exhaustive = minors_gcd(R, M.relations, r, start=R.normalize(minor)[1])
    if R.is_unit(g):
        return True
    if exhaustive:
        return False
    return not height1_support(M).primes


# ----------------------------------------------------------------------------
# annihilators and colon ideals


def _ideal_basis(R, gens):
    gens = [a for a in gens if not R.is_zero(a)]
    if not gens:
        return [R.zero()]
    B = gb.strong_basis(R, [[a] for a in gens], 1)
    return [v[0] for v in B.vectors]


def colon_element(M: FpModule, v) -> list:
    """Generators of ``ann(v) = {a : a*v in N}``."""
    R = _domain(M)
    syz = gb.syzygies(R, [list(v)] + M.relations, M.generators)
    return _ideal_basis(R, [s[0] for s in syz])


def intersect_ideals(R, I, J) -> list:
    one, zero = R.one(), R.zero()
    vecs = [[one, one]] + [[a, zero] for a in I] + [[zero, b] for b in J]
    syz = gb.syzygies(R, vecs, 2)
    return _ideal_basis(R, [s[0] for s in syz])


def annihilator(M: FpModule) -> list:
    """Generators of ``ann_R M``; ``[0]`` when M has positive rank."""
    if M.is_product:
        comps = [annihilator(C) for C in M.components()]
        n = max(len(c) for c in comps)
        out = []
        for k in range(n):
            out.append(tuple(c[k] if k < len(c) else c[0] for c in comps))
        return out
    R = M.ring
    if rank(M) > 0:
        return [R.zero()]
    ideal = [R.one()]
    for i in range(M.generators):
        e = [R.one() if j == i else R.zero() for j in range(M.generators)]
        ideal = intersect_ideals(R, ideal, colon_element(M, e))
    return ideal


# ----------------------------------------------------------------------------
# torsion submodule, torsion-free quotient


@dataclass
class TorsionData:
    """``T = {v : v*Y = 0} / N``; the columns of ``Y`` form a basis over the
    fraction field of the right kernel of the relation matrix, so that
    ``v -> v*Y`` embeds ``tf M`` in ``R^rank``."""

    Y: list  # g x rank
    rank: int
    _gens: list | None = None
    _ring: object = None

    @property
    def cols(self) -> list:
        return list(range(self.rank))

    @property
    def gens(self) -> list:
        """Generators of ``{v : v*Y = 0}`` (computed on first use)."""
        if self._gens is None:
            self._gens = gb.syzygies(self._ring, [list(row) for row in self.Y], self.rank)
        return self._gens


def torsion_data(M: FpModule) -> TorsionData:
    R = _domain(M)
    g = M.generators
    rk = g - _rank_of(R, M.relations)
    one, zero = R.one(), R.zero()
    if rk == 0:
        gens = [[one if j == i else zero for j in range(g)] for i in range(g)]
        return TorsionData([[] for _ in range(g)], 0, gens, R)
    if not M.relations:
        Y = [[one if j == i else zero for j in range(g)] for i in range(g)]
        return TorsionData(Y, g, [], R)
    ker = nullspace(R, M.relations, g)  # columns y with Phi y = 0
    if len(ker) != rk:
        raise AssertionError("kernel rank mismatch")
    return TorsionData(transpose(ker, g), rk, None, R)


def tf_embedding(M: FpModule, td: TorsionData | None = None) -> list:
    """Rows ``Y[j, cols]``: images of the generators in ``R^rank``."""
    td = td or torsion_data(M)
    return [list(row) for row in td.Y]


def tf_lattice(M: FpModule) -> Lattice:
    R = _domain(M)
    td = torsion_data(M)
    return Lattice(R, td.rank, tf_embedding(M, td), check=False)


def submodule_presentation(M: FpModule, gens) -> FpModule:
    """Abstract presentation of the submodule of M generated by ``gens``."""
    R = _domain(M)
    n = len(gens)
    if n == 0:
        return FpModule(R, 0, [])
    syz = gb.syzygies(R, [list(v) for v in gens] + M.relations, M.generators)
    return FpModule(R, n, [s[:n] for s in syz])


def torsion_submodule(M: FpModule):
    """``(presentation of tors M, inclusion rows in R^g)``."""
    td = torsion_data(M)
    gens = _prune_mod_relations(M, td.gens)
    return submodule_presentation(M, gens), gens


def _prune_mod_relations(M: FpModule, gens) -> list:
    """A smaller generating set of ``(span(gens) + N) / N``."""
    R = M.ring
    if not gens:
        return []
    g = M.generators
    B = gb.strong_basis(R, [list(v) for v in gens] + M.relations, g)
    if M.relations:
        NB = gb.strong_basis(R, M.relations, g)
        out = [v for v in B.vectors if not gb.membership(v, NB, certificate=False)[0]]
    else:
        out = [list(v) for v in B.vectors]
    return out


# ----------------------------------------------------------------------------
# the X-part


@dataclass
class XPart:
    sub: FpModule  # presentation of M_X
    inclusion: list  # generators of M_X as vectors in R^g
    quotient: FpModule  # M / M_X
    evidence: dict = field(default_factory=dict)


def x_part(M: FpModule) -> XPart:
    """The largest submodule of M that vanishes at every height-one prime."""
    if M.is_product:
        raise InputError("x_part works per component; call it on M.component(i)")
    R = M.ring
    if R.dim <= 1:
        return XPart(FpModule(R, 0, []), [], M, {"reason": "dimension one"})
    td = torsion_data(M)
    tgens = _prune_mod_relations(M, td.gens)
    if not tgens:
        return XPart(FpModule(R, 0, []), [], M, {"reason": "torsion-free"})
    T = submodule_presentation(M, tgens)
    m = len(tgens)
    # a nonzero element killing the torsion part
    a = _torsion_killer(M)
    # Hom(T, R/a): images y of the generators with Psi*y = 0 mod a
    k = len(T.relations)
    if k:
        cols = transpose(T.relations, m)
        vecs = [list(c) for c in cols] + [
            [a if l == i else R.zero() for l in range(k)] for i in range(k)
        ]
        homs = [s[:m] for s in gb.syzygies(R, vecs, k)]
    else:
        homs = [[R.one() if j == i else R.zero() for j in range(m)] for i in range(m)]
    homs = [h for h in homs if not all(R.divides(a, e) for e in h)]
    # common kernel of all those homomorphisms
    q = len(homs)
    if q == 0:
        coeffs = [[R.one() if j == i else R.zero() for j in range(m)] for i in range(m)]
    else:
        rows = [[homs[j][i] for j in range(q)] for i in range(m)]
        vecs = rows + [[a if l == i else R.zero() for l in range(q)] for i in range(q)]
        coeffs = [s[:m] for s in gb.syzygies(R, vecs, q)]
    g = M.generators
    xgens = []
    for c in coeffs:
        v = [R.zero()] * g
        for ci, u in zip(c, tgens):
            if not R.is_zero(ci):
                v = [R.add(x, R.mul(ci, y)) for x, y in zip(v, u)]
        xgens.append(v)
    xgens = _prune_mod_relations(M, xgens)
    sub = submodule_presentation(M, xgens)
    quo = M.quotient(xgens)
    return XPart(sub, xgens, quo, {"killer": R.fmt(a), "homs": q})


def _torsion_killer(M: FpModule):
    """A nonzero element annihilating tors M: a nonzero maximal-rank minor."""
    R = M.ring
    r, rows, cols, minor = bareiss(R, M.relations)
    return R.normalize(minor)[1]


def element_annihilator(M: FpModule, v) -> list:
    return colon_element(M, v)


def element_in_MX(M: FpModule, v) -> bool:
    """True iff the class of ``v`` lies in M_X: ``ann(v)`` is contained in
    no height-one prime, i.e. its generators have unit gcd."""
    if M.is_product:
        return all(element_in_MX(C, [e[i] for e in v]) for i, C in enumerate(M.components()))
    R = M.ring
    if len(v) != M.generators:
        raise InputError("element length does not match the generator count")
    if all(R.is_zero(e) for e in v):
        return True
    ann = colon_element(M, v)
    g = R.zero()
    for a in ann:
        g = R.gcd(g, a)
    return R.is_unit(g)


def is_zero_module(M: FpModule) -> bool:
    if M.is_product:
        return all(is_zero_module(C) for C in M.components())
    R = M.ring
    if M.generators == 0:
        return True
    if not M.relations:
        return False
    B = gb.strong_basis(R, M.relations, M.generators)
    for i in range(M.generators):
        e = [R.one() if j == i else R.zero() for j in range(M.generators)]
        if not gb.membership(e, B, certificate=False)[0]:
            return False
    return True


def cardinality(M: FpModule):
    """``|M|`` for a finite module over Z or Z[x]; ``None`` if infinite."""
    R = _domain(M)
    if R.kind not in ("Z", "ZX"):
        raise InputError("cardinality is defined here for Z and Z[x] modules")
    g = M.generators
    if g == 0:
        return 1
    if not M.relations:
        return None
    B = gb.strong_basis(R, M.relations, g)
    leads = {}
    for w in B.raw:
        i, d, c = gb._lead(w)
        leads.setdefault(i, []).append((d, c))
    total = 1
    for i in range(g):
        if i not in leads:
            return None
        items = sorted(leads[i])
        if R.kind == "Z":
            total *= items[0][1]
            continue
        # coefficient bound at degree d: gcd of leading coefficients in degree <= d
        cur = 0
        prev_d = None
        for d, c in items:
            if prev_d is not None and cur:
                total *= cur ** (d - prev_d)
            cur = math.gcd(cur, c)
            prev_d = d
        if cur != 1:
            return None
        if items[0][0] > 0:
            return None
    return total


def truncate(M: FpModule, ideal, n: int) -> FpModule:
    """``M / I^n M`` for an ideal I given by generators."""
    R = _domain(M)
    powers = [R.one()]
    for _ in range(n):
        powers = [R.mul(p, a) for p in powers for a in ideal]
    extra = []
    for i in range(M.generators):
        for p in powers:
            extra.append([p if j == i else R.zero() for j in range(M.generators)])
    return M.quotient(extra)


# ----------------------------------------------------------------------------
# maps, kernels, local tests


def apply_map(R, F, v) -> list:
    """Image of the row vector ``v`` under the matrix ``F`` (rows = images
    of the generators)."""
    h = len(F[0]) if F else 0
    out = [R.zero()] * h
    for a, row in zip(v, F):
        if R.is_zero(a):
            continue
        out = [R.add(x, R.mul(a, y)) for x, y in zip(out, row)]
    return out


def _check_map(F, M: FpModule, N: FpModule):
    R = _domain(M)
    if N.ring != R:
        raise InputError("source and target live over different rings")
    if len(F) != M.generators or any(len(r) != N.generators for r in F):
        raise InputError(f"map matrix must be {M.generators} x {N.generators}")
    return R


def is_well_defined(F, M: FpModule, N: FpModule) -> bool:
    """Every relation of M maps into the relations of N."""
    R = _check_map(F, M, N)
    if N.generators == 0:
        return True
    images = [apply_map(R, F, r) for r in M.relations]
    images = [v for v in images if not all(R.is_zero(e) for e in v)]
    if not images:
        return True
    if not N.relations:
        return False
    B = gb.strong_basis(R, N.relations, N.generators)
    return all(gb.membership(v, B, certificate=False)[0] for v in images)


def kernel_of_map(F, M: FpModule, N: FpModule, check: bool = True):
    """``(presentation of ker f, inclusion rows in R^g)``."""
    R = _check_map(F, M, N)
    if check and not is_well_defined(F, M, N):
        raise InputError("the matrix does not define a map between the modules")
    g, h = M.generators, N.generators
    if g == 0:
        return FpModule(R, 0, []), []
    if h == 0:
        gens = [[R.one() if j == i else R.zero() for j in range(g)] for i in range(g)]
    else:
        syz = gb.syzygies(R, [list(r) for r in F] + N.relations, h)
        gens = [s[:g] for s in syz]
    gens = _prune_mod_relations(M, gens)
    return submodule_presentation(M, gens), gens


def cokernel(F, M: FpModule, N: FpModule) -> FpModule:
    """``N / image(f)`` by stacking the images onto the relations."""
    _check_map(F, M, N)
    return N.quotient([list(r) for r in F])


def local_zero(M: FpModule, v, P, snf=None) -> bool:
    """True iff the class of ``v`` vanishes in ``M_P``."""
    from .local_snf import local_snf
    from .rings import element_valuation

    R = _domain(M)
    if all(R.is_zero(e) for e in v):
        return True
    s = snf or local_snf(R, M.relations, P, ncols=M.generators, track=True)
    w = apply_map(R, s.V, v)
    t = len(s.diagonal)
    for i, d in enumerate(s.diagonal):
        if element_valuation(w[i], P) < element_valuation(d, P):
            return False
    return all(R.is_zero(e) for e in w[t:])


def element_in_MX_local(M: FpModule, v) -> bool:
    """The element test by localization: ``v`` is torsion and dies at every
    prime of the torsion support."""
    R = _domain(M)
    td = torsion_data(M)
    if td.rank and not all(R.is_zero(e) for e in apply_map(R, td.Y, v)):
        return False
    if R.dim <= 1:
        return _zero_class(M, v)
    return all(local_zero(M, v, P) for P in height1_support(M).primes)


def _zero_class(M: FpModule, v) -> bool:
    R = M.ring
    if all(R.is_zero(e) for e in v):
        return True
    if not M.relations:
        return False
    B = gb.strong_basis(R, M.relations, M.generators)
    return gb.membership(list(v), B, certificate=False)[0]


def hom_generators(M: FpModule):
    """``(columns, is_basis)``: vectors in R^g generating
    ``Hom(M, R) = {y : Phi y = 0}``, and whether they form a basis."""
    R = _domain(M)
    g = M.generators
    one, zero = R.one(), R.zero()
    td = torsion_data(M)
    rk = td.rank
    if rk == 0:
        return [], True
    if not M.relations:
        return [[one if j == i else zero for j in range(g)] for i in range(g)], True
    cols = [[row[k] for row in td.Y] for k in range(rk)]
    if rk == 1 or _saturated(R, cols, rk):
        return cols, True
    r, rows, _, _ = bareiss(R, M.relations)
    indep = [M.relations[i] for i in rows]
    syz = gb.syzygies(R, transpose(indep, g), len(indep))
    basis = _free_basis(R, syz, rk)
    if basis is not None:
        return basis, True
    return syz, False


def hom_basis(M: FpModule):
    """A basis of ``Hom(M, R)`` as columns, or None when no basis turns up
    among small combinations of its generators."""
    gens, ok = hom_generators(M)
    return gens if ok else None


def _saturated(R, cols, rk) -> bool:
    """Do the columns span a saturated submodule (unit gcd of maximal minors)?"""
    A = transpose(cols, len(cols[0]))
    g, exhaustive = minors_gcd(R, A, rk)
    return R.is_unit(g)


def _free_basis(R, gens, rk) -> list:
    """A basis among (small combinations of) generators of a saturated free
    submodule of rank ``rk``."""
    from itertools import combinations

    gens = [list(v) for v in gens if not all(R.is_zero(e) for e in v)]
    gens.sort(key=lambda v: sum(len(R.fmt(e)) for e in v))
    for combo in combinations(range(len(gens)), rk):
        cand = [gens[i] for i in combo]
        if _rank_of(R, cand) == rk and _saturated(R, cand, rk):
            return cand
    # try replacing one element by a sum of two generators
    sums = [[R.add(a, b) for a, b in zip(u, w)] for u, w in combinations(gens, 2)]
    pool = gens + sums
    for combo in combinations(range(len(pool)), rk):
        cand = [pool[i] for i in combo]
        if _rank_of(R, cand) == rk and _saturated(R, cand, rk):
            return cand
    return None
