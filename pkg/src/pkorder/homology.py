"""Homological algebra of the quotient category, computed prime by prime.

Every localization R_P at a height-one prime is a DVR, so all Ext groups
come from closed forms on local Smith data:
Hom(R/pi^a, R/pi^b) = R/pi^min(a,b), Hom(R, X) = X,
Ext^1(R/pi^a, R/pi^b) = R/pi^min(a,b), Ext^1(R, -) = 0, Ext^i = 0 for i >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import gb
from .errors import InputError, NotApplicable
from .injectives import FormalInjective
from .local_snf import local_module
from .matrix import transpose
from .modules import FpModule, _domain, height1_support, is_in_X, rank


@dataclass
class LocalHomologyTable:
    """``P -> (free_rank, exponents)`` of a module over R_P; primes with a
    zero entry are omitted."""

    entries: dict = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.entries

    def group(self) -> list:
        """Elementary divisors ``[(P, l)]`` of the torsion entries."""
        return [(P, l) for P, (_, ex) in sorted(self.entries.items()) for l in ex]

    def to_json(self):
        return {P.label: {"free_rank": f, "exponents": list(ex)} for P, (f, ex) in sorted(self.entries.items())}


def _local_hom(nf, na, mb):
    """Hom_{R_P}(R^nf + (+) R/pi^a, (+) R/pi^b) as exponents."""
    out = []
    for b in mb:
        out.extend([b] * nf)
        out.extend(min(a, b) for a in na)
    return sorted(out)


def _local_ext1(na, mb):
    return sorted(min(a, b) for a in na for b in mb)


def ext_tilde(N: FpModule, M: FpModule, i: int) -> LocalHomologyTable:
    """``Ext^i`` in the quotient category for torsion M, as a table of
    Ext groups over the localizations."""
    if i < 0:
        raise InputError("the degree must be non-negative")
    if N.ring != M.ring:
        raise InputError("modules over different rings")
    r = rank(M)
    if (sum(r) if isinstance(r, list) else r) > 0:
        raise NotApplicable("Ext in the quotient category is computed for torsion M only")
    table = {}
    if i >= 2:
        return LocalHomologyTable(table)
    for P in sorted(height1_support(M).primes):
        _, mb = local_module(M, P)
        if not mb:
            continue
        nf, na = local_module(N, P)
        ex = _local_hom(nf, na, mb) if i == 0 else _local_ext1(na, mb)
        if ex:
            table[P] = (0, ex)
    return LocalHomologyTable(table)


# ----------------------------------------------------------------------------
# Ext into R over the base ring


def _homology(R, n, cycles, boundaries) -> FpModule:
    """``span(cycles) / span(boundaries)`` inside R^n, presented."""
    m = len(cycles)
    if m == 0:
        return FpModule(R, 0, [])
    vecs = [list(z) for z in cycles] + [list(b) for b in boundaries]
    rels = [s[:m] for s in gb.syzygies(R, vecs, n)]
    return FpModule(R, m, rels)


def _kernel_cols(R, D, n):
    """Generators of ``{y in R^n : D y = 0}``."""
    if not D:
        return [[R.one() if j == i else R.zero() for j in range(n)] for i in range(n)]
    return gb.syzygies(R, transpose(D, n), len(D))


def ext_base(M: FpModule, i: int) -> FpModule:
    """``Ext^i_R(M, R)`` for ``i`` in 0, 1, 2 from a syzygy resolution
    ``F3 -> F2 -> F1 -> F0 -> M``."""
    R = _domain(M)
    if R.dim != 2:
        raise InputError("ext_base expects the two-dimensional backend")
    if i not in (0, 1, 2):
        raise InputError("degree must be 0, 1 or 2")
    g = M.generators
    D1 = M.relations
    k = len(D1)
    D2 = gb.syzygies(R, D1, g) if D1 else []
    s = len(D2)
    maps = [D1, D2]
    ns = [g, k, s]
    if i == 2:
        D3 = gb.syzygies(R, D2, k) if D2 else []
        maps.append(D3)
    # dual complex R^{n0} -> R^{n1} -> R^{n2}, y -> D y
    n = ns[i]
    cycles = _kernel_cols(R, maps[i], n) if i < len(maps) else []
    if i == 0:
        boundaries = []
    else:
        Dprev = maps[i - 1]
        # columns of D_i are the images of the basis of R^{n_{i-1}}
        boundaries = [[Dprev[r][c] for r in range(n)] for c in range(ns[i - 1])] if Dprev else []
    if n == 0:
        return FpModule(R, 0, [])
    return _homology(R, n, cycles, boundaries)


# ----------------------------------------------------------------------------
# injective dimension, global dimension, resolutions


@dataclass
class InjDimReport:
    zero_object: bool
    primes: dict  # Height1Prime -> injective dimension of M_P
    generic: int | None  # value at every prime when M has positive rank
    sup: int | None

    def to_json(self):
        return {
            "zero_object": self.zero_object,
            "primes": {P.label: v for P, v in sorted(self.primes.items())},
            "generic": self.generic,
            "sup": self.sup,
        }


def inj_dim_tilde(M: FpModule) -> InjDimReport:
    """Injective dimension of the image of M: 1 at every prime where M_P is
    nonzero (a nonzero finitely generated module over a DVR is never
    injective)."""
    if is_in_X(M):
        return InjDimReport(True, {}, None, None)
    r = rank(M)
    r = sum(r) if isinstance(r, list) else r
    primes = {P: 1 for P in height1_support(M).primes}
    return InjDimReport(False, primes, 1 if r else None, 1)


def gl_dim_tilde(obj):
    """1 for the regular commutative backends; tiled orders are delegated."""
    from .tiled import TiledOrder, order_gl_dim_tilde

    if isinstance(obj, TiledOrder):
        return order_gl_dim_tilde(obj)
    return 1


def min_inj_resolution(M: FpModule) -> list:
    """``[E0, E1]`` for torsion M, ``[]`` when M vanishes in the quotient."""
    r = rank(M)
    if (sum(r) if isinstance(r, list) else r) > 0:
        raise NotApplicable("minimal injective resolutions are computed for torsion modules")
    counts = {}
    for P in sorted(height1_support(M).primes):
        t = len(local_module(M, P)[1])
        if t:
            counts[P.label] = t
    if not counts:
        return []
    return [FormalInjective({}, dict(counts)), FormalInjective({}, dict(counts))]
