"""Tiled orders ``{(a_ij) : a_ij in P^lambda_ij}`` inside Mat(n, R).

At a height-one prime P the localized order is a tiled order over the DVR
R_P and everything is exponent arithmetic: columns i and j are equivalent
when ``lambda_ij + lambda_ji = 0`` (the columns then differ by a constant),
the radical has exponents ``rho_ij = lambda_ij + [i ~ j]``, and the order is
hereditary at P iff every radical column is a shift of a column of Lambda.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, NotApplicable
from .rings import Height1Prime, Ring, prime_from_label


def check_order(L) -> tuple:
    """``(ok, witness)``; the witness is ``("diagonal", i)`` or
    ``("triangle", (i, j, k))`` with 1-based indices."""
    n = len(L)
    if any(len(row) != n for row in L):
        raise InputError("the exponent matrix must be square")
    for i in range(n):
        if L[i][i] != 0:
            return False, ("diagonal", i + 1)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if L[i][j] + L[j][k] < L[i][k]:
                    return False, ("triangle", (i + 1, j + 1, k + 1))
    return True, None


def _validate(L):
    try:
        L = [[int(e) for e in row] for row in L]
    except (TypeError, ValueError):
        raise InputError("exponent matrices hold integers") from None
    ok, w = check_order(L)
    if not ok:
        raise InputError(f"not an order: {w[0]} condition fails at {w[1]}")
    return L


@dataclass
class TiledOrder:
    ring: Ring
    n: int
    assign: dict = field(default_factory=dict)  # Height1Prime -> exponent matrix

    def __post_init__(self):
        if self.n < 1:
            raise InputError("the order needs n >= 1")
        out = {}
        for P, L in self.assign.items():
            L = _validate(L)
            if len(L) != self.n:
                raise InputError("exponent matrix of the wrong size")
            out[P] = L
        self.assign = dict(sorted(out.items()))

    def matrix(self, P) -> list:
        return self.assign.get(P, [[0] * self.n for _ in range(self.n)])

    @classmethod
    def from_json(cls, ring, obj):
        if not isinstance(obj, dict) or "n" not in obj:
            raise InputError('order JSON needs "n" and optionally "assign"')
        assign = {prime_from_label(ring, k): v for k, v in obj.get("assign", {}).items()}
        return cls(ring, int(obj["n"]), assign)

    def to_json(self):
        return {"n": self.n, "assign": {P.label: L for P, L in self.assign.items()}}


def column_classes(L) -> list:
    """Classes of shift-equivalent columns as sorted 0-based index lists."""
    n = len(L)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        cls = [j for j in range(n) if L[i][j] + L[j][i] == 0]
        for j in cls:
            seen[j] = True
        out.append(cls)
    return out


def radical_exponents(L) -> list:
    n = len(L)
    return [[L[i][j] + (1 if L[i][j] + L[j][i] == 0 else 0) for j in range(n)] for i in range(n)]


def _shift_match(col, L):
    """Index k with ``col - (column k of L)`` constant, or None."""
    n = len(L)
    for k in range(n):
        d = {col[i] - L[i][k] for i in range(n)}
        if len(d) == 1:
            return k
    return None


@dataclass(frozen=True)
class PrimeAbove:
    base: Height1Prime
    cls: int  # 1-based class id
    multiplicity: int
    columns: tuple  # 1-based column indices

    @property
    def label(self) -> str:
        return f"{self.base.label}#{self.cls}"

    def to_json(self):
        return {"base": self.base.label, "class": self.cls, "m": self.multiplicity, "columns": list(self.columns)}


def primes_above(A: TiledOrder, P: Height1Prime) -> list:
    classes = column_classes(A.matrix(P))
    return [PrimeAbove(P, c + 1, len(cl), tuple(j + 1 for j in cl)) for c, cl in enumerate(classes)]


def is_hereditary_at(A: TiledOrder, P: Height1Prime) -> bool:
    L = A.matrix(P)
    rho = radical_exponents(L)
    n = A.n
    return all(_shift_match([rho[i][j] for i in range(n)], L) is not None for j in range(n))


@dataclass
class GlDimReport:
    value: int | None  # 1, or None for the lower bound ">= 2"
    failing: list = field(default_factory=list)

    def to_json(self):
        if self.value == 1:
            return 1
        return {"at_least": 2, "primes": [P.label for P in self.failing]}

    def __str__(self):
        if self.value == 1:
            return "1"
        return ">=2 at {" + ", ".join(str(P) for P in self.failing) + "}"


def order_gl_dim_tilde(A: TiledOrder) -> GlDimReport:
    failing = [P for P in A.assign if not is_hereditary_at(A, P)]
    return GlDimReport(None if failing else 1, failing)


def successor(A: TiledOrder, P: Height1Prime, cls: int) -> int:
    """Class of the top of ``rad P_c`` for the projective of class c."""
    L = A.matrix(P)
    classes = column_classes(L)
    rho = radical_exponents(L)
    j = classes[cls - 1][0]
    k = _shift_match([rho[i][j] for i in range(A.n)], L)
    if k is None:
        raise NotApplicable("the order is not hereditary at this prime")
    return next(c + 1 for c, cl in enumerate(classes) if k in cl)


@dataclass
class UniserialDescriptor:
    prime: PrimeAbove
    length: int
    tops: list  # class ids, top first
    socle: int

    def to_json(self):
        return {"prime": self.prime.to_json(), "length": self.length, "tops": list(self.tops), "socle": self.socle}


def uniserial(A: TiledOrder, Pa: PrimeAbove, l: int) -> UniserialDescriptor:
    """The uniserial module of length l with top ``U_Pa``: the radical chain
    ``P_c / rad^l P_c`` of the indecomposable projective of class c."""
    if l < 1:
        raise InputError("the length must be positive")
    if not is_hereditary_at(A, Pa.base):
        raise NotApplicable("uniserial modules are catalogued for hereditary localizations")
    if not 1 <= Pa.cls <= len(column_classes(A.matrix(Pa.base))):
        raise InputError("unknown prime above")
    tops = [Pa.cls]
    while len(tops) < l:
        tops.append(successor(A, Pa.base, tops[-1]))
    return UniserialDescriptor(Pa, l, tops, tops[-1])
