"""Formal injective objects of the quotient category: finite sums of the
generic injectives Q_j and of the hulls E(U_P) of the simple modules at
height-one primes."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotCodivisorial
from .local_snf import local_module
from .modules import FpModule, Lattice, height1_support, rank


@dataclass
class FormalInjective:
    generic: dict = field(default_factory=dict)  # component index -> count
    locals: dict = field(default_factory=dict)  # prime label -> count
    default: int | None = None  # count at every unlisted height-one prime

    def __post_init__(self):
        self.generic = {k: v for k, v in sorted(self.generic.items()) if v}
        self.locals = {k: v for k, v in sorted(self.locals.items()) if v}
        if self.default == 0:
            self.default = None

    def __add__(self, other: "FormalInjective") -> "FormalInjective":
        gen = dict(self.generic)
        for k, v in other.generic.items():
            gen[k] = gen.get(k, 0) + v
        loc = {}
        d1, d2 = self.default or 0, other.default or 0
        for k in set(self.locals) | set(other.locals):
            loc[k] = self.locals.get(k, d1) + other.locals.get(k, d2)
        default = None if self.default is None and other.default is None else d1 + d2
        return FormalInjective(gen, loc, default)

    def key(self):
        return (tuple(self.generic.items()), tuple(self.locals.items()), self.default)

    def __eq__(self, other):
        return isinstance(other, FormalInjective) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_zero(self) -> bool:
        return not self.generic and not self.locals and self.default is None

    def to_json(self):
        return {
            "generic": {str(k): v for k, v in self.generic.items()},
            "locals": dict(self.locals),
            "default": self.default,
        }


@dataclass
class DivisorWithDefault:
    default: int
    exceptions: dict = field(default_factory=dict)  # Height1Prime -> count

    def __post_init__(self):
        self.exceptions = {P: v for P, v in sorted(self.exceptions.items()) if v != self.default}

    def __getitem__(self, P):
        return self.exceptions.get(P, self.default)

    def to_json(self):
        return {"default": self.default, "exceptions": {P.label: v for P, v in self.exceptions.items()}}


def _local_counts(M: FpModule) -> dict:
    """Number of cyclic torsion summands of ``M_P`` at each support prime."""
    out = {}
    for P in sorted(height1_support(M).primes):
        n = len(local_module(M, P)[1])
        if n:
            out[P.label] = n
    return out


def _generic(M: FpModule) -> dict:
    r = rank(M)
    if isinstance(r, list):
        return {i: v for i, v in enumerate(r)}
    return {0: r}


def tilde_hull_descriptor(M: FpModule) -> FormalInjective:
    """Hull descriptor of the image of M in the quotient category, read off
    from local data; it ignores the part of M vanishing at every prime."""
    return FormalInjective(_generic(M), _local_counts(M))


def injective_hull_descriptor(M: FpModule) -> FormalInjective:
    """``E(M)`` for codivisorial M: ranks of tf M and socle counts."""
    from .divisorial import is_codivisorial

    if not is_codivisorial(M):
        raise NotCodivisorial("the module has a nonzero submodule vanishing at every height-one prime")
    return tilde_hull_descriptor(M)


def hull_coproduct(items) -> FormalInjective:
    out = FormalInjective()
    for e in items:
        out = out + e
    return out


def socle_ranks(L: Lattice) -> DivisorWithDefault:
    """``r_L(P)`` for a reflexive lattice: every localization is free."""
    return DivisorWithDefault(L.rank, {})


def e_of_QM_mod_M(L: Lattice) -> FormalInjective:
    """``E(QL/L)``: the socle rank at every height-one prime."""
    s = socle_ranks(L)
    return FormalInjective({}, {P.label: v for P, v in s.exceptions.items()}, s.default or None)
