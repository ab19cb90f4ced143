"""Ring backends and divisor theory.

Backends are Z, F_p[x], Z[x] and finite products of these. Elements are
Python ints (Z), :class:`~pkorder.arith.poly.Poly` (polynomial rings) or
tuples of component elements (products). Elements of the total ring of
fractions are :class:`fractions.Fraction`, :class:`RatFunc` or tuples.

Height-one primes of these rings are principal, so a prime is stored by its
canonical generator: a positive prime integer, a monic irreducible over
F_p, or a primitive irreducible with positive leading coefficient over Z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .arith import factor_fp, factor_zx
from .arith.integers import factorint, is_prime
from .arith.parse import parse_fraction, parse_poly, parse_tuple
from .arith.poly import (
    Poly,
    dup_cmp_key,
    dup_divmod,
    dup_divides,
    dup_exquo,
    dup_format,
    dup_gcd,
    dup_mod,
    dup_monic,
    dup_primitive,
    dup_strip,
)
from .arith.ratfunc import RatFunc
from .errors import InputError

INF = math.inf


@dataclass(frozen=True)
class Factorization:
    unit: object
    factors: tuple  # ((irreducible, exponent), ...)

    def expand(self, ring: "Ring"):
        out = self.unit
        for f, e in self.factors:
            for _ in range(e):
                out = ring.mul(out, f)
        return out


class Ring:
    """Common interface. Subclasses implement the element arithmetic."""

    kind: str
    dim: int

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return not a

    def __str__(self):
        return self.kind


@total_ordering
@dataclass(frozen=True)
class Height1Prime:
    """A height-one prime, stored by its canonical generator.

    ``component`` is set for primes of a product ring; ``gen`` is then the
    generator inside that component.
    """

    gen: object
    component: int | None = None

    @property
    def is_integer(self) -> bool:
        return isinstance(self.gen, int) or self.gen.degree == 0

    @property
    def int_value(self) -> int:
        return self.gen if isinstance(self.gen, int) else self.gen.lc

    def sort_key(self):
        if self.is_integer:
            inner = (0, self.int_value)
        else:
            inner = (1,) + dup_cmp_key(self.gen.c)
        return (inner, -1 if self.component is None else self.component)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def inner_label(self) -> str:
        if self.is_integer:
            return f"int:{self.int_value}"
        return f"poly:{dup_format(self.gen.c)}"

    @property
    def label(self) -> str:
        if self.component is None:
            return self.inner_label()
        return f"c{self.component}:{self.inner_label()}"

    def __str__(self):
        return f"({self.label.split(':', 1)[1] if self.component is None else self.label})"

    def to_json(self) -> dict:
        if self.is_integer:
            inner = {"kind": "int", "p": self.int_value}
        else:
            inner = {"kind": "poly", "f": dup_format(self.gen.c)}
        if self.component is None:
            return inner
        return {"kind": "component", "index": self.component, "prime": inner}

    def inner(self) -> "Height1Prime":
        return Height1Prime(self.gen)


@dataclass(frozen=True, order=True)
class MinimalPrime:
    """The zero ideal of a component: a minimal (height-zero) prime."""

    component: int

    @property
    def label(self) -> str:
        return f"c{self.component}:generic"


@dataclass(frozen=True)
class QComponent:
    index: int
    description: str

    def to_json(self):
        return {"index": self.index, "field": self.description}


class Divisor:
    """Finitely supported map from height-one primes to nonzero integers."""

    __slots__ = ("_data",)

    def __init__(self, data=None):
        items = {} if data is None else dict(data)
        self._data = {P: v for P, v in sorted(items.items()) if v}

    def __getitem__(self, P):
        return self._data.get(P, 0)

    def __iter__(self):
        return iter(self._data)

    def items(self):
        return self._data.items()

    def __len__(self):
        return len(self._data)

    def support(self):
        return list(self._data)

    def __add__(self, other: "Divisor") -> "Divisor":
        out = dict(self._data)
        for P, v in other.items():
            out[P] = out.get(P, 0) + v
        return Divisor(out)

    def __neg__(self):
        return Divisor({P: -v for P, v in self._data.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._data == other._data

    def __hash__(self):
        return hash(tuple(self._data.items()))

    def is_effective(self) -> bool:
        return all(v > 0 for v in self._data.values())

    def to_json(self) -> dict:
        return {P.label: v for P, v in self._data.items()}

    def __repr__(self):
        inner = ", ".join(f"{P}↦{v}" for P, v in self._data.items())
        return f"Divisor({{{inner}}})"


class IntegerRing(Ring):
    kind = "Z"
    dim = 1

    def zero(self):
        return 0

    def one(self):
        return 1

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def exquo(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise InputError(f"{b} does not divide {a}")
        return q

    def divides(self, b, a) -> bool:
        return a == 0 if b == 0 else a % b == 0

    def gcd(self, a, b):
        return math.gcd(a, b)

    def normalize(self, a):
        return (-1, -a) if a < 0 else (1, a)

    def factor(self, a) -> Factorization:
        if a == 0:
            raise InputError("cannot factor 0")
        return Factorization(
            -1 if a < 0 else 1, tuple((p, e) for p, e in factorint(a).items())
        )

    def prime(self, gen) -> Height1Prime:
        return Height1Prime(gen)

    def parse(self, text):
        if isinstance(text, int):
            return text
        c = parse_poly(text)
        if len(c) > 1:
            raise InputError(f"{text!r} is not an integer")
        return c[0] if c else 0

    def fmt(self, a) -> str:
        return str(a)

    def frac(self, num, den=1):
        if den == 0:
            raise InputError("zero denominator")
        return Fraction(num, den)

    def field_parts(self, q):
        q = Fraction(q)
        return q.numerator, q.denominator

    def to_dup(self, a):
        return (a,) if a else ()

    def from_dup(self, c):
        return c[0] if c else 0

    @property
    def modulus(self):
        return None

    def components(self):
        return [QComponent(0, "Q")]

    def descriptor(self):
        return {"kind": "Z"}

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("Z")

    def __repr__(self):
        return "ZZ"


class PolyRing(Ring):
    """Z[x] (``p=None``) or F_p[x]."""

    def __init__(self, p: int | None = None):
        if p is not None and not is_prime(p):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.kind = "ZX" if p is None else "FpX"
        self.dim = 2 if p is None else 1

    @property
    def modulus(self):
        return self.p

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.p == self.p

    def __hash__(self):
        return hash(("poly", self.p))

    def __repr__(self):
        return "ZX" if self.p is None else f"FpX({self.p})"

    def __str__(self):
        return "Z[x]" if self.p is None else f"F_{self.p}[x]"

    def zero(self):
        return Poly._raw((), self.p)

    def one(self):
        return Poly._raw((1,), self.p)

    def x(self):
        return Poly.x(self.p)

    def const(self, k):
        return Poly.const(k, self.p)

    def coerce(self, a):
        if isinstance(a, Poly):
            if a.p != self.p:
                raise InputError("element belongs to a different backend")
            return a
        if isinstance(a, int):
            return Poly.const(a, self.p)
        raise InputError(f"cannot interpret {a!r} as an element of {self}")

    def is_unit(self, a) -> bool:
        c = a.c
        if len(c) != 1:
            return False
        return self.p is not None or c[0] in (1, -1)

    def exquo(self, a, b):
        return Poly._raw(dup_exquo(a.c, b.c, self.p), self.p)

    def divides(self, b, a) -> bool:
        return dup_divides(b.c, a.c, self.p)

    def gcd(self, a, b):
        return Poly._raw(dup_gcd(a.c, b.c, self.p), self.p)

    def normalize(self, a):
        """``(unit, canonical associate)``."""
        if not a.c:
            return self.one(), a
        if self.p is None:
            u = -1 if a.c[-1] < 0 else 1
            return self.const(u), a * u
        lc = a.c[-1]
        return self.const(lc), Poly._raw(dup_monic(a.c, self.p), self.p)

    def factor(self, a) -> Factorization:
        a = self.coerce(a)
        if not a.c:
            raise InputError("cannot factor 0")
        if self.p is None:
            unit, facs = factor_zx.factor_zx(a.c)
            return Factorization(
                self.const(unit), tuple((Poly._raw(g, None), e) for g, e in facs)
            )
        from .config import current

        if a.degree > current().max_degree:
            from .errors import LimitExceeded

            raise LimitExceeded(f"degree {a.degree} exceeds max_degree budget")
        lc, facs = factor_fp.factor(a.c, self.p)
        return Factorization(self.const(lc), tuple((Poly._raw(g, self.p), e) for g, e in facs))

    def prime(self, gen) -> Height1Prime:
        return Height1Prime(self.coerce(gen))

    def parse(self, text):
        if isinstance(text, Poly):
            return self.coerce(text)
        return Poly(parse_poly(text), self.p)

    def fmt(self, a) -> str:
        return dup_format(a.c)

    def frac(self, num, den=None):
        num = self.coerce(num)
        den = self.one() if den is None else self.coerce(den)
        return RatFunc(num, den)

    def field_parts(self, q):
        if isinstance(q, RatFunc):
            return q.num, q.den
        return self.coerce(q), self.one()

    def to_dup(self, a):
        return a.c

    def from_dup(self, c):
        return Poly._raw(dup_strip(c) if self.p is None else dup_mod(c, self.p), self.p)

    def components(self):
        return [QComponent(0, "Q(x)" if self.p is None else f"F_{self.p}(x)")]

    def descriptor(self):
        return {"kind": "ZX"} if self.p is None else {"kind": "FpX", "p": self.p}


class ProductRing(Ring):
    kind = "Product"

    def __init__(self, factors):
        factors = tuple(factors)
        if len(factors) < 2:
            raise InputError("a product ring needs at least two factors")
        for f in factors:
            if isinstance(f, ProductRing):
                raise InputError("product factors must not be products")
        self.factors = factors
        self.dim = max(f.dim for f in factors)

    def __eq__(self, other):
        return isinstance(other, ProductRing) and other.factors == self.factors

    def __hash__(self):
        return hash(("prod", self.factors))

    def __repr__(self):
        return "Product(" + ", ".join(map(repr, self.factors)) + ")"

    def __str__(self):
        return " × ".join(map(str, self.factors))

    def zero(self):
        return tuple(f.zero() for f in self.factors)

    def one(self):
        return tuple(f.one() for f in self.factors)

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def sub(self, a, b):
        return tuple(f.sub(x, y) for f, x, y in zip(self.factors, a, b))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def is_zero(self, a) -> bool:
        return all(f.is_zero(x) for f, x in zip(self.factors, a))

    def is_unit(self, a) -> bool:
        return all(f.is_unit(x) for f, x in zip(self.factors, a))

    def is_zero_divisor(self, a) -> bool:
        return any(f.is_zero(x) for f, x in zip(self.factors, a))

    def gcd(self, a, b):
        return tuple(f.gcd(x, y) for f, x, y in zip(self.factors, a, b))

    def parse(self, text):
        if isinstance(text, (list, tuple)):
            parts = list(text)
        else:
            parts = parse_tuple(str(text))
            if parts is None:
                raise InputError(f"product ring elements are written (a, b, ...), got {text!r}")
        if len(parts) != len(self.factors):
            raise InputError("wrong number of components")
        return tuple(f.parse(s) for f, s in zip(self.factors, parts))

    def fmt(self, a) -> str:
        return "(" + ", ".join(f.fmt(x) for f, x in zip(self.factors, a)) + ")"

    def frac(self, num, den=None):
        den = self.one() if den is None else den
        if self.is_zero_divisor(den):
            raise InputError("denominator is a zero divisor")
        return tuple(f.frac(n, d) for f, n, d in zip(self.factors, num, den))

    def components(self):
        out = []
        for i, f in enumerate(self.factors):
            out.append(QComponent(i, f.components()[0].description))
        return out

    def descriptor(self):
        return {"kind": "Product", "factors": [f.descriptor() for f in self.factors]}

    def prime(self, gen, component: int) -> Height1Prime:
        inner = self.factors[component].prime(gen)
        return Height1Prime(inner.gen, component)


ZZ = IntegerRing()
ZX = PolyRing()


def FpX(p: int) -> PolyRing:
    return PolyRing(p)


def ring_from_json(obj) -> Ring:
    if isinstance(obj, str):
        obj = {"kind": obj}
    kind = obj.get("kind")
    if kind == "Z":
        return ZZ
    if kind == "ZX":
        return ZX
    if kind == "FpX":
        if "p" not in obj:
            raise InputError("FpX ring needs 'p'")
        return PolyRing(int(obj["p"]))
    if kind == "Product":
        return ProductRing(ring_from_json(f) for f in obj.get("factors", []))
    raise InputError(f"unknown ring kind {kind!r}")


def parse_ring(text: str) -> Ring:
    """Command-line ring names: ``Z``, ``ZX``, ``F5X`` / ``FpX:5``, ``Z*ZX``."""
    text = text.strip()
    if "*" in text:
        return ProductRing(parse_ring(t) for t in text.split("*"))
    if text in ("Z", "ZZ"):
        return ZZ
    if text in ("ZX", "Z[x]"):
        return ZX
    if text.startswith("FpX:"):
        return PolyRing(int(text[4:]))
    if text.startswith("F") and text.endswith("X") and text[1:-1].isdigit():
        return PolyRing(int(text[1:-1]))
    raise InputError(f"unknown ring {text!r}")


# ----------------------------------------------------------------------------
# primes


def _canonical_check(ring: Ring, P: Height1Prime) -> None:
    if isinstance(ring, IntegerRing):
        if not (isinstance(P.gen, int) and P.gen > 1 and is_prime(P.gen)):
            raise InputError(f"{P.gen} is not a positive prime")
        return
    f = ring.factor(P.gen)
    if len(f.factors) != 1 or f.factors[0][1] != 1 or not ring.is_unit(f.unit):
        raise InputError(f"{ring.fmt(P.gen)} is not irreducible in {ring}")
    if f.factors[0][0] != P.gen:
        raise InputError(f"{ring.fmt(P.gen)} is not in canonical normalization")


def prime_from_json(ring: Ring, obj, check: bool = True) -> Height1Prime:
    if isinstance(obj, str):
        return prime_from_label(ring, obj, check)
    kind = obj.get("kind")
    if kind == "component":
        if not isinstance(ring, ProductRing):
            raise InputError("component primes need a product ring")
        idx = int(obj["index"])
        inner = prime_from_json(ring.factors[idx], obj["prime"], check)
        return Height1Prime(inner.gen, idx)
    if isinstance(ring, ProductRing):
        raise InputError("primes of a product ring must name a component")
    if kind == "int":
        gen = int(obj["p"])
        P = Height1Prime(gen if isinstance(ring, IntegerRing) else ring.const(gen))
    elif kind == "poly":
        if isinstance(ring, IntegerRing):
            raise InputError("polynomial prime in Z")
        P = Height1Prime(ring.parse(obj["f"]))
    else:
        raise InputError(f"unknown prime kind {kind!r}")
    if check:
        _canonical_check(ring, P)
    return P


def prime_from_label(ring: Ring, label: str, check: bool = True) -> Height1Prime:
    label = label.strip()
    if label.startswith("c") and ":" in label and label[1 : label.index(":")].isdigit():
        idx, rest = label[1:].split(":", 1)
        return _component_label(ring, int(idx), rest, check)
    if label.startswith("int:"):
        return prime_from_json(ring, {"kind": "int", "p": int(label[4:])}, check)
    if label.startswith("poly:"):
        return prime_from_json(ring, {"kind": "poly", "f": label[5:]}, check)
    # bare element: canonicalize
    a = ring.parse(label)
    f = ring.factor(a)
    if len(f.factors) != 1 or f.factors[0][1] != 1:
        raise InputError(f"{label!r} is not a prime element")
    return Height1Prime(f.factors[0][0])


def _component_label(ring, idx, rest, check):
    if not isinstance(ring, ProductRing):
        raise InputError("component primes need a product ring")
    inner = prime_from_label(ring.factors[idx], rest, check)
    return Height1Prime(inner.gen, idx)


def prime_factorization(ring: Ring, a) -> dict:
    """``{Height1Prime: exponent}`` for a nonzero element of a domain backend."""
    f = ring.factor(a)
    return {Height1Prime(g): e for g, e in f.factors}


def v_min(ring: Ring, a) -> list:
    """Primes minimal over ``a``: the height-one primes dividing ``a``; for a
    component where ``a`` vanishes, that component's minimal prime."""
    if isinstance(ring, ProductRing):
        out = []
        for i, (R, x) in enumerate(zip(ring.factors, a)):
            if R.is_zero(x):
                out.append(MinimalPrime(i))
            else:
                out.extend(Height1Prime(P.gen, i) for P in v_min(R, x))
        return sorted(out, key=_vmin_key)
    if ring.is_zero(a):
        return [MinimalPrime(0)]
    return sorted(prime_factorization(ring, a))


def _vmin_key(P):
    if isinstance(P, MinimalPrime):
        return (P.component, 0, ())
    return (P.component, 1, P.sort_key())


def element_valuation(a, P: Height1Prime):
    """``v_P(a)`` for a ring element (component already selected)."""
    g = P.gen
    if isinstance(a, int):
        if a == 0:
            return INF
        if not isinstance(g, int):
            g = g.lc
        v = 0
        while a % g == 0:
            a //= g
            v += 1
        return v
    c = a.c
    if not c:
        return INF
    gc = g.c if isinstance(g, Poly) else (g,)
    p = a.p
    if len(gc) == 1:
        k = gc[0]
        v = 0
        if p is not None:
            return 0
        while all(x % k == 0 for x in c):
            c = tuple(x // k for x in c)
            v += 1
        return v
    v = 0
    while True:
        if len(c) < len(gc):
            return v
        try:
            q, r = dup_divmod(c, gc, p)
        except InputError:
            return v
        if r:
            return v
        c = q
        v += 1


def valuation(q, P: Height1Prime):
    """``v_P(q)`` for ``q`` in the total ring of fractions; ``inf`` iff the
    relevant component of ``q`` is zero."""
    if P.component is not None:
        if not isinstance(q, tuple):
            raise InputError("product ring elements are tuples")
        return valuation(q[P.component], P.inner())
    if isinstance(q, tuple) and len(q) == 2 and not isinstance(q[0], tuple):
        num, den = q
        if not den:
            raise InputError("denominator is a zero divisor")
        return element_valuation(num, P) - element_valuation(den, P)
    if isinstance(q, Fraction):
        if q == 0:
            return INF
        return element_valuation(q.numerator, P) - element_valuation(q.denominator, P)
    if isinstance(q, RatFunc):
        if not q:
            return INF
        return element_valuation(q.num, P) - element_valuation(q.den, P)
    return element_valuation(q, P)


def parse_field_element(ring: Ring, text):
    """Parse ``"num/den"`` (or a tuple of such for product rings)."""
    if isinstance(ring, ProductRing):
        parts = text if isinstance(text, (list, tuple)) else parse_tuple(str(text))
        if parts is None or len(parts) != len(ring.factors):
            raise InputError(f"expected {len(ring.factors)} components in {text!r}")
        return tuple(parse_field_element(R, t) for R, t in zip(ring.factors, parts))
    n, d = parse_fraction(text)
    num, den = ring.parse(n), ring.parse(d)
    if ring.is_zero(den):
        raise InputError("denominator is a zero divisor")
    return ring.frac(num, den)


def divisor(ring: Ring, q) -> Divisor:
    """The principal divisor ``P -> v_P(q)`` of a non-zero-divisor ``q``."""
    if isinstance(ring, ProductRing):
        out = {}
        if not isinstance(q, tuple) or len(q) != len(ring.factors):
            raise InputError("product ring elements are tuples")
        for i, (R, x) in enumerate(zip(ring.factors, q)):
            for P, v in divisor(R, x).items():
                out[Height1Prime(P.gen, i)] = v
        return Divisor(out)
    if isinstance(q, (Fraction, RatFunc)) or isinstance(q, tuple):
        num, den = ring.field_parts(q) if not isinstance(q, tuple) else q
    else:
        num, den = q, ring.one()
    if ring.is_zero(num) or ring.is_zero(den):
        raise InputError("divisor of a zero divisor is undefined")
    out = dict(prime_factorization(ring, num))
    for P, e in prime_factorization(ring, den).items():
        out[P] = out.get(P, 0) - e
    return Divisor(out)


def components(ring: Ring) -> list[QComponent]:
    return ring.components()


def content_prime_part(ring: Ring, a) -> tuple:
    """Split ``a`` in Z[x] as ``(content, primitive part)``; identity elsewhere."""
    if isinstance(ring, PolyRing) and ring.p is None:
        c, pp = dup_primitive(a.c)
        return c, Poly._raw(pp, None)
    return ring.one(), a


def reduce_mod_prime(ring: PolyRing, a: Poly, p: int) -> tuple:
    return dup_mod(a.c, p)


def prime_element(ring: Ring, P: Height1Prime):
    """The generator of P as an element of ``ring`` (a domain backend)."""
    if isinstance(ring, PolyRing):
        return ring.coerce(P.gen)
    return P.gen


def power(ring: Ring, a, n: int):
    out = ring.one()
    for _ in range(n):
        out = ring.mul(out, a)
    return out
