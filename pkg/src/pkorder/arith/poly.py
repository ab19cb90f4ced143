"""Dense univariate polynomials over the integers or a prime field.

Coefficients are stored low degree first, with no trailing zeros; the zero
polynomial is the empty tuple. ``p is None`` means coefficients in Z,
otherwise they are residues in ``range(p)``.

The ``dup_*`` helpers work on plain tuples/lists and are what the hot loops
(Groebner reduction, factoring) use; :class:`Poly` wraps them with operators.
"""

from __future__ import annotations

from functools import total_ordering
from math import gcd

from ..errors import InputError


def dup_strip(c) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def dup_mod(c, p) -> tuple:
    if p is None:
        return dup_strip(c)
    return dup_strip(x % p for x in c)


def dup_add(a, b, p=None) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    if p is not None:
        out = [x % p for x in out]
    return dup_strip(out)


def dup_sub(a, b, p=None) -> tuple:
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] -= x
    if p is not None:
        out = [x % p for x in out]
    return dup_strip(out)


def dup_neg(a, p=None) -> tuple:
    if p is None:
        return tuple(-x for x in a)
    return tuple((-x) % p for x in a)


def dup_mul(a, b, p=None) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    if p is not None:
        out = [x % p for x in out]
    return dup_strip(out)


def dup_scale(a, k, p=None) -> tuple:
    if p is None:
        return dup_strip(x * k for x in a) if k else ()
    k %= p
    return dup_strip(x * k % p for x in a) if k else ()


def dup_shift(a, n) -> tuple:
    """Multiply by x^n."""
    if not a:
        return ()
    return (0,) * n + tuple(a)


def dup_addmul_term(a, b, k, n, p=None) -> tuple:
    """Return ``a + k*x^n*b``."""
    if not b or not k:
        return tuple(a)
    m = max(len(a), len(b) + n)
    out = list(a) + [0] * (m - len(a))
    for i, y in enumerate(b):
        out[i + n] += k * y
    if p is not None:
        out = [x % p for x in out]
    return dup_strip(out)


def dup_divmod(a, b, p=None):
    """Division with remainder.

    Over a field this is ordinary long division. Over Z it requires the
    quotient to be integral; otherwise ``InputError`` is raised.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if p is not None:
        inv = pow(lb, -1, p)
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        lead = a[-1]
        if p is not None:
            k = lead * inv % p
        else:
            k, r = divmod(lead, lb)
            if r:
                raise InputError("inexact division over Z")
        q[shift] = k
        for i, y in enumerate(b):
            a[i + shift] -= k * y
        if p is not None:
            a = [x % p for x in a]
        while a and a[-1] == 0:
            a.pop()
    return dup_strip(q), tuple(a)


def dup_exquo(a, b, p=None):
    q, r = dup_divmod(a, b, p)
    if r:
        raise InputError("inexact polynomial division")
    return q


def dup_divides(b, a, p=None) -> bool:
    """True iff ``b | a``."""
    if not b:
        return not a
    if not a:
        return True
    if len(b) > len(a):
        return False
    try:
        _, r = dup_divmod(a, b, p)
    except InputError:
        return False
    return not r


def dup_pseudo_rem(a, b) -> tuple:
    """Pseudo-remainder over Z: lc(b)^k * a mod b."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while a and len(a) - 1 >= db:
        shift = len(a) - 1 - db
        lead = a[-1]
        a = [x * lb for x in a]
        for i, y in enumerate(b):
            a[i + shift] -= lead * y
        while a and a[-1] == 0:
            a.pop()
    return tuple(a)


def dup_content(a) -> int:
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            break
    return g


def dup_primitive(a):
    """``(content, primitive part)`` with positive leading coefficient."""
    if not a:
        return 0, ()
    c = dup_content(a)
    if a[-1] < 0:
        c = -c
    return c, tuple(x // c for x in a)


def dup_monic(a, p):
    if not a:
        return ()
    inv = pow(a[-1], -1, p)
    return tuple(x * inv % p for x in a)


def dup_gcd(a, b, p=None) -> tuple:
    """Canonical gcd: monic over F_p; over Z content gcd times primitive gcd
    with positive leading coefficient."""
    if p is not None:
        while b:
            a, b = b, dup_divmod(a, b, p)[1]
        return dup_monic(a, p)
    if not a or not b:
        c, pp = dup_primitive(a or b)
        return dup_scale(pp, abs(c))
    ca, pa = dup_primitive(a)
    cb, pb = dup_primitive(b)
    c = gcd(ca, cb)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb:
        r = dup_pseudo_rem(pa, pb)
        pa, pb = pb, (dup_primitive(r)[1] if r else ())
    return dup_scale(dup_primitive(pa)[1], c)


def dup_deriv(a, p=None) -> tuple:
    return dup_mod([i * a[i] for i in range(1, len(a))], p)


def dup_eval(a, x, p=None):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
        if p is not None:
            acc %= p
    return acc


def dup_powmod(a, e, m, p) -> tuple:
    """``a^e mod m`` over F_p."""
    result = (1,)
    base = dup_divmod(a, m, p)[1]
    while e:
        if e & 1:
            result = dup_divmod(dup_mul(result, base, p), m, p)[1]
        e >>= 1
        if e:
            base = dup_divmod(dup_mul(base, base, p), m, p)[1]
    return result


def dup_xgcd(a, b, p):
    """Over F_p: ``(g, s, t)`` with ``s*a + t*b = g`` monic."""
    r0, r1 = tuple(a), tuple(b)
    s0, s1, t0, t1 = (1,), (), (), (1,)
    while r1:
        q, r = dup_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, dup_sub(s0, dup_mul(q, s1, p), p)
        t0, t1 = t1, dup_sub(t0, dup_mul(q, t1, p), p)
    if not r0:
        return (), (), ()
    inv = pow(r0[-1], -1, p)
    return dup_scale(r0, inv, p), dup_scale(s0, inv, p), dup_scale(t0, inv, p)


def dup_cmp_key(a):
    """Total order: degree first, then coefficients from the top down."""
    return (len(a), tuple(reversed(a)))


def dup_format(c, var: str = "x") -> str:
    if not c:
        return "0"
    parts = []
    for d in range(len(c) - 1, -1, -1):
        k = c[d]
        if k == 0:
            continue
        sign = "-" if k < 0 else "+"
        m = abs(k)
        if d == 0:
            body = str(m)
        else:
            mono = var if d == 1 else f"{var}^{d}"
            body = mono if m == 1 else f"{m}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out


@total_ordering
class Poly:
    """Immutable polynomial in ``x`` over Z (``p=None``) or F_p."""

    __slots__ = ("c", "p")

    def __init__(self, coeffs=(), p: int | None = None):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "c", dup_mod(coeffs, p))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self.c, self.p))

    @classmethod
    def _raw(cls, c, p):
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "c", c)
        return obj

    @classmethod
    def x(cls, p=None) -> "Poly":
        return cls._raw((0, 1), p)

    @classmethod
    def const(cls, k: int, p=None) -> "Poly":
        return cls((k,), p)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.p != self.p:
                raise InputError("mixing polynomials over different coefficient rings")
            return other.c
        if isinstance(other, int):
            return dup_mod((other,), self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Poly._raw(dup_add(self.c, o, self.p), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Poly._raw(dup_sub(self.c, o, self.p), self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Poly._raw(dup_sub(o, self.c, self.p), self.p)

    def __neg__(self):
        return Poly._raw(dup_neg(self.c, self.p), self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Poly._raw(dup_mul(self.c, o, self.p), self.p)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise InputError("negative exponent")
        result, base = (1,), self.c
        while e:
            if e & 1:
                result = dup_mul(result, base, self.p)
            e >>= 1
            if e:
                base = dup_mul(base, base, self.p)
        return Poly._raw(result, self.p)

    def __divmod__(self, other):
        o = self._coerce(other)
        q, r = dup_divmod(self.c, o, self.p)
        return Poly._raw(q, self.p), Poly._raw(r, self.p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, int):
            return self.c == dup_mod((other,), self.p)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.p == other.p and self.c == other.c

    def __lt__(self, other):
        return dup_cmp_key(self.c) < dup_cmp_key(other.c)

    def __hash__(self):
        return hash((self.c, self.p))

    def __bool__(self):
        return bool(self.c)

    def __call__(self, x):
        return dup_eval(self.c, x, self.p)

    def __repr__(self):
        suffix = "" if self.p is None else f" mod {self.p}"
        return f"Poly({dup_format(self.c)}{suffix})"

    def __str__(self):
        return dup_format(self.c)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def is_zero(self) -> bool:
        return not self.c

    def derivative(self) -> "Poly":
        return Poly._raw(dup_deriv(self.c, self.p), self.p)

    def monic(self) -> "Poly":
        return Poly._raw(dup_monic(self.c, self.p), self.p)

    def content(self) -> int:
        return dup_content(self.c)

    def primitive(self):
        c, pp = dup_primitive(self.c)
        return c, Poly._raw(pp, self.p)
