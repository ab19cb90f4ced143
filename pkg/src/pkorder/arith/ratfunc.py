"""Rational functions: the fraction fields Q(x) (as Frac(Z[x])) and F_p(x)."""

from __future__ import annotations

import re

from .poly import Poly, dup_exquo, dup_gcd, dup_monic, dup_neg


class RatFunc:
    """Reduced fraction ``num/den`` of polynomials.

    Over Z[x] the denominator has positive leading coefficient and
    ``gcd(num, den) = 1`` in Z[x]; over F_p[x] the denominator is monic.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly._raw((1,), num.p)
        if not den.c:
            raise ZeroDivisionError("zero denominator")
        p = num.p
        n, d = num.c, den.c
        if not n:
            d = (1,)
        elif d != (1,):
            g = dup_gcd(n, d, p)
            if g != (1,):
                n, d = dup_exquo(n, g, p), dup_exquo(d, g, p)
            if p is None:
                if d[-1] < 0:
                    n, d = dup_neg(n), dup_neg(d)
            elif d[-1] != 1:
                inv = pow(d[-1], -1, p)
                n = tuple(x * inv % p for x in n)
                d = dup_monic(d, p)
        self.num = Poly._raw(n, p)
        self.den = Poly._raw(d, p)

    @property
    def p(self):
        return self.num.p

    @staticmethod
    def _lift(other, p):
        if isinstance(other, RatFunc):
            return other.num, other.den
        if isinstance(other, Poly):
            return other, Poly._raw((1,), p)
        if isinstance(other, int):
            return Poly.const(other, p), Poly._raw((1,), p)
        return None

    def __add__(self, other):
        o = self._lift(other, self.p)
        if o is None:
            return NotImplemented
        n, d = o
        if self.den == d:
            return RatFunc(self.num + n, d)
        return RatFunc(self.num * d + n * self.den, self.den * d)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other, self.p)
        if o is None:
            return NotImplemented
        n, d = o
        return self + RatFunc(-n, d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other, self.p)
        if o is None:
            return NotImplemented
        n, d = o
        return RatFunc(self.num * n, self.den * d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other, self.p)
        if o is None:
            return NotImplemented
        n, d = o
        if not n.c:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * d, self.den * n)

    def __rtruediv__(self, other):
        o = self._lift(other, self.p)
        if o is None:
            return NotImplemented
        n, d = o
        return RatFunc(n, d) / self

    def __eq__(self, other):
        o = self._lift(other, self.p)
        if o is None:
            return NotImplemented
        n, d = o
        return self.num * d == n * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num.c)

    def is_integral(self) -> bool:
        return self.den.c == (1,)

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den.c == (1,):
            return str(self.num)
        n = str(self.num)
        d = str(self.den)
        if any(ch in "+-" for ch in n[1:]):
            n = f"({n})"
        if not re.fullmatch(r"\d+|x(\^\d+)?", d):
            d = f"({d})"
        return f"{n}/{d}"
