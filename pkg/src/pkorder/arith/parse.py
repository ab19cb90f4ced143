"""Parser for the element grammar: integers, ``x``, ``+ - * ^``, parentheses.

Produces a coefficient tuple over Z (low degree first). A top-level ``/``
splits numerator and denominator in :func:`parse_fraction`; a top-level
comma list in parentheses is a tuple for product rings.
"""

from __future__ import annotations

import re

from ..errors import InputError
from .poly import dup_add, dup_mul, dup_neg, dup_strip, dup_sub

_TOKEN = re.compile(r"\s*(?:(\d+)|(x)|(.))")


def _tokens(s: str) -> list[str]:
    out = []
    pos = 0
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:
            break
        if m.group(1):
            out.append(m.group(1))
        elif m.group(2):
            out.append("x")
        else:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise InputError(f"unexpected character {ch!r} in {s!r}")
            out.append(ch)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise InputError(f"malformed expression {self.text!r}")
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = dup_add(val, rhs) if op == "+" else dup_sub(val, rhs)
        return val

    def term(self):
        val = self.unary()
        while self.peek() == "*":
            self.take()
            val = dup_mul(val, self.unary())
        return val

    def unary(self):
        if self.peek() == "-":
            self.take()
            return dup_neg(self.unary())
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.primary()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise InputError(f"exponent must be a non-negative integer in {self.text!r}")
            e = int(tok)
            out = (1,)
            for _ in range(e):
                out = dup_mul(out, base)
            return out
        return base

    def primary(self):
        tok = self.take()
        if tok.isdigit():
            return dup_strip((int(tok),))
        if tok == "x":
            return (0, 1)
        if tok == "(":
            val = self.expr()
            self.take(")")
            return val
        raise InputError(f"malformed expression {self.text!r}")


def parse_poly(text: str) -> tuple:
    """Parse an element expression into integer coefficients."""
    if not isinstance(text, str):
        if isinstance(text, int):
            return dup_strip((text,))
        raise InputError(f"expected an expression string, got {text!r}")
    p = _Parser(text)
    if not p.toks:
        raise InputError("empty expression")
    val = p.expr()
    if p.peek() is not None:
        raise InputError(f"trailing input in {text!r}")
    return val


def split_top(text: str, sep: str) -> list[str]:
    """Split on ``sep`` at parenthesis depth zero."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_fraction(text: str) -> tuple[str, str]:
    parts = split_top(str(text), "/")
    if len(parts) == 1:
        return parts[0], "1"
    if len(parts) == 2:
        return parts[0], parts[1]
    raise InputError(f"at most one top-level '/' allowed in {text!r}")


def parse_tuple(text: str) -> list[str] | None:
    """``"(a, b)"`` -> ``["a", "b"]``; ``None`` if not a top-level tuple."""
    t = text.strip()
    if not (t.startswith("(") and t.endswith(")")):
        return None
    inner = t[1:-1]
    # the outer parentheses must match each other
    depth = 0
    for ch in inner:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return None
    parts = split_top(inner, ",")
    return parts if len(parts) > 1 else None
