"""Integer number theory: extended gcd, primality, factorization."""

from __future__ import annotations

from math import gcd, isqrt

from .. import config
from ..errors import InputError, LimitExceeded

TRIAL_LIMIT = 10_000
_SMALL_PRIMES: list[int] = []


def _sieve(n: int) -> list[int]:
    flags = bytearray([1]) * (n + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, isqrt(n) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return [i for i, f in enumerate(flags) if f]


def small_primes() -> list[int]:
    if not _SMALL_PRIMES:
        _SMALL_PRIMES.extend(_sieve(TRIAL_LIMIT))
    return _SMALL_PRIMES


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def lcm(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return abs(a // gcd(a, b) * b)


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
        if D == 13 and isqrt(n) ** 2 == n:
            return False
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # binary Lucas chain for U_d, V_d
    U, V, Qk = 0, 2, 1
    inv2 = (n + 1) // 2
    for bit in bin(d)[2:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic below 3.3e24 (Miller-Rabin); BPSW above."""
    if n < 2:
        return False
    for p in small_primes()[:60]:
        if n % p == 0:
            return n == p
    if n < 3_317_044_064_679_887_385_961_981:
        return all(_strong_probable_prime(n, a) for a in _MR_BASES)
    return _strong_probable_prime(n, 2) and _strong_lucas(n)


def _brent_rho(n: int, rng, max_iter: int) -> int | None:
    counters = config.current().counters
    for _attempt in range(8):
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        used = 0
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            used += r
            r *= 2
            if used > max_iter:
                break
        counters.rho_iterations += used
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{prime: exponent}``.

    Trial division up to 10^4, then Brent's variant of Pollard rho with a
    seeded generator. Raises :class:`LimitExceeded` rather than returning a
    factorization it cannot certify.
    """
    if n == 0:
        raise InputError("cannot factor 0")
    b = config.current()
    b.counters.factorizations += 1
    n = abs(n)
    out: dict[int, int] = {}
    for p in small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n == 1:
        return out
    if n.bit_length() > 4 * b.max_bits:
        raise LimitExceeded(f"integer of {n.bit_length()} bits exceeds factoring budget")
    rng = b.rng(salt=n & 0xFFFFFFFF)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack.extend([r, r])
            continue
        d = _brent_rho(m, rng, max_iter=1 << 20)
        if d is None:
            raise LimitExceeded(f"could not split {m.bit_length()}-bit composite within budget")
        stack.extend([d, m // d])
    for p in out:
        if p.bit_length() > b.max_bits:
            raise LimitExceeded(f"prime factor of {p.bit_length()} bits exceeds max_bits")
    return dict(sorted(out.items()))


def crt(residues, moduli) -> int:
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        g, s, _ = xgcd(m, n)
        if g != 1:
            raise InputError("moduli not coprime")
        x = (x + (r - x) * s % n * m) % (m * n)
        m *= n
    return x
