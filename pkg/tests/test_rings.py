from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pkorder.errors import InputError
from pkorder.rings import (
    INF,
    Divisor,
    FpX,
    Height1Prime,
    MinimalPrime,
    ProductRing,
    ZX,
    ZZ,
    components,
    divisor,
    parse_ring,
    prime_from_json,
    prime_from_label,
    ring_from_json,
    v_min,
    valuation,
)

from conftest import zx_polys


def labels(ps):
    return [P.label for P in ps]


def test_v_min_examples():
    assert labels(v_min(ZX, ZX.parse("6*x"))) == ["int:2", "int:3", "poly:x"]
    assert v_min(ZX, ZX.one()) == []
    R = ProductRing([ZZ, ZZ])
    out = v_min(R, (0, 4))
    assert out[0] == MinimalPrime(0)
    assert out[1] == Height1Prime(2, 1)


def test_valuation_examples():
    assert valuation(Fraction(4, 6), Height1Prime(2)) == 1
    assert valuation(ZX.frac(ZX.x(), ZX.parse("2")), prime_from_label(ZX, "poly:x")) == 1
    assert valuation(Fraction(0), Height1Prime(2)) == INF
    assert valuation(ZX.zero(), prime_from_label(ZX, "int:2")) == INF


def test_divisor_examples():
    assert divisor(ZZ, 12).to_json() == {"int:2": 2, "int:3": 1}
    assert divisor(ZX, ZX.frac(ZX.one(), ZX.x())).to_json() == {"poly:x": -1}
    assert divisor(ZZ, -1).to_json() == {}
    with pytest.raises(InputError):
        divisor(ZZ, 0)


def test_components():
    assert [c.description for c in components(ZX)] == ["Q(x)"]
    assert [c.description for c in components(ProductRing([ZZ, ZZ]))] == ["Q", "Q"]
    assert [c.description for c in components(FpX(5))] == ["F_5(x)"]


def test_prime_json_and_labels():
    assert prime_from_json(ZZ, {"kind": "int", "p": 2}).label == "int:2"
    assert prime_from_json(ZX, {"kind": "poly", "f": "x^2+1"}).label == "poly:x^2+1"
    R = parse_ring("Z*ZX")
    P = prime_from_json(R, {"kind": "component", "index": 1, "prime": {"kind": "poly", "f": "x"}})
    assert P.label == "c1:poly:x"
    assert prime_from_label(R, "c1:poly:x") == P
    with pytest.raises(InputError):
        prime_from_json(ZZ, {"kind": "int", "p": 4})
    with pytest.raises(InputError):
        prime_from_json(ZX, {"kind": "poly", "f": "x^2-1"})
    with pytest.raises(InputError):
        prime_from_json(ZX, {"kind": "poly", "f": "-x"})


def test_ring_json_round_trip():
    for text in ("Z", "ZX", "FpX:7", "Z*ZX"):
        R = parse_ring(text)
        assert ring_from_json(R.descriptor()) == R
    with pytest.raises(InputError):
        parse_ring("Q")


def test_prime_order():
    ps = [prime_from_label(ZX, s) for s in ("poly:x^2+1", "int:3", "poly:x+1", "int:2", "poly:x")]
    assert labels(sorted(ps)) == ["int:2", "int:3", "poly:x", "poly:x+1", "poly:x^2+1"]


@given(zx_polys(deg=3, nonzero=True), zx_polys(deg=3, nonzero=True))
def test_divisor_additive(a, b):
    assert divisor(ZX, ZX.mul(a, b)) == divisor(ZX, a) + divisor(ZX, b)


@given(zx_polys(deg=3, nonzero=True))
def test_v_min_is_divisor_support(a):
    d = divisor(ZX, a)
    assert set(v_min(ZX, a)) == set(d.support())
    assert all(e > 0 for _, e in d.items())


@given(st.integers(1, 500), st.integers(1, 500), st.integers(-500, 500), st.integers(1, 500))
def test_valuation_is_discrete(a, b, c, d):
    P = Height1Prime(2)
    q1, q2 = Fraction(a, b), Fraction(c, d)
    assert valuation(q1 * q2, P) == valuation(q1, P) + valuation(q2, P)
    assert valuation(q1 + q2, P) >= min(valuation(q1, P), valuation(q2, P))


def test_divisor_type():
    d = Divisor({Height1Prime(2): 1, Height1Prime(3): 0})
    assert d.to_json() == {"int:2": 1}
    assert (d - d).to_json() == {}
    assert d.is_effective() and not (-d).is_effective()
