import math

import pytest
from hypothesis import given, strategies as st

from pkorder.errors import NotApplicable
from pkorder.homology import (
    ext_base,
    ext_tilde,
    gl_dim_tilde,
    inj_dim_tilde,
    min_inj_resolution,
)
from pkorder.local_snf import local_module
from pkorder.modules import FpModule, cardinality, direct_sum, is_zero_module
from pkorder.oracles import ext_z
from pkorder.rings import ZX, ZZ
from pkorder.tiled import TiledOrder

from conftest import cyclic, diag_module, module


def table(t):
    return {P.label: list(ex) for P, (_, ex) in t.entries.items()}


def test_ext_tilde_examples():
    assert table(ext_tilde(cyclic(ZZ, 2), cyclic(ZZ, 2), 1)) == {"int:2": [1]}
    assert table(ext_tilde(cyclic(ZZ, 4), cyclic(ZZ, 6), 1)) == {"int:2": [1]}
    assert ext_tilde(cyclic(ZZ, 4), cyclic(ZZ, 6), 2).is_zero()
    with pytest.raises(NotApplicable):
        ext_tilde(cyclic(ZZ, 2), FpModule.free(ZZ, 1), 1)


def test_ext_base_examples():
    E = ext_base(cyclic(ZX, "2"), 1)
    assert E.generators == 1 and [ZX.fmt(r[0]) for r in E.relations] == ["2"]
    assert is_zero_module(ext_base(FpModule.free(ZX, 2), 1))
    assert is_zero_module(ext_base(cyclic(ZX, "2", "x"), 1))
    E2 = ext_base(cyclic(ZX, "2", "x"), 2)
    assert cardinality(E2) == 2
    assert is_zero_module(ext_base(cyclic(ZX, "2", "x"), 0))


def test_inj_dim_examples():
    r = inj_dim_tilde(cyclic(ZX, "2"))
    assert r.to_json() == {"zero_object": False, "primes": {"int:2": 1}, "generic": None, "sup": 1}
    assert inj_dim_tilde(cyclic(ZX, "2", "x")).zero_object
    assert inj_dim_tilde(FpModule.free(ZX, 1)).sup == 1


def test_gl_dim_examples():
    assert gl_dim_tilde(ZX) == 1
    P2 = ZZ.prime(2)
    assert gl_dim_tilde(TiledOrder(ZZ, 2, {P2: [[0, 1], [0, 0]]})).value == 1
    rep = gl_dim_tilde(TiledOrder(ZZ, 2, {P2: [[0, 1], [1, 0]]}))
    assert rep.value is None and [P.label for P in rep.failing] == ["int:2"]


def test_resolution_examples():
    E0, E1 = min_inj_resolution(cyclic(ZZ, 4))
    assert E0.locals == {"int:2": 1} and E1.locals == {"int:2": 1}
    E0, E1 = min_inj_resolution(direct_sum(cyclic(ZX, "4"), cyclic(ZX, "2")))
    assert E0.locals == {"int:2": 2} and E1.locals == {"int:2": 2}
    assert min_inj_resolution(FpModule(ZZ, 0, [])) == []
    with pytest.raises(NotApplicable):
        min_inj_resolution(FpModule.free(ZZ, 1))


@given(st.integers(1, 8), st.integers(1, 8))
def test_ext1_matches_extension_oracle(m, n):
    t = ext_tilde(cyclic(ZZ, m), cyclic(ZZ, n), 1)
    order = 1
    for P, l in t.group():
        order *= P.gen**l
    assert order == ext_z(m, n)["order"] == math.gcd(m, n)
    # cyclic: at most one factor per prime
    assert all(len(ex) == 1 for _, (_, ex) in t.entries.items())


@given(st.lists(st.integers(1, 12), min_size=1, max_size=2), st.lists(st.integers(1, 12), min_size=1, max_size=2))
def test_hom_is_bilinear(a, b):
    N1, N2, M = diag_module(ZZ, a), diag_module(ZZ, b), diag_module(ZZ, b)
    lhs = ext_tilde(direct_sum(N1, N2), M, 0)
    r1, r2 = ext_tilde(N1, M, 0), ext_tilde(N2, M, 0)
    for P in set(lhs.entries) | set(r1.entries) | set(r2.entries):
        ex = lambda t: t.entries.get(P, (0, []))[1]
        assert sorted(ex(lhs)) == sorted(ex(r1) + ex(r2))


def test_hom_matches_local_forms():
    N = module(ZX, 2, [["4", "0"], ["0", "x"]])
    M = diag_module(ZX, ["2", "x^2"])
    t = ext_tilde(N, M, 0)
    for P, (_, ex) in t.entries.items():
        _, na = local_module(N, P)
        _, mb = local_module(M, P)
        assert sorted(ex) == sorted(min(a, b) for a in na for b in mb)


def test_sup_is_resolution_length():
    for M in (cyclic(ZZ, 12), diag_module(ZX, ["4", "x"]), cyclic(ZX, "x^2+1")):
        assert inj_dim_tilde(M).sup == len(min_inj_resolution(M)) - 1
