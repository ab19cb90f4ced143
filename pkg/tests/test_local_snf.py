from hypothesis import given, strategies as st

from pkorder.local_snf import local_module, local_snf
from pkorder.matrix import bareiss
from pkorder.modules import FpModule
from pkorder.rings import ZX, ZZ, element_valuation, prime_from_label

from conftest import diag_module, module, seeded, zx_polys


def test_examples():
    Phi = [[ZX.parse("4"), ZX.zero()], [ZX.zero(), ZX.parse("2*x")]]
    s = local_snf(ZX, Phi, prime_from_label(ZX, "int:2"))
    assert s.exponents == [1, 2] and s.free_rank == 0
    s = local_snf(ZX, Phi, prime_from_label(ZX, "poly:x"))
    assert s.exponents == [1] and s.free_rank == 0
    s = local_snf(ZX, [[ZX.one(), ZX.zero()], [ZX.zero(), ZX.one()]], prime_from_label(ZX, "int:2"))
    assert s.exponents == [] and s.free_rank == 0


def test_local_module_examples():
    P2 = prime_from_label(ZZ, "int:2")
    assert local_module(module(ZZ, 2, [[2, 4]]), P2) == (1, [1])
    assert local_module(module(ZX, 1, [["2"], ["x"]]), prime_from_label(ZX, "int:2")) == (0, [])
    assert local_module(FpModule.free(ZX, 1), prime_from_label(ZX, "poly:x+1")) == (1, [])


def _field_product(R, U, Phi, V):
    rows = len(U)
    ncols = len(V)
    mid = [[sum((U[i][k] * R.frac(Phi[k][j]) for k in range(len(Phi))), R.frac(R.zero())) for j in range(ncols)] for i in range(rows)]
    return [[sum((mid[i][k] * R.frac(V[k][j]) for k in range(ncols)), R.frac(R.zero())) for j in range(ncols)] for i in range(rows)]


def _check_reconstruction(R, Phi, P, ncols):
    s = local_snf(R, Phi, P, ncols=ncols, track=True)
    D = _field_product(R, s.U, Phi, s.V)
    for i, row in enumerate(D):
        for j, e in enumerate(row):
            if i == j and i < len(s.diagonal):
                assert e == R.frac(s.diagonal[i])
            else:
                assert e == R.frac(R.zero())
    # V is invertible over R_P
    _, _, _, d = bareiss(R, s.V)
    assert element_valuation(d, P) == 0


@given(st.lists(st.lists(st.integers(-30, 30), min_size=3, max_size=3), min_size=1, max_size=3), st.sampled_from([2, 3, 5]))
def test_reconstruction_over_Z(Phi, p):
    _check_reconstruction(ZZ, Phi, prime_from_label(ZZ, f"int:{p}"), 3)


@given(st.lists(st.lists(zx_polys(deg=2, height=6), min_size=2, max_size=2), min_size=1, max_size=3), st.sampled_from(["int:2", "poly:x", "poly:x+1"]))
def test_reconstruction_over_ZX(Phi, label):
    _check_reconstruction(ZX, Phi, prime_from_label(ZX, label), 2)


def test_presentation_independence():
    rng = seeded(5)
    for _ in range(40):
        g = 3
        Phi = [[rng.randint(-12, 12) for _ in range(g)] for _ in range(rng.randint(1, 3))]
        M = FpModule(ZZ, g, Phi)
        # unimodular column operation and row operation
        i, j = rng.sample(range(g), 2)
        k = rng.randint(-5, 5)
        Phi2 = [list(r) for r in Phi]
        for r in Phi2:
            r[j] += k * r[i]
        if len(Phi2) > 1:
            Phi2[0] = [a + k * b for a, b in zip(Phi2[0], Phi2[1])]
        N = FpModule(ZZ, g, Phi2)
        for p in (2, 3, 5):
            P = prime_from_label(ZZ, f"int:{p}")
            assert local_module(M, P) == local_module(N, P)


@given(st.lists(st.lists(zx_polys(deg=1, height=8), min_size=2, max_size=2), min_size=2, max_size=2))
def test_exponent_sum_is_minor_valuation(Phi):
    _, _, _, d = bareiss(ZX, Phi)
    if ZX.is_zero(d) or bareiss(ZX, Phi)[0] < 2:
        return
    for label in ("int:2", "int:3", "poly:x"):
        P = prime_from_label(ZX, label)
        assert sum(local_snf(ZX, Phi, P).exponents) == element_valuation(d, P)


def test_diag_module_helper():
    M = diag_module(ZX, ["4", "2*x"])
    assert local_module(M, prime_from_label(ZX, "int:2")) == (0, [1, 2])
