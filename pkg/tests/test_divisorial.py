from hypothesis import given, strategies as st

from pkorder.divisorial import (
    closure,
    divisorial_hull_ideal,
    is_codivisorial,
    is_quasidivisorial,
    lattice_equal,
    lattice_local_data,
    lattice_primes,
    reflexive_hull,
)
from pkorder.modules import FpModule, Lattice, annihilator, direct_sum, torsion_submodule, x_part
from pkorder.rings import ZX, ZZ

from conftest import cyclic, module, seeded, zx_polys

P = ZX.parse


def test_hull_ideal_examples():
    d, g = divisorial_hull_ideal(ZX, [P("2"), P("x")])
    assert g == ZX.one() and d.to_json() == {}
    d, g = divisorial_hull_ideal(ZZ, [6])
    assert g == 6 and d.to_json() == {"int:2": 1, "int:3": 1}
    d, g = divisorial_hull_ideal(ZX, [P("4"), P("2*x"), P("x^2")])
    assert g == ZX.one()


def test_quasidivisorial_examples():
    assert not is_quasidivisorial(ZX, [P("2"), P("x")])
    assert is_quasidivisorial(ZZ, [6])
    assert is_quasidivisorial(ZX, [P("2*x"), P("4*x")])


def test_codivisorial_examples():
    assert is_codivisorial(cyclic(ZX, "2"))
    assert not is_codivisorial(cyclic(ZX, "2", "x"))
    assert is_codivisorial(FpModule.free(ZX, 2))


def test_reflexive_hull_examples():
    L = Lattice(ZX, 1, [[P("2")], [P("x")]])
    assert lattice_equal(reflexive_hull(L), Lattice.free(ZX, 1))
    assert lattice_equal(reflexive_hull(Lattice.free(ZX, 3)), Lattice.free(ZX, 3))
    L = Lattice(ZX, 2, [[P("2"), ZX.zero()], [P("x"), ZX.zero()], [ZX.zero(), ZX.one()]])
    assert lattice_equal(reflexive_hull(L), Lattice.free(ZX, 2))


def test_closure_examples():
    c = closure(direct_sum(cyclic(ZX, "4"), cyclic(ZX, "2", "x")))
    assert {P_.label: e for P_, e in c.torsion.items()} == {"int:2": [2]} and c.ranks == [0]
    c = closure(FpModule.free(ZX, 2))
    assert c.torsion == {} and c.ranks == [2]
    assert lattice_equal(c.hull, Lattice.free(ZX, 2))
    c = closure(module(ZZ, 2, [[2, 4]]))
    assert {P_.label: e for P_, e in c.torsion.items()} == {"int:2": [1]} and c.ranks == [1]


def test_closure_idempotent_on_representative():
    rng = seeded(2)
    for _ in range(15):
        a, b = rng.randint(2, 12), rng.randint(1, 4)
        M = module(ZX, 2, [[str(a), "x"], ["0", f"x^2+{b}"]])
        c = closure(M)
        assert closure(c.representative) == c


def test_closure_kills_X_part():
    for M in (direct_sum(cyclic(ZX, "2"), cyclic(ZX, "2", "x")), cyclic(ZX, "4", "2*x"), module(ZX, 2, [["2", "x"]])):
        assert closure(M, with_hull=False) == closure(x_part(M).quotient, with_hull=False)


@given(st.lists(zx_polys(deg=2, height=6, nonzero=True), min_size=1, max_size=3))
def test_quasidiv_iff_codiv(gens):
    assert is_quasidivisorial(ZX, gens) == is_codivisorial(FpModule.cyclic(ZX, gens))


def test_codivisorial_torsion_has_quasidivisorial_annihilator():
    for M in (cyclic(ZX, "4"), module(ZX, 2, [["2", "0"], ["0", "x"]]), cyclic(ZX, "2*x", "4*x")):
        assert is_codivisorial(M)
        T, _ = torsion_submodule(M)
        assert is_quasidivisorial(ZX, [a for a in annihilator(T) if not ZX.is_zero(a)])


def _random_lattice(rng, r):
    vecs = [[P(f"{rng.randint(-4, 4)}*x+{rng.randint(-4, 4)}") for _ in range(r)] for _ in range(r + 1)]
    vecs += [[P(str(rng.randint(1, 6))) if i == j else ZX.zero() for j in range(r)] for i in range(r)]
    return Lattice(ZX, r, vecs, P(str(rng.randint(1, 3))))


def test_hull_idempotent_and_local_data():
    rng = seeded(9)
    for _ in range(12):
        L = _random_lattice(rng, rng.randint(1, 2))
        H = reflexive_hull(L)
        assert lattice_equal(reflexive_hull(H), H)
        for Pr in lattice_primes(L):
            assert lattice_local_data(H, Pr) == lattice_local_data(L, Pr)
