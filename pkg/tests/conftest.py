import random

from hypothesis import settings, strategies as st

from pkorder.arith.poly import Poly
from pkorder.modules import FpModule
from pkorder.rings import ZX, ZZ

settings.register_profile("pkorder", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("pkorder")


def zx(text):
    return ZX.parse(text)


def cyclic(R, *gens):
    return FpModule(R, 1, [[R.parse(g) if isinstance(g, str) else g] for g in gens])


def diag_module(R, entries):
    n = len(entries)
    z = R.zero()
    vals = [R.parse(e) if isinstance(e, str) else e for e in entries]
    return FpModule(R, n, [[d if j == i else z for j in range(n)] for i, d in enumerate(vals)])


def module(R, g, rows):
    return FpModule(R, g, [[R.parse(str(e)) for e in r] for r in rows])


def random_poly(rng, deg=2, height=5):
    d = rng.randint(0, deg)
    return Poly(tuple(rng.randint(-height, height) for _ in range(d + 1)))


def random_module(rng, R, gens=3, rels=3, height=9, deg=2):
    g = rng.randint(1, gens)
    k = rng.randint(0, rels)
    if R is ZZ:
        rows = [[rng.randint(-height, height) for _ in range(g)] for _ in range(k)]
    else:
        rows = [[random_poly(rng, deg, height) for _ in range(g)] for _ in range(k)]
    return FpModule(R, g, rows)


small_int = st.integers(min_value=-50, max_value=50)
nonzero_int = small_int.filter(lambda a: a != 0)


@st.composite
def zx_polys(draw, deg=3, height=20, nonzero=False):
    coeffs = draw(st.lists(st.integers(-height, height), min_size=1, max_size=deg + 1))
    p = Poly(tuple(coeffs))
    if nonzero and not p.c:
        p = Poly((1,))
    return p


def seeded(seed):
    return random.Random(seed)
