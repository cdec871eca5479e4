import random

import sympy as sp

from gkfol.mvgcd import gcd, gcd_all, is_unit
from gkfol.poly import Poly

from conftest import random_poly, to_sympy

XS = sp.symbols("x1:4")


def test_gcd_matches_sympy_on_planted_factors():
    rng = random.Random(4)
    for _ in range(120):
        h = random_poly(rng, 3, 2, 2)
        a = random_poly(rng, 3, 3, 2) * h
        b = random_poly(rng, 3, 3, 2) * h
        if a.is_zero() or b.is_zero():
            continue
        ratio = sp.cancel(to_sympy(gcd(a, b), XS) / sp.gcd(to_sympy(a, XS), to_sympy(b, XS)))
        assert ratio.is_number and ratio != 0


def test_monomial_and_constant_shortcuts():
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    f = x * x * y + x * y * y
    assert gcd(Poly.monomial((3, 1)), f) == x * y
    assert gcd(Poly.const(2, 7), f) == Poly.const(2, 1)
    assert gcd(Poly.zero(2), f.scale(3)) == gcd(f, f)


def test_gcd_all_early_exit():
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    assert is_unit(gcd_all([x, y, x * y]))
    assert gcd_all([x * y, x * x]) == x
    assert gcd_all([]) is None
