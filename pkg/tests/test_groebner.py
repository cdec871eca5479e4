import random

import pytest
import sympy as sp

from gkfol.exceptions import BudgetExceeded
from gkfol.groebner import count_standard_monomials, groebner_basis
from gkfol.poly import Poly
from gkfol.render import parse_field

from conftest import WITNESS_764, random_poly, to_sympy

XS = sp.symbols("x1:4")


def _normalized(exprs):
    return sorted(str(sp.expand(g / sp.LC(g, *XS, order="grevlex"))) for g in exprs)


def test_reduced_basis_matches_sympy():
    rng = random.Random(2)
    for _ in range(25):
        polys = [p for p in (random_poly(rng, 3, 3, 2) for _ in range(3)) if not p.is_zero()]
        gb = groebner_basis(polys)
        mine = _normalized([to_sympy(g, XS) for g in gb.polys])
        theirs = _normalized(sp.groebner([to_sympy(p, XS) for p in polys], *XS, order="grevlex").exprs)
        assert mine == theirs


def test_witness_staircase_counts_milnor_number():
    Y = parse_field(WITNESS_764, 3)
    gb = groebner_basis(list(Y))
    assert gb.is_zero_dimensional()
    assert gb.quotient_dimension() == 15


def test_positive_dimensional_ideal():
    x = Poly.var(3, 0)
    gb = groebner_basis([x, x * x])
    assert not gb.is_zero_dimensional()
    assert gb.quotient_dimension() is None


def test_unit_ideal():
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    gb = groebner_basis([x * y - Poly.const(2, 1), x])
    assert gb.is_unit() and gb.quotient_dimension() == 0


def test_budget_exceeded():
    rng = random.Random(9)
    polys = [random_poly(rng, 3, 6, 4) for _ in range(3)]
    with pytest.raises(BudgetExceeded):
        groebner_basis(polys, budget=3)


def test_staircase_count_simple():
    # <x^2, y^3, z> has 6 standard monomials
    assert count_standard_monomials([(2, 0, 0), (0, 3, 0), (0, 0, 1)], 3) == 6
    assert count_standard_monomials([(2, 0, 0), (1, 1, 0), (0, 2, 0), (0, 0, 1)], 3) == 3


def test_laurent_input_rejected():
    with pytest.raises(ValueError):
        groebner_basis([Poly.monomial((-1, 0))])
