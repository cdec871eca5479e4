from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gkfol.poly import Poly, divide_exact
from gkfol.render import parse_field, parse_poly, render_field, render_poly
from gkfol.exceptions import ParseError
from gkfol.fields import VectorField

exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
coefs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(exps, coefs, max_size=5).map(lambda t: Poly(3, t))


@given(polys, polys, polys)
@settings(max_examples=60)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Poly.zero(3)


@given(polys, polys)
@settings(max_examples=60)
def test_exact_division_roundtrip(a, b):
    if b.is_zero():
        return
    assert divide_exact(a * b, b) == a


@given(polys, polys)
@settings(max_examples=60)
def test_leibniz(a, b):
    for i in range(3):
        assert (a * b).diff(i) == a.diff(i) * b + a * b.diff(i)


@given(polys)
def test_render_roundtrip(a):
    assert parse_poly(render_poly(a), 3) == a


def test_laurent_power_and_shift():
    m = Poly.monomial((1, -2, 0), 3)
    assert (m**-1).terms == {(-1, 2, 0): Fraction(1, 3)}
    assert not m.is_polynomial()
    assert m.shift((0, 2, 0)).is_polynomial()


def test_substitute_and_evaluate():
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    f = x * x + y * 3
    g = f.substitute([x + y, x - y])
    assert g.evaluate([1, 2]) == f.evaluate([3, -1])


def test_field_render_grammar():
    Y = parse_field("-10*x1*x3^2 d/dx1 + 1/2*x2 d/dx2 + 3 d/dx3", 3)
    assert render_field(Y) == "-10*x1*x3^2 d/dx1 + 1/2*x2 d/dx2 + 3 d/dx3"
    assert render_field(VectorField.zero(3)) == "0"
    assert parse_field("0", 3).is_zero()


@pytest.mark.parametrize("bad", ["x4 d/dx1", "x1 d/dx9", "x1 +", "2*y d/dx1", ""])
def test_field_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_field(bad, 3)


def test_divide_exact_rejects_remainder():
    x = Poly.var(2, 0)
    with pytest.raises(ValueError):
        divide_exact(x * x + Poly.const(2, 1), x)
