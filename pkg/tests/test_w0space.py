import random

import pytest

from gkfol.exceptions import EmptyBasis, EmptyFamily
from gkfol.fields import VectorField
from gkfol.render import parse_field
from gkfol.w0space import (
    W0Basis,
    dim_component,
    in_w0,
    random_element,
    w0_basis,
    weighted_monomials,
)
from gkfol.weights import derive_params

from conftest import WITNESS_764

EXAMPLE_421 = [
    "-2*x1*x2*x3 d/dx1 + x2*x3^2 d/dx3",
    "x1*x3 d/dx2",
    "x1 d/dx3",
    "x2^2 d/dx3",
]


def test_weighted_monomials_brute_force():
    from itertools import product

    w = (5, 3, 2)
    got = set(weighted_monomials(w, 13, 4))
    want = {e for e in product(range(5), repeat=3) if sum(e) <= 4 and sum(a * b for a, b in zip(w, e)) == 13}
    assert got == want


def test_example_421_span_both_ways():
    ps = derive_params((4, 2, 1), 3, 2)
    b = w0_basis(ps)
    assert b.dim == 4
    for text in EXAMPLE_421:
        assert b.coordinates(parse_field(text, 3)) is not None
    # the other direction: every basis element is a combination of the listed fields
    listed = W0Basis(ps, b.slots, tuple(tuple(b.slot_vector(parse_field(t, 3))) for t in EXAMPLE_421))
    for Y in b.fields():
        assert listed.coordinates(Y) is not None
    assert dim_component(ps, b) == 15


@pytest.mark.parametrize(
    "w,lam,d,dim",
    [((7, 6, 4), 8, 2, 14), ((3, 2, 1), 1, 1, 13), ((15, 14, 12, 8), 16, 2, 23), ((6, 5, 2), 4, 2, 14)],
)
def test_component_dimensions(w, lam, d, dim):
    assert dim_component(derive_params(w, lam, d)) == dim


def test_d1_lambda0_formula():
    ps = derive_params((3, 2, 1), 0, 1)
    assert dim_component(ps) == 3 * 3 + 2 * 3 - 2


def test_basis_elements_pass_symbolic_membership():
    rng = random.Random(3)
    for w, lam, d in [((4, 2, 1), 3, 2), ((7, 6, 4), 8, 2), ((13, 12, 9), 27, 3), ((6, 5, 4, 2), 4, 2)]:
        ps = derive_params(w, lam, d)
        b = w0_basis(ps)
        for Y in b.fields():
            assert in_w0(ps, Y)
        assert in_w0(ps, random_element(b, 5, rng.randint(0, 10**6)))


def test_witness_in_w0_and_outsider_rejected():
    ps = derive_params((7, 6, 4), 8, 2)
    Y = parse_field(WITNESS_764, 3)
    b = w0_basis(ps)
    assert in_w0(ps, Y) and b.coordinates(Y) is not None
    R = VectorField.radial(3)
    assert not in_w0(ps, R)
    assert b.coordinates(parse_field("x1 d/dx1", 3)) is None


def test_empty_family_errors():
    ps = derive_params((7, 6, 4), -50, 2)
    b = w0_basis(ps)
    assert b.dim == 0
    with pytest.raises(EmptyFamily):
        dim_component(ps, b)
    with pytest.raises(EmptyBasis):
        random_element(b, 3, 0)


def test_random_element_is_deterministic():
    b = w0_basis(derive_params((7, 6, 4), 8, 2))
    assert random_element(b, 5, 42) == random_element(b, 5, 42)
