from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gkfol.exceptions import DuplicateWeights, InvalidWeights, TooFewWeights
from gkfol.weights import (
    WeightVector,
    bar_involution,
    check_condition,
    derive_params,
    milnor_number,
    normalize_weights,
)


def test_params_764():
    ps = derive_params((7, 6, 4), 8, 2)
    assert ps.tau == 25
    assert ps.lambdas == (-1, 2, 4)
    assert ps.taus == (10, -5, 5)
    assert ps.p_bar == (7, 3, 1)


def test_params_421_has_zero_tau2():
    ps = derive_params((4, 2, 1), 3, 2)
    assert ps.tau_at(2) == 0
    assert ps.lambda_at(0) == 3


def test_weight_validation():
    with pytest.raises(TooFewWeights):
        normalize_weights([2, 1])
    with pytest.raises(DuplicateWeights):
        normalize_weights([2, 2, 1])
    with pytest.raises(InvalidWeights):
        normalize_weights([3, 0, 1])
    with pytest.raises(InvalidWeights):
        WeightVector((6, 4, 2))
    with pytest.raises(InvalidWeights):
        WeightVector((1, 2, 3))
    assert normalize_weights([4, 12, 8, 14]).p == (7, 6, 4, 2)


def test_degree_must_be_positive():
    with pytest.raises(ValueError):
        derive_params((3, 2, 1), 1, 0)


def test_conditions_exceptional():
    ps = derive_params((7, 6, 4), 8, 2)
    assert check_condition(ps, 1, 2) and check_condition(ps, 2, 3)
    assert not check_condition(ps, 1, 1)
    with pytest.raises(ValueError):
        check_condition(ps, 3, 1)


def test_milnor_values():
    assert milnor_number((7, 6, 4), 8) == 15
    assert milnor_number((4, 2, 1), 3) == Fraction(35, 2)
    assert milnor_number((1, 1, 1), 2) == 27
    assert milnor_number((1, 1, 1), 1) == 8


def test_bar_of_764():
    b = bar_involution(derive_params((7, 6, 4), 8, 2))
    assert (b.p, b.lam) == ((7, 3, 1), -1)


@st.composite
def families(draw):
    n = draw(st.integers(3, 6))
    p = sorted(draw(st.sets(st.integers(1, 40), min_size=n, max_size=n)), reverse=True)
    w = normalize_weights(p)
    lam = draw(st.integers(-20, 60))
    d = draw(st.integers(1, 6))
    return derive_params(w, lam, d)


def _bar_valid(ps):
    pb = ps.p_bar
    try:
        WeightVector(pb)
    except InvalidWeights:
        return False
    return True


@given(families())
def test_bar_is_an_involution(ps):
    if not _bar_valid(ps):
        return
    bb = bar_involution(bar_involution(ps))
    assert bb.key() == ps.key()


@given(families())
def test_bar_preserves_tau_and_lambda_sum(ps):
    # lam + lam_1 = p_1 (d - 1) on both sides of the involution
    assert ps.lam + ps.lambda_at(1) == ps.p[0] * (ps.d - 1)
    if _bar_valid(ps):
        b = bar_involution(ps)
        assert b.p[0] == ps.p[0]
        assert b.lam + b.lambda_at(1) == ps.p[0] * (ps.d - 1)
