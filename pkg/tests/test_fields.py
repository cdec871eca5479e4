import random

import pytest
import sympy as sp

from gkfol.exceptions import DimensionMismatch, GradeMismatch, GradeOverflow, ZeroField
from gkfol.fields import (
    AltForm,
    VectorField,
    contract,
    divergence,
    exterior_derivative,
    field_to_form,
    form_to_field,
    interior,
    lie_bracket,
    minors3,
    quasi_weight,
    rot,
    wedge,
)
from gkfol.poly import Poly

from conftest import random_poly, random_qh_field, random_weights, to_sympy


def rot_identity_instances(count=300, seed=7):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice([3, 4, 5])
        p = random_weights(rng, n)
        lam = rng.randint(-p[-1], 2 * p[0])
        X = random_qh_field(rng, p, lam, cap=3 if n < 5 else 2)
        if not X.is_zero():
            out.append((p, lam, X))
    return out


def test_rot_identity_300_instances():
    failures = 0
    for p, lam, X in rot_identity_instances():
        S = VectorField.diagonal(p)
        tau = lam + sum(p)
        lhs = rot(contract(S, X))
        rhs = X * Poly.const(len(p), tau) - S * divergence(X)
        failures += lhs != rhs
    assert failures == 0


def test_dd_is_zero(rng):
    for n in (3, 4, 5):
        for grade in range(0, n - 1):
            coeffs = {}
            from itertools import combinations

            for I in combinations(range(n), grade):
                if rng.random() < 0.7:
                    coeffs[I] = random_poly(rng, n, 3, 3)
            w = AltForm(n, grade, coeffs)
            assert exterior_derivative(exterior_derivative(w)).is_zero()


def test_jacobi_identity(rng):
    for _ in range(20):
        n = rng.choice([3, 4])
        A, B, C = (VectorField([random_poly(rng, n, 2, 2) for _ in range(n)]) for _ in range(3))
        total = (
            lie_bracket(A, lie_bracket(B, C))
            + lie_bracket(B, lie_bracket(C, A))
            + lie_bracket(C, lie_bracket(A, B))
        )
        assert total.is_zero()


def test_bracket_with_diagonal_gives_quasi_weight(rng):
    p = (7, 6, 4)
    X = random_qh_field(rng, p, 8, cap=3, density=1.0)
    S = VectorField.diagonal(p)
    assert lie_bracket(S, X) == X * Poly.const(3, 8)
    assert quasi_weight(S, X) == 8
    with pytest.raises(ZeroField):
        quasi_weight(S, VectorField.zero(3))


def test_bracket_against_sympy(rng):
    xs = sp.symbols("x1:4")
    A = VectorField([random_poly(rng, 3) for _ in range(3)])
    B = VectorField([random_poly(rng, 3) for _ in range(3)])
    C = lie_bracket(A, B)
    a = [to_sympy(c, xs) for c in A]
    b = [to_sympy(c, xs) for c in B]
    for j in range(3):
        expected = sum(a[i] * sp.diff(b[j], xs[i]) - b[i] * sp.diff(a[j], xs[i]) for i in range(3))
        assert sp.expand(to_sympy(C[j], xs) - expected) == 0


def test_form_field_roundtrip(rng):
    for n in (3, 4, 5):
        Y = VectorField([random_poly(rng, n) for _ in range(n)])
        assert form_to_field(field_to_form(Y)) == Y
        # d(i_Y nu) = div(Y) nu
        assert exterior_derivative(field_to_form(Y)) == AltForm.volume(n) * divergence(Y)


def test_interior_is_antiderivation(rng):
    n = 4
    V = VectorField([random_poly(rng, n, 2, 2) for _ in range(n)])
    a = AltForm.one_form([random_poly(rng, n, 2, 2) for _ in range(n)])
    b = AltForm(n, 2, {(0, 1): random_poly(rng, n, 2, 2), (1, 3): random_poly(rng, n, 2, 2)})
    lhs = interior(V, wedge(a, b))
    rhs = wedge(interior(V, a), b) - wedge(a, interior(V, b))
    assert lhs == rhs


def test_minors_vanish_for_dependent_rows():
    n = 4
    R = VectorField.radial(n)
    S = VectorField.diagonal((5, 3, 2, 1))
    Y = R * Poly.var(n, 0) + S * Poly.var(n, 2)
    assert all(m.is_zero() for m in minors3(R, S, Y))
    Z = VectorField.from_terms(n, {(0, (0, 1, 0, 0)): 1})
    assert not all(m.is_zero() for m in minors3(R, S, Z))


def test_grade_errors():
    with pytest.raises(GradeOverflow):
        exterior_derivative(AltForm.volume(3))
    with pytest.raises(GradeMismatch):
        rot(AltForm.volume(3))
    with pytest.raises(GradeMismatch):
        form_to_field(AltForm(3, 1))
    with pytest.raises(DimensionMismatch):
        lie_bracket(VectorField.radial(3), VectorField.radial(4))
