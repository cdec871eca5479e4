import random
from fractions import Fraction

import sympy as sp

from gkfol import linalg


def random_matrix(rng, r, c, zero_rate=0.4):
    return [[0 if rng.random() < zero_rate else rng.randint(-5, 5) for _ in range(c)] for _ in range(r)]


def test_kernel_matches_sympy():
    rng = random.Random(11)
    for _ in range(40):
        r, c = rng.randint(1, 6), rng.randint(1, 7)
        A = random_matrix(rng, r, c)
        K = linalg.kernel(A, c)
        M = sp.Matrix(A)
        assert len(K) == len(M.nullspace())
        for v in K:
            assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
            assert next(x for x in v if x) == 1
        assert linalg.rank(A, c) == M.rank()


def test_solve_and_inconsistency():
    A = [[1, 2], [2, 4]]
    assert linalg.solve(A, [3, 6], 2) == [Fraction(3), Fraction(0)]
    assert linalg.solve(A, [3, 7], 2) is None


def test_determinant_matches_sympy():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 5)
        A = random_matrix(rng, n, n, 0.3)
        assert linalg.determinant(A) == sp.Matrix(A).det()
