import random
from fractions import Fraction

import pytest
import sympy as sp

from gkfol.fields import VectorField
from gkfol.poly import Poly
from gkfol.w0space import weighted_monomials


def to_sympy(p: Poly, xs):
    return sum(
        (sp.Rational(c.numerator, c.denominator) * sp.Mul(*[v**k for v, k in zip(xs, e)]) for e, c in p.terms.items()),
        sp.Integer(0),
    )


def random_weights(rng: random.Random, n: int, top: int = 9) -> tuple[int, ...]:
    while True:
        p = tuple(sorted(rng.sample(range(1, top + 1), n), reverse=True))
        from math import gcd
        from functools import reduce

        if reduce(gcd, p) == 1:
            return p


def random_qh_field(rng: random.Random, p, lam: int, cap: int = 3, density: float = 0.6) -> VectorField:
    """Random field with ``[S, X] = lam X`` for ``S = diag(p)``."""
    n = len(p)
    terms = {}
    for j in range(n):
        for e in weighted_monomials(p, p[j] + lam, cap):
            if rng.random() < density:
                c = rng.randint(-4, 4)
                if c:
                    terms[(j, e)] = Fraction(c, rng.choice([1, 1, 2, 3]))
    return VectorField.from_terms(n, terms)


def random_poly(rng: random.Random, n: int, nterms: int = 4, deg: int = 3) -> Poly:
    return Poly(n, {tuple(rng.randint(0, deg) for _ in range(n)): rng.randint(-5, 5) for _ in range(nterms)})


@pytest.fixture
def rng():
    return random.Random(20240611)


WITNESS_764 = (
    "-10*x1*x3^2 d/dx1 - 5*x2*x3^2 d/dx2 + x1^2 d/dx2 + 5*x3^3 d/dx3 + x2^2 d/dx3"
)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
