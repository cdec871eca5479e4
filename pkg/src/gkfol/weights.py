"""Integer parameters of a family: weights, lambda, degree and derived quantities.

Indices follow the mathematical convention (1-based) in the public helpers
``lambda_at``, ``tau_at`` and ``p_bar_at``; the stored tuples are 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, prod
from typing import Sequence

from .exceptions import DuplicateWeights, InvalidWeights, TooFewWeights


@dataclass(frozen=True)
class WeightVector:
    """Strictly decreasing, coprime positive weights ``p_1 > ... > p_n >= 1``."""

    p: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(x) for x in self.p)
        object.__setattr__(self, "p", p)
        if len(p) < 3:
            raise TooFewWeights(f"need at least 3 weights, got {len(p)}")
        if p[-1] < 1:
            raise InvalidWeights(f"weights must be positive: {p}")
        if any(a <= b for a, b in zip(p, p[1:])):
            raise InvalidWeights(f"weights must be strictly decreasing: {p}")
        if reduce(gcd, p) != 1:
            raise InvalidWeights(f"weights must be coprime: {p}")

    @property
    def n(self) -> int:
        return len(self.p)

    def at(self, k: int) -> int:
        """``p_k`` with the convention ``p_{n+1} = 0``."""
        if k == self.n + 1:
            return 0
        if not 1 <= k <= self.n:
            raise IndexError(k)
        return self.p[k - 1]

    def __iter__(self):
        return iter(self.p)

    def __len__(self):
        return len(self.p)

    def __str__(self):
        return ",".join(map(str, self.p))


def normalize_weights(raw: Sequence[int]) -> WeightVector:
    """Sort decreasingly and divide by the gcd."""
    raw = [int(x) for x in raw]
    if len(raw) < 3:
        raise TooFewWeights(f"need at least 3 weights, got {len(raw)}")
    if any(x <= 0 for x in raw):
        raise InvalidWeights(f"weights must be positive: {raw}")
    if len(set(raw)) != len(raw):
        raise DuplicateWeights(f"weights must be pairwise distinct: {raw}")
    g = reduce(gcd, raw)
    return WeightVector(tuple(sorted((x // g for x in raw), reverse=True)))


@dataclass(frozen=True)
class ParamSet:
    weights: WeightVector
    lam: int
    d: int
    tau: int
    lambdas: tuple[int, ...]
    taus: tuple[int, ...]
    p_bar: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.weights.n

    @property
    def p(self) -> tuple[int, ...]:
        return self.weights.p

    def lambda_at(self, i: int) -> int:
        """``lambda_i``; ``lambda_0`` is lambda itself."""
        return self.lam if i == 0 else self.lambdas[i - 1]

    def tau_at(self, i: int) -> int:
        return self.tau if i == 0 else self.taus[i - 1]

    def p_bar_at(self, j: int) -> int:
        return self.p_bar[j - 1]

    def key(self) -> tuple:
        return (self.p, self.lam, self.d)

    def __str__(self):
        return f"({self.weights}; {self.lam}, d={self.d})"


def derive_params(w: WeightVector | Sequence[int], lam: int, d: int) -> ParamSet:
    if not isinstance(w, WeightVector):
        w = WeightVector(tuple(w))
    if d < 1:
        raise ValueError(f"degree d must be >= 1, got {d}")
    p, n = w.p, w.n
    tau = lam + sum(p)
    lambdas = (p[0] * (d - 1) - lam,) + tuple(lam - pi * (d - 1) for pi in p[1:])
    taus = (p[0] * (n + d) - tau,) + tuple(tau - pi * (n + d) for pi in p[1:])
    p_bar = tuple(p[0] - w.at(n - j + 2) for j in range(1, n + 1))
    return ParamSet(w, int(lam), int(d), tau, lambdas, taus, p_bar)


def check_condition(ps: ParamSet, i: int, j: int) -> bool:
    """Condition ``c_ij``: ``p_j + lam = p_{i+1} d`` (``p_{j+1}`` when ``j > i``)."""
    n = ps.n
    if not (1 <= i <= n - 1 and 1 <= j <= n):
        raise ValueError(f"condition index out of range: c_{i},{j} for n={n}")
    w = ps.weights
    left = w.at(j) if j <= i else w.at(j + 1)
    return left + ps.lam == w.at(i + 1) * ps.d


def bar_involution(ps: ParamSet) -> ParamSet:
    return derive_params(WeightVector(ps.p_bar), ps.lambdas[0], ps.d)


def milnor_number(p: Sequence[int], lam: int) -> Fraction:
    """``prod(p_j + lam) / prod(p_j)``; weights need not be distinct."""
    p = [int(x) for x in p]
    if any(x < 1 for x in p):
        raise InvalidWeights(f"weights must be positive: {p}")
    return Fraction(prod(x + lam for x in p), prod(p))
