"""The space ``W_0`` of admissible rotational fields and family dimensions.

``W_0`` consists of fields ``Y`` with ``[S, Y] = lam Y``, ``div Y = 0``,
``deg Y <= d + 1`` and top-degree part pointwise dependent on ``R`` and ``S``.
The first and third conditions fix the monomial support (slots); the other
two are linear in the slot coefficients and solved exactly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg
from .exceptions import EmptyBasis, EmptyFamily
from .fields import VectorField, divergence, minors3, quasi_weight
from .poly import Poly
from .weights import ParamSet


def weighted_monomials(w: Sequence[int], target: int, degree_cap: int) -> list[tuple[int, ...]]:
    """All ``sigma >= 0`` with ``sum w_k sigma_k = target`` and ``|sigma| <= degree_cap``."""
    w = [int(x) for x in w]
    n = len(w)
    out: list[tuple[int, ...]] = []
    if target < 0 or degree_cap < 0:
        return out

    def rec(k, remaining, cap, prefix):
        if k == n - 1:
            q, r = divmod(remaining, w[k])
            if not r and q <= cap:
                out.append(tuple(prefix) + (q,))
            return
        for s in range(min(cap, remaining // w[k]) + 1):
            prefix.append(s)
            rec(k + 1, remaining - s * w[k], cap - s, prefix)
            prefix.pop()

    rec(0, target, degree_cap, [])
    out.sort(reverse=True)
    return out


Slot = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class W0Basis:
    ps: ParamSet
    slots: tuple[Slot, ...]
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def field(self, coords: Sequence) -> VectorField:
        """The field with the given coordinates over the basis."""
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates")
        n = self.ps.n
        terms: dict = {}
        for c, vec in zip(coords, self.basis):
            c = Fraction(c)
            if not c:
                continue
            for slot, v in zip(self.slots, vec):
                if v:
                    terms[slot] = terms.get(slot, 0) + c * v
        return VectorField.from_terms(n, terms)

    def fields(self) -> list[VectorField]:
        return [self.field([1 if k == i else 0 for k in range(self.dim)]) for i in range(self.dim)]

    def slot_vector(self, Y: VectorField) -> list[Fraction] | None:
        index = {s: k for k, s in enumerate(self.slots)}
        v = [Fraction(0)] * len(self.slots)
        for j, e, c in Y.terms():
            k = index.get((j, e))
            if k is None:
                return None
            v[k] = c
        return v

    def coordinates(self, Y: VectorField) -> list[Fraction] | None:
        """Coordinates of ``Y`` over the basis, or ``None`` if ``Y`` is outside the span."""
        v = self.slot_vector(Y)
        if v is None:
            return None
        if not self.basis:
            return [] if not any(v) else None
        columns = [[vec[s] for vec in self.basis] for s in range(len(self.slots))]
        return linalg.solve(columns, v, self.dim)

    def support(self) -> set[Slot]:
        return {s for vec in self.basis for s, v in zip(self.slots, vec) if v}


def w0_slots(ps: ParamSet) -> list[Slot]:
    slots = []
    for j, pj in enumerate(ps.p):
        for e in weighted_monomials(ps.p, pj + ps.lam, ps.d + 1):
            slots.append((j, e))
    return slots


def w0_equations(ps: ParamSet, slots: Sequence[Slot]) -> list[list[Fraction]]:
    n, p, top = ps.n, ps.p, ps.d + 1
    eqs: dict = {}

    def add(key, k, v):
        row = eqs.setdefault(key, {})
        row[k] = row.get(k, 0) + v

    for k, (j, e) in enumerate(slots):
        if e[j]:
            f = list(e)
            f[j] -= 1
            add(("div", tuple(f)), k, e[j])
        if sum(e) != top:
            continue
        for m, (a, b, c) in enumerate(combinations(range(n), 3)):
            if j == a:
                other, coef = (b, c), p[c] - p[b]
            elif j == b:
                other, coef = (a, c), -(p[c] - p[a])
            elif j == c:
                other, coef = (a, b), p[b] - p[a]
            else:
                continue
            if not coef:
                continue
            f = list(e)
            for i in other:
                f[i] += 1
            add(("minor", m, tuple(f)), k, coef)
    rows = []
    for key in sorted(eqs, key=repr):
        row = [Fraction(0)] * len(slots)
        for k, v in eqs[key].items():
            row[k] = Fraction(v)
        if any(row):
            rows.append(row)
    return rows


def w0_basis(ps: ParamSet) -> W0Basis:
    if ps.lam < -ps.p[0]:
        return W0Basis(ps, (), ())
    slots = w0_slots(ps)
    if not slots:
        return W0Basis(ps, (), ())
    eqs = w0_equations(ps, slots)
    basis = linalg.kernel(eqs, len(slots))
    return W0Basis(ps, tuple(slots), tuple(tuple(v) for v in basis))


def in_w0(ps: ParamSet, Y: VectorField) -> bool:
    """Symbolic membership test, independent of the slot linear system."""
    if Y.n != ps.n:
        return False
    if Y.is_zero():
        return True
    S = VectorField.diagonal(ps.p)
    if quasi_weight(S, Y) != ps.lam:
        return False
    if not divergence(Y).is_zero() or Y.degree() > ps.d + 1:
        return False
    top = Y.homogeneous_part(ps.d + 1)
    return all(m.is_zero() for m in minors3(VectorField.radial(ps.n), S, top))


def dim_component(ps: ParamSet, basis: W0Basis | None = None) -> int:
    """Dimension of the closure of the family inside the space of foliations."""
    n, d = ps.n, ps.d
    if basis is None:
        basis = w0_basis(ps)
    if basis.dim == 0:
        raise EmptyFamily(f"W_0 is zero for {ps}")
    dim_v0 = basis.dim - 1
    if d >= 2:
        return dim_v0 + n * n + n
    if ps.lam != 0:
        return dim_v0 + n * n + n - 1
    return n * n + 2 * n - 2


def random_element(b: W0Basis, bound: int, seed: int) -> VectorField:
    """Seeded integer combination of the basis with coefficients in ``[-bound, bound]``."""
    if b.dim == 0:
        raise EmptyBasis("W_0 basis is empty")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    return b.field(random_coordinates(b.dim, bound, seed))


def random_coordinates(dim: int, bound: int, seed: int) -> list[int]:
    rng = random.Random(seed)
    while True:
        coords = [rng.randint(-bound, bound) for _ in range(dim)]
        if any(coords):
            return coords


def top_degree_block(b: W0Basis) -> list[list[Fraction]]:
    """Basis coordinates restricted to slots of degree ``d + 1``."""
    top = [k for k, (_, e) in enumerate(b.slots) if sum(e) == b.ps.d + 1]
    return [[vec[k] for k in top] for vec in b.basis]


def monomial_field(n: int, j: int, e: Sequence[int], c=1) -> VectorField:
    comps = [Poly.zero(n)] * n
    comps = list(comps)
    comps[j] = Poly.monomial(e, c)
    return VectorField(comps)
