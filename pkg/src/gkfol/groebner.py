"""Buchberger's algorithm in graded reverse lexicographic order over the rationals.

Pair handling follows the Gebauer-Moeller update with the normal selection
strategy. Work is metered in term-elimination steps; running past the budget
raises ``BudgetExceeded`` so callers can report an unknown verdict.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exceptions import BudgetExceeded
from .poly import Poly, grevlex_key

DEFAULT_BUDGET = int(os.environ.get("GKFOL_BUDGET", "3000000"))

Exp = tuple[int, ...]


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Exp, b: Exp) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class _Meter:
    def __init__(self, budget: int):
        self.budget = budget
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExceeded(f"standard basis exceeded {self.budget} steps")


class _Keys(dict):
    def __missing__(self, e):
        k = grevlex_key(e)
        self[e] = k
        return k


def _lead(f: dict, keys: _Keys) -> Exp:
    return max(f, key=keys.__getitem__)


def _monic(f: dict, keys: _Keys) -> tuple[Exp, dict]:
    lm = _lead(f, keys)
    inv = 1 / f[lm]
    return lm, {e: c * inv for e, c in f.items()}


def _reduce(f: dict, basis: list[tuple[Exp, dict]], keys: _Keys, meter: _Meter, full: bool = True) -> dict:
    f = dict(f)
    rem: dict = {}
    while f:
        lm = _lead(f, keys)
        c = f[lm]
        for glm, g in basis:
            if _divides(glm, lm):
                q = tuple(a - b for a, b in zip(lm, glm))
                for e, a in g.items():
                    k = tuple(x + y for x, y in zip(e, q))
                    v = f.get(k, 0) - c * a
                    if v:
                        f[k] = v
                    else:
                        del f[k]
                meter.tick()
                break
        else:
            if not full:
                rem.update(f)
                return rem
            rem[lm] = c
            del f[lm]
    return rem


def _spoly(f: tuple[Exp, dict], g: tuple[Exp, dict]) -> dict:
    (flm, fp), (glm, gp) = f, g
    L = _lcm(flm, glm)
    qf = tuple(a - b for a, b in zip(L, flm))
    qg = tuple(a - b for a, b in zip(L, glm))
    out: dict = {}
    for e, c in fp.items():
        out[tuple(x + y for x, y in zip(e, qf))] = c
    for e, c in gp.items():
        k = tuple(x + y for x, y in zip(e, qg))
        v = out.get(k, 0) - c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


@dataclass(frozen=True)
class StandardBasis:
    n: int
    polys: tuple[Poly, ...]
    leading: tuple[Exp, ...]
    steps: int

    def is_zero_dimensional(self) -> bool:
        """Every variable has a pure power among the leading monomials."""
        if any(not any(e) for e in self.leading):
            return True
        pure = {i for e in self.leading for i in range(self.n) if e[i] and sum(e) == e[i]}
        return len(pure) == self.n

    def is_unit(self) -> bool:
        return any(not any(e) for e in self.leading)

    def quotient_dimension(self) -> int | None:
        """Number of standard monomials, or ``None`` when infinite."""
        if not self.is_zero_dimensional():
            return None
        return count_standard_monomials(self.leading, self.n)

    def staircase(self) -> list[Exp]:
        return sorted(self.leading)


def count_standard_monomials(leading: Sequence[Exp], n: int) -> int:
    if any(not any(e) for e in leading):
        return 0

    def rec(k: int, gens: list[Exp]) -> int:
        # monomials in variables k..n-1 not divisible by any generator (restricted to k..)
        if k == n:
            return 0 if any(all(x == 0 for x in g[k:]) for g in gens) else 1
        bound = min((g[k] for g in gens if all(x == 0 for i, x in enumerate(g) if i > k)), default=None)
        if bound is None:
            raise ValueError("staircase is infinite")
        total = 0
        for a in range(bound):
            sub = [g for g in gens if g[k] <= a]
            total += rec(k + 1, sub)
        return total

    return rec(0, list(leading))


def groebner_basis(polys: Sequence[Poly], budget: int | None = None) -> StandardBasis:
    """Reduced Groebner basis (grevlex) of the ideal generated by ``polys``."""
    budget = DEFAULT_BUDGET if budget is None else budget
    polys = [p for p in polys if not p.is_zero()]
    n = polys[0].n if polys else 0
    if not polys:
        return StandardBasis(n, (), (), 0)
    if any(not p.is_polynomial() for p in polys):
        raise ValueError("standard bases need polynomial inputs")
    keys = _Keys()
    meter = _Meter(budget)
    store: list[tuple[Exp, dict]] = []
    G: list[int] = []
    B: list[tuple[int, int]] = []

    def update(h: int):
        nonlocal G, B
        hlm = store[h][0]
        C = list(G)
        D: list[int] = []
        while C:
            g1 = C.pop(0)
            g1lm = store[g1][0]
            L1 = _lcm(hlm, g1lm)
            if _coprime(hlm, g1lm) or not any(
                _divides(_lcm(hlm, store[g2][0]), L1) for g2 in C + D
            ):
                D.append(g1)
        E = [g for g in D if not _coprime(hlm, store[g][0])]
        kept = []
        for g1, g2 in B:
            L = _lcm(store[g1][0], store[g2][0])
            if (
                _divides(hlm, L)
                and _lcm(store[g1][0], hlm) != L
                and _lcm(store[g2][0], hlm) != L
            ):
                continue
            kept.append((g1, g2))
        B = kept + [(h, g) for g in E]
        G = [g for g in G if not _divides(hlm, store[g][0])] + [h]

    # seed with inter-reduced generators
    for p in sorted(polys, key=lambda q: grevlex_key(max(q.terms, key=grevlex_key))):
        r = _reduce(p.terms, [store[g] for g in G], keys, meter)
        if r:
            store.append(_monic(r, keys))
            update(len(store) - 1)

    while B:
        best = min(
            range(len(B)),
            key=lambda k: keys[_lcm(store[B[k][0]][0], store[B[k][1]][0])],
        )
        g1, g2 = B.pop(best)
        s = _spoly(store[g1], store[g2])
        if not s:
            continue
        r = _reduce(s, [store[g] for g in G], keys, meter)
        if r:
            store.append(_monic(r, keys))
            update(len(store) - 1)

    # reduced basis
    basis = [store[g] for g in G]
    basis = [b for b in basis if not any(_divides(o[0], b[0]) and o[0] != b[0] for o in basis)]
    basis.sort(key=lambda t: keys[t[0]])
    reduced = []
    for k, (lm, f) in enumerate(basis):
        others = basis[:k] + basis[k + 1:]
        tail = {e: c for e, c in f.items() if e != lm}
        tail = _reduce(tail, others, keys, meter) if tail else {}
        tail[lm] = Fraction(1)
        reduced.append((lm, tail))
    return StandardBasis(
        n,
        tuple(Poly(n, f) for _, f in reduced),
        tuple(lm for lm, _ in reduced),
        meter.steps,
    )
