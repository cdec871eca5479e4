"""Multivariate polynomial gcd over the rationals.

Recursive primitive remainder sequences: treat the polynomial as univariate in
its highest variable with coefficients in the remaining ones, split off the
content by recursion and run pseudo-division on primitive parts.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from typing import Iterable

from .poly import Poly, divide_exact


def _normalize(f: Poly) -> Poly:
    """Scale so the graded-lex leading coefficient is 1."""
    if f.is_zero():
        return f
    _, c = next(iter(f.items()))
    return f.scale(1 / c)


def _coeffs(f: Poly, v: int) -> dict[int, Poly]:
    out: dict[int, dict] = {}
    for e, c in f.terms.items():
        k = e[v]
        rest = e[:v] + (0,) + e[v + 1:]
        out.setdefault(k, {})[rest] = c
    return {k: Poly(f.n, t) for k, t in out.items()}


def _monomial_gcd(m: Poly, g: Poly) -> Poly:
    (e,) = m.terms
    lows = g.min_exponents()
    return Poly.monomial(tuple(min(a, b) for a, b in zip(e, lows)))


def _content(f: Poly, v: int) -> Poly:
    return reduce(gcd, _coeffs(f, v).values())


def _prem(A: Poly, B: Poly, v: int) -> Poly:
    dB = B.degree_in(v)
    lcB = _coeffs(B, v)[dB]
    unit = [0] * A.n
    R = A
    while not R.is_zero() and R.degree_in(v) >= dB:
        dR = R.degree_in(v)
        lcR = _coeffs(R, v)[dR]
        unit[v] = dR - dB
        R = R * lcB - lcR * B.shift(unit)
    return R


def gcd(f: Poly, g: Poly) -> Poly:
    """Greatest common divisor, normalized to leading coefficient 1 (``0`` only for ``gcd(0, 0)``)."""
    if f.n != g.n:
        raise ValueError("polynomials live in different rings")
    if f.is_zero():
        return _normalize(g)
    if g.is_zero():
        return _normalize(f)
    if f.is_constant() or g.is_constant():
        return Poly.const(f.n, 1)
    if len(f) == 1:
        return _monomial_gcd(f, g)
    if len(g) == 1:
        return _monomial_gcd(g, f)
    vs = f.variables() | g.variables()
    v = max(vs)
    if f.degree_in(v) == 0 or g.degree_in(v) == 0:
        # v appears in one side only: the gcd divides every coefficient of that side
        pure, mixed = (f, g) if f.degree_in(v) == 0 else (g, f)
        return _normalize(reduce(gcd, _coeffs(mixed, v).values(), pure))
    cf, cg = _content(f, v), _content(g, v)
    c = gcd(cf, cg)
    A, B = divide_exact(f, cf), divide_exact(g, cg)
    if A.degree_in(v) < B.degree_in(v):
        A, B = B, A
    while True:
        R = _prem(A, B, v)
        if R.is_zero():
            break
        if R.degree_in(v) == 0:
            B = Poly.const(f.n, 1)
            break
        R = _normalize(divide_exact(R, _content(R, v)))
        A, B = B, R
    B = _normalize(divide_exact(B, _content(B, v))) if not B.is_constant() else B
    return _normalize(c * B)


def gcd_all(polys: Iterable[Poly]) -> Poly | None:
    """gcd of a collection with early exit at 1; ``None`` for an empty collection."""
    out = None
    for p in polys:
        out = p if out is None else gcd(out, p)
        if out.is_constant() and not out.is_zero():
            return Poly.const(out.n, 1)
    return None if out is None else _normalize(out)


def is_unit(f: Poly) -> bool:
    return f.is_constant() and f.constant_term() != Fraction(0)
