"""Human-readable text grammar for polynomials and vector fields.

Grammar (whitespace around ``+``/``-`` between terms is required)::

    field   := term ( (" + " | " - ") term )*   |  "0"
    term    := [coef "*"] monomial " d/dx" INDEX  |  coef " d/dx" INDEX
    monomial:= factor ("*" factor)*
    factor  := "x" INDEX ["^" INT]
    coef    := INT ["/" INT]

A polynomial uses the same grammar without the ``d/dx`` suffix. Variables are
1-based: ``x1 .. xn``. Terms are written component by component, each
component in graded lexicographic descending order, so ``parse(render(v))``
returns ``v`` exactly.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .exceptions import ParseError
from .fields import VectorField
from .poly import Poly


def render_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _monomial(e) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i + 1}")
        elif k:
            parts.append(f"x{i + 1}^{k}")
    return "*".join(parts)


def _term(c: Fraction, e, suffix: str = "") -> tuple[str, str]:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    mono = _monomial(e)
    if not mono:
        body = render_rational(a)
    elif a == 1:
        body = mono
    else:
        body = f"{render_rational(a)}*{mono}"
    return sign, body + suffix


def _join(signed: list[tuple[str, str]]) -> str:
    if not signed:
        return "0"
    first_sign, first = signed[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, body in signed[1:]:
        out += f" {s} {body}"
    return out


def render_poly(p: Poly) -> str:
    return _join([_term(c, e) for e, c in p.items()])


def render_field(X: VectorField) -> str:
    return _join([_term(c, e, f" d/dx{j + 1}") for j, e, c in X.terms()])


_TERM = re.compile(
    r"^(?:(?P<coef>\d+(?:/\d+)?)(?:\*(?P<mono1>x\d+(?:\^\d+)?(?:\*x\d+(?:\^\d+)?)*))?"
    r"|(?P<mono2>x\d+(?:\^\d+)?(?:\*x\d+(?:\^\d+)?)*))"
    r"(?: d/dx(?P<comp>\d+))?$"
)


def _split_terms(text: str) -> list[tuple[int, str]]:
    text = text.strip()
    if not text:
        raise ParseError("empty expression")
    sign = 1
    if text.startswith("-"):
        sign, text = -1, text[1:]
    pieces = re.split(r" ([+-]) ", text)
    out = [(sign, pieces[0])]
    for k in range(1, len(pieces), 2):
        out.append((1 if pieces[k] == "+" else -1, pieces[k + 1]))
    return out


def _parse_term(body: str, n: int):
    m = _TERM.match(body.strip())
    if not m:
        raise ParseError(f"cannot parse term {body!r}")
    coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
    mono = m.group("mono1") or m.group("mono2") or ""
    e = [0] * n
    if mono:
        for factor in mono.split("*"):
            name, _, power = factor.partition("^")
            idx = int(name[1:]) - 1
            if not 0 <= idx < n:
                raise ParseError(f"variable {name} outside x1..x{n}")
            e[idx] += int(power) if power else 1
    comp = m.group("comp")
    return coef, tuple(e), (int(comp) - 1 if comp else None)


def parse_poly(text: str, n: int) -> Poly:
    if text.strip() == "0":
        return Poly.zero(n)
    terms: dict = {}
    for sign, body in _split_terms(text):
        c, e, comp = _parse_term(body, n)
        if comp is not None:
            raise ParseError("unexpected d/dx in a polynomial")
        terms[e] = terms.get(e, 0) + sign * c
    return Poly(n, terms)


def parse_field(text: str, n: int) -> VectorField:
    if text.strip() == "0":
        return VectorField.zero(n)
    terms: dict = {}
    for sign, body in _split_terms(text):
        c, e, comp = _parse_term(body, n)
        if comp is None or not 0 <= comp < n:
            raise ParseError(f"term {body!r} lacks a valid d/dx suffix")
        terms[(comp, e)] = terms.get((comp, e), 0) + sign * c
    return VectorField.from_terms(n, terms)
