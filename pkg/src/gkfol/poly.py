"""Sparse multivariate (Laurent) polynomials over the rationals.

A ``Poly`` maps exponent tuples to nonzero ``Fraction`` coefficients. Exponents
may be negative; such objects only occur inside chart transforms and
``is_polynomial`` tells them apart.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .exceptions import DimensionMismatch


def grlex_key(e: tuple[int, ...]) -> tuple:
    return (sum(e), e)


def grevlex_key(e: tuple[int, ...]) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class Poly:
    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.n = n
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise DimensionMismatch(f"exponent {e} has length != {n}")
                c = _coerce(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n, terms):
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, n: int) -> "Poly":
        return cls._raw(n, {})

    @classmethod
    def const(cls, n: int, c) -> "Poly":
        c = _coerce(c)
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def var(cls, n: int, i: int) -> "Poly":
        """The coordinate ``x_{i+1}`` (0-based ``i``)."""
        e = [0] * n
        e[i] = 1
        return cls._raw(n, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "Poly":
        c = _coerce(c)
        return cls._raw(len(exp), {tuple(exp): c} if c else {})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return self._terms

    def items(self):
        """Terms in canonical (graded lexicographic, descending) order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self._terms for x in e)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.n)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._terms), default=-1)

    def min_exponents(self) -> tuple[int, ...]:
        if not self._terms:
            return (0,) * self.n
        return tuple(min(e[i] for e in self._terms) for i in range(self.n))

    def homogeneous_part(self, k: int) -> "Poly":
        return Poly._raw(self.n, {e: c for e, c in self._terms.items() if sum(e) == k})

    def variables(self) -> set[int]:
        return {i for e in self._terms for i, x in enumerate(e) if x}

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Poly"):
        if other.n != self.n:
            raise DimensionMismatch(f"{self.n} vs {other.n} variables")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.n, other)
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = _coerce(c)
        if not c:
            return Poly.zero(self.n)
        return Poly._raw(self.n, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly._raw(self.n, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, Poly):
            raise TypeError("use divide_exact for polynomial division")
        return self.scale(Fraction(1) / _coerce(other))

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("negative powers only for monomials")
            (e, c), = self._terms.items()
            return Poly._raw(self.n, {tuple(x * k for x in e): c ** k})
        out = Poly.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def shift(self, exp: Sequence[int]) -> "Poly":
        """Multiply by the monomial ``x^exp`` (exponents may be negative)."""
        return Poly._raw(self.n, {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()})

    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                f = list(e)
                f[i] = k - 1
                out[tuple(f)] = c * k
        return Poly._raw(self.n, out)

    def evaluate(self, point: Sequence) -> Fraction:
        pt = [_coerce(x) for x in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Compose with ``x_i -> images[i]`` (all images share one variable count)."""
        if len(images) != self.n:
            raise DimensionMismatch("need one image per variable")
        m = images[0].n
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        out = Poly.zero(m)
        for e, c in self._terms.items():
            t = Poly.const(m, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            out = out + t
        return out

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        from .render import render_poly

        return f"Poly({render_poly(self)!r})"


def divide_exact(f: Poly, g: Poly) -> Poly:
    """Quotient ``f / g``, raising ``ValueError`` when ``g`` does not divide ``f``."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    lm_g = max(g.terms, key=grlex_key)
    lc_g = g.terms[lm_g]
    rem = dict(f.terms)
    quot = {}
    while rem:
        lm = max(rem, key=grlex_key)
        q = tuple(a - b for a, b in zip(lm, lm_g))
        if any(x < 0 for x in q):
            raise ValueError("not an exact division")
        c = rem[lm] / lc_g
        quot[q] = c
        for e, a in g.terms.items():
            k = tuple(x + y for x, y in zip(e, q))
            v = rem.get(k, 0) - c * a
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return Poly._raw(f.n, quot)


def poly_sum(polys: Iterable[Poly], n: int) -> Poly:
    out = Poly.zero(n)
    for p in polys:
        out = out + p
    return out
