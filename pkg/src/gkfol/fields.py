"""Polynomial vector fields and alternating forms with the usual calculus.

Sign conventions: ``nu = dx_1 ^ ... ^ dx_n`` and ``i_V`` inserts ``V`` in the
first slot, so ``contract(S, X) = i_S(i_X nu)``. With these choices
``rot(contract(S, X)) = tau*X - div(X)*S`` whenever ``[S, X] = lam*X``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .exceptions import DimensionMismatch, GradeMismatch, GradeOverflow, ZeroField
from .poly import Poly


class VectorField:
    __slots__ = ("components",)

    def __init__(self, components: Sequence[Poly]):
        comps = tuple(components)
        if not comps:
            raise DimensionMismatch("a vector field needs at least one component")
        n = comps[0].n
        if len(comps) != n or any(c.n != n for c in comps):
            raise DimensionMismatch("components must be n polynomials in n variables")
        self.components = comps

    @classmethod
    def zero(cls, n: int) -> "VectorField":
        return cls([Poly.zero(n)] * n)

    @classmethod
    def diagonal(cls, weights: Sequence) -> "VectorField":
        n = len(weights)
        return cls([Poly.var(n, i).scale(w) for i, w in enumerate(weights)])

    @classmethod
    def radial(cls, n: int) -> "VectorField":
        return cls.diagonal([1] * n)

    @classmethod
    def from_terms(cls, n: int, terms: Mapping[tuple[int, tuple[int, ...]], object]) -> "VectorField":
        """Build from ``{(component, exponent): coefficient}`` (0-based component)."""
        comps: list[dict] = [{} for _ in range(n)]
        for (j, e), c in terms.items():
            comps[j][tuple(e)] = comps[j].get(tuple(e), 0) + Fraction(c)
        return cls([Poly(n, t) for t in comps])

    @property
    def n(self) -> int:
        return len(self.components)

    def __getitem__(self, j: int) -> Poly:
        return self.components[j]

    def __iter__(self):
        return iter(self.components)

    def terms(self):
        """``(component, exponent, coefficient)`` in canonical order."""
        for j, p in enumerate(self.components):
            for e, c in p.items():
                yield j, e, c

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def degree(self) -> int:
        return max(c.degree() for c in self.components)

    def homogeneous_part(self, k: int) -> "VectorField":
        return VectorField([c.homogeneous_part(k) for c in self.components])

    def __add__(self, other: "VectorField") -> "VectorField":
        _same_n(self, other)
        return VectorField([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "VectorField") -> "VectorField":
        _same_n(self, other)
        return VectorField([a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorField([-a for a in self.components])

    def __mul__(self, f) -> "VectorField":
        if isinstance(f, Poly):
            return VectorField([f * a for a in self.components])
        return VectorField([a.scale(f) for a in self.components])

    __rmul__ = __mul__

    def apply(self, f: Poly) -> Poly:
        """Directional derivative ``V(f)``."""
        out = Poly.zero(self.n)
        for i, a in enumerate(self.components):
            if a:
                df = f.diff(i)
                if df:
                    out = out + a * df
        return out

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        from .render import render_field

        return f"VectorField({render_field(self)!r})"


def _same_n(a, b):
    if a.n != b.n:
        raise DimensionMismatch(f"{a.n} vs {b.n} variables")


def lie_bracket(A: VectorField, B: VectorField) -> VectorField:
    _same_n(A, B)
    return VectorField([A.apply(B[j]) - B.apply(A[j]) for j in range(A.n)])


def divergence(X: VectorField) -> Poly:
    out = Poly.zero(X.n)
    for i, a in enumerate(X.components):
        out = out + a.diff(i)
    return out


def diagonal_weights(S: VectorField) -> tuple[Fraction, ...]:
    """Entries ``s_k`` of a diagonal field ``sum s_k x_k d/dx_k``."""
    n = S.n
    out = []
    for k, comp in enumerate(S.components):
        e = tuple(1 if i == k else 0 for i in range(n))
        if comp.is_zero():
            out.append(Fraction(0))
        elif len(comp) == 1 and e in comp.terms:
            out.append(comp.terms[e])
        else:
            raise ValueError("S must be diagonal: s_k x_k d/dx_k")
    return tuple(out)


def quasi_weight(S: VectorField, X: VectorField):
    """The common ``lam`` with ``[S, X] = lam X`` read off monomials, or ``None``."""
    if X.is_zero():
        raise ZeroField("quasi_weight of the zero field")
    p = diagonal_weights(S)
    lam = None
    for j, e, _ in X.terms():
        w = sum(pk * ek for pk, ek in zip(p, e)) - p[j]
        if lam is None:
            lam = w
        elif w != lam:
            return None
    return int(lam) if lam.denominator == 1 else lam


def evaluate(X: VectorField, point: Sequence) -> tuple[Fraction, ...]:
    return tuple(c.evaluate(point) for c in X.components)


def jacobian_at_zero(X: VectorField) -> tuple[tuple[Fraction, ...], ...]:
    """``J[j][k] = d X_j / d x_k`` at the origin."""
    n = X.n
    rows = []
    for comp in X.components:
        row = []
        for k in range(n):
            e = tuple(1 if i == k else 0 for i in range(n))
            row.append(comp.coefficient(e))
        rows.append(tuple(row))
    return tuple(rows)


# ---------------------------------------------------------------------------
# alternating forms


def _merge_sign(I: tuple[int, ...], J: tuple[int, ...]):
    """Sign of sorting the concatenation ``I + J``; ``None`` if they overlap."""
    if set(I) & set(J):
        return None
    inversions = sum(1 for a in I for b in J if a > b)
    return -1 if inversions % 2 else 1


class AltForm:
    """A ``k``-form ``sum_I f_I dx_I`` with strictly increasing 0-based ``I``."""

    __slots__ = ("n", "grade", "coeffs")

    def __init__(self, n: int, grade: int, coeffs: Mapping[tuple[int, ...], Poly] | None = None):
        if not 0 <= grade <= n:
            raise GradeOverflow(f"grade {grade} outside [0, {n}]")
        self.n = n
        self.grade = grade
        clean = {}
        for I, f in (coeffs or {}).items():
            I = tuple(I)
            if len(I) != grade or any(a >= b for a, b in zip(I, I[1:])):
                raise ValueError(f"bad index tuple {I} for grade {grade}")
            if f.n != n:
                raise DimensionMismatch("coefficient has wrong variable count")
            if I in clean:
                f = clean[I] + f
            if f:
                clean[I] = f
            else:
                clean.pop(I, None)
        self.coeffs = clean

    @classmethod
    def volume(cls, n: int) -> "AltForm":
        return cls(n, n, {tuple(range(n)): Poly.const(n, 1)})

    @classmethod
    def function(cls, f: Poly) -> "AltForm":
        return cls(f.n, 0, {(): f})

    @classmethod
    def one_form(cls, coefficients: Sequence[Poly]) -> "AltForm":
        n = coefficients[0].n
        return cls(n, 1, {(i,): c for i, c in enumerate(coefficients)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, I: Sequence[int]) -> Poly:
        return self.coeffs.get(tuple(I), Poly.zero(self.n))

    def __add__(self, other: "AltForm") -> "AltForm":
        self._check(other)
        out = dict(self.coeffs)
        for I, f in other.coeffs.items():
            out[I] = out[I] + f if I in out else f
        return AltForm(self.n, self.grade, out)

    def __neg__(self):
        return AltForm(self.n, self.grade, {I: -f for I, f in self.coeffs.items()})

    def __sub__(self, other: "AltForm") -> "AltForm":
        return self + (-other)

    def __mul__(self, f) -> "AltForm":
        if isinstance(f, Poly):
            return AltForm(self.n, self.grade, {I: f * g for I, g in self.coeffs.items()})
        return AltForm(self.n, self.grade, {I: g.scale(f) for I, g in self.coeffs.items()})

    __rmul__ = __mul__

    def map_coefficients(self, fn) -> "AltForm":
        return AltForm(self.n, self.grade, {I: fn(f) for I, f in self.coeffs.items()})

    def _check(self, other):
        if other.n != self.n or other.grade != self.grade:
            raise DimensionMismatch("forms differ in dimension or grade")

    def __eq__(self, other):
        return (
            isinstance(other, AltForm)
            and self.n == other.n
            and self.grade == other.grade
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        parts = []
        for I in sorted(self.coeffs):
            dx = "^".join(f"dx{i + 1}" for i in I) or "1"
            parts.append(f"({self.coeffs[I]!r}) {dx}")
        return f"AltForm[{self.grade}](" + " + ".join(parts) + ")"


def interior(V: VectorField, form: AltForm) -> AltForm:
    """``i_V form`` with ``V`` in the first slot."""
    if V.n != form.n:
        raise DimensionMismatch("field and form dimensions differ")
    if form.grade == 0:
        return AltForm(form.n, 0)
    out: dict = {}
    for I, f in form.coeffs.items():
        for m, idx in enumerate(I):
            v = V[idx]
            if not v:
                continue
            J = I[:m] + I[m + 1:]
            term = f * v
            if m % 2:
                term = -term
            out[J] = out[J] + term if J in out else term
    return AltForm(form.n, form.grade - 1, out)


def contract(S: VectorField, X: VectorField) -> AltForm:
    """``i_S i_X nu``: ``X`` inserted first, then ``S``."""
    _same_n(S, X)
    return interior(S, interior(X, AltForm.volume(S.n)))


def wedge(a: AltForm, b: AltForm) -> AltForm:
    if a.n != b.n:
        raise DimensionMismatch("forms differ in dimension")
    if a.grade + b.grade > a.n:
        return AltForm(a.n, a.n)
    out: dict = {}
    for I, f in a.coeffs.items():
        for J, g in b.coeffs.items():
            s = _merge_sign(I, J)
            if s is None:
                continue
            K = tuple(sorted(I + J))
            term = f * g
            if s < 0:
                term = -term
            out[K] = out[K] + term if K in out else term
    return AltForm(a.n, a.grade + b.grade, out)


def exterior_derivative(form: AltForm) -> AltForm:
    n = form.n
    if form.grade >= n:
        raise GradeOverflow("d of a top-degree form")
    out: dict = {}
    for I, f in form.coeffs.items():
        for j in range(n):
            if j in I:
                continue
            df = f.diff(j)
            if not df:
                continue
            before = sum(1 for i in I if i < j)
            K = tuple(sorted(I + (j,)))
            term = -df if before % 2 else df
            out[K] = out[K] + term if K in out else term
    return AltForm(n, form.grade + 1, out)


def field_to_form(Y: VectorField) -> AltForm:
    """``i_Y nu``."""
    return interior(Y, AltForm.volume(Y.n))


def form_to_field(form: AltForm) -> VectorField:
    """The unique ``Y`` with ``i_Y nu = form`` for an ``(n-1)``-form."""
    n = form.n
    if form.grade != n - 1:
        raise GradeMismatch(f"expected an (n-1)-form, got grade {form.grade}")
    comps = []
    for j in range(n):
        I = tuple(i for i in range(n) if i != j)
        c = form.coefficient(I)
        comps.append(-c if j % 2 else c)
    return VectorField(comps)


def rot(omega: AltForm) -> VectorField:
    """The rotational: ``d(omega) = i_Y nu``."""
    if omega.grade != omega.n - 2:
        raise GradeMismatch(f"rot expects an (n-2)-form, got grade {omega.grade}")
    return form_to_field(exterior_derivative(omega))


def minors3(R: VectorField, S: VectorField, Y: VectorField) -> list[Poly]:
    """All 3x3 minors of the matrix with rows ``R(x), S(x), Y(x)``."""
    out = []
    for a, b, c in combinations(range(R.n), 3):
        rows = [(F[a], F[b], F[c]) for F in (R, S, Y)]
        (r1, r2, r3), (s1, s2, s3), (y1, y2, y3) = rows
        det = r1 * (s2 * y3 - s3 * y2) - r2 * (s1 * y3 - s3 * y1) + r3 * (s1 * y2 - s2 * y1)
        out.append(det)
    return out


def pullback(form: AltForm, images: Sequence[Poly]) -> AltForm:
    """Pull ``form`` back along ``x_i = images[i](x')`` (Laurent images allowed)."""
    n = form.n
    if len(images) != n:
        raise DimensionMismatch("need one image per coordinate")
    m = images[0].n
    differentials = [AltForm.one_form([phi.diff(l) for l in range(m)]) for phi in images]
    basis_cache: dict = {}
    out = AltForm(m, form.grade)
    for I, f in form.coeffs.items():
        if I not in basis_cache:
            acc = AltForm.function(Poly.const(m, 1))
            for i in I:
                acc = wedge(acc, differentials[i])
            basis_cache[I] = acc
        out = out + basis_cache[I] * f.substitute(images)
    return out
