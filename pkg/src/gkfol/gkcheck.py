"""Certification that a family contains a generalized Kupka foliation.

A certificate is one witness ``Y`` in ``W_0`` together with evidence that

* the origin of the base chart is an isolated zero of ``Y`` (zero-dimensional
  standard basis; by the weighted scaling action the zero set is the origin),
* ``omega_Y`` has no divisorial singular set and the expected degree,
* every other chart origin ``q_i`` (``i >= 2``) is Kupka, except possibly one
  chart with ``lam = p_i (d - 1)`` where ``DY_i(0)`` must be invertible.

The set of good witnesses is Zariski open in ``W_0``, so one witness certifies
the whole family; failure to find one is inconclusive.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from . import linalg
from .charts import base_form, chart_transform
from .exceptions import BudgetExceeded, ChartOutOfRange, GKError
from .fields import VectorField, evaluate, jacobian_at_zero, quasi_weight
from .groebner import groebner_basis
from .mvgcd import gcd_all
from .render import parse_field, render_field
from .w0space import W0Basis, random_coordinates, w0_basis
from .weights import ParamSet, derive_params, milnor_number

DEFAULT_ATTEMPTS = 16
DEFAULT_BOUND = 5


class Classification(str, enum.Enum):
    KUPKA = "Kupka"
    ISOLATED_INVERTIBLE = "IsolatedInvertible"
    ISOLATED_NILPOTENT = "IsolatedNilpotentJacobian"
    UNKNOWN = "NonIsolatedOrUnknown"


@dataclass(frozen=True)
class KupkaStatus:
    chart: int
    value_at_origin: tuple[Fraction, ...]
    jacobian: tuple[tuple[Fraction, ...], ...]
    classification: Classification

    def to_dict(self) -> dict:
        return {
            "chart": self.chart,
            "value_at_origin": [str(v) for v in self.value_at_origin],
            "jacobian": [[str(v) for v in row] for row in self.jacobian],
            "classification": self.classification.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "KupkaStatus":
        return cls(
            int(data["chart"]),
            tuple(Fraction(v) for v in data["value_at_origin"]),
            tuple(tuple(Fraction(v) for v in row) for row in data["jacobian"]),
            Classification(data["classification"]),
        )


@dataclass(frozen=True)
class Isolation:
    """Verdict of the origin test. ``isolated`` is ``None`` when the budget ran out."""

    isolated: bool | None
    leading: tuple[tuple[int, ...], ...] = ()
    quotient_dim: int | None = None
    steps: int = 0
    reason: str = ""

    def __bool__(self):
        return bool(self.isolated)


def is_isolated_at_origin(Y: VectorField, ps: ParamSet | None = None, budget: int | None = None) -> Isolation:
    """Decide whether the origin is an isolated zero of ``Y``.

    Zero-dimensionality of the ideal of components suffices: the zero set is a
    union of orbits of a scaling action with positive weights, hence a finite
    zero set can only be the origin.
    """
    if ps is not None and Y.n != ps.n:
        raise ValueError("field dimension does not match the weights")
    if Y.is_zero():
        return Isolation(False, reason="zero field")
    if any(evaluate(Y, [0] * Y.n)):
        return Isolation(False, reason="Y(0) != 0")
    try:
        gb = groebner_basis(list(Y), budget)
    except BudgetExceeded as exc:
        return Isolation(None, reason=str(exc))
    if not gb.is_zero_dimensional():
        return Isolation(False, gb.leading, None, gb.steps, "positive-dimensional zero set")
    return Isolation(True, gb.leading, gb.quotient_dimension(), gb.steps, "")


def _det(J) -> Fraction:
    return linalg.determinant(J)


def kupka_data(ps: ParamSet, Y: VectorField, chart: int, budget: int | None = None, probe: bool = True) -> KupkaStatus:
    """Status of the chart origin ``q_chart``.

    With ``probe`` false the (costly) isolation test for a nilpotent jacobian
    is skipped and such charts are reported as unknown.
    """
    if not 2 <= chart <= ps.n:
        raise ChartOutOfRange(f"chart {chart} outside [2, {ps.n}]")
    data = chart_transform(ps, Y, chart)
    value = evaluate(data.Y, [0] * ps.n)
    J = jacobian_at_zero(data.Y)
    if any(value):
        cls = Classification.KUPKA
    elif _det(J):
        cls = Classification.ISOLATED_INVERTIBLE
    elif probe and is_isolated_at_origin(data.Y, None, budget).isolated:
        cls = Classification.ISOLATED_NILPOTENT
    else:
        cls = Classification.UNKNOWN
    return KupkaStatus(chart, value, J, cls)


def gamma_check(ps: ParamSet, Y: VectorField) -> bool:
    """``omega_Y`` has coprime coefficients and the full degree at infinity."""
    if Y.is_zero():
        raise ValueError("gamma_check needs a nonzero field")
    omega = base_form(ps, Y)
    g = gcd_all(c for c in omega.coeffs.values() if not c.is_zero())
    if g is None or not g.is_constant():
        return False
    return chart_transform(ps, Y, 1).pole_order == ps.d + ps.n


def m1_integral(w: Sequence[int], lam: int) -> bool:
    return milnor_number(w, lam).denominator == 1


def exceptional_chart_candidates(ps: ParamSet) -> list[int]:
    return [i for i in range(2, ps.n + 1) if ps.lam == ps.p[i - 1] * (ps.d - 1)]


@dataclass
class GKCertificate:
    ps: ParamSet
    witness: VectorField
    coordinates: tuple[Fraction, ...]
    origin_leading: tuple[tuple[int, ...], ...]
    quotient_dim: int | None
    chart_status: tuple[KupkaStatus, ...]
    gamma_ok: bool
    exceptional_chart: int | None = None
    source: str = ""

    def to_dict(self) -> dict:
        return {
            "weights": list(self.ps.p),
            "lambda": self.ps.lam,
            "d": self.ps.d,
            "witness": render_field(self.witness),
            "coordinates": [str(c) for c in self.coordinates],
            "origin_leading": [list(e) for e in self.origin_leading],
            "quotient_dim": self.quotient_dim,
            "chart_status": [s.to_dict() for s in self.chart_status],
            "gamma_ok": self.gamma_ok,
            "exceptional_chart": self.exceptional_chart,
            "source": self.source,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GKCertificate":
        ps = derive_params(data["weights"], int(data["lambda"]), int(data["d"]))
        return cls(
            ps,
            parse_field(data["witness"], ps.n),
            tuple(Fraction(c) for c in data["coordinates"]),
            tuple(tuple(e) for e in data["origin_leading"]),
            data["quotient_dim"],
            tuple(KupkaStatus.from_dict(s) for s in data["chart_status"]),
            bool(data["gamma_ok"]),
            data["exceptional_chart"],
            data.get("source", ""),
        )

    def __eq__(self, other):
        return isinstance(other, GKCertificate) and self.to_dict() == other.to_dict()


@dataclass
class ReplayReport:
    ok: bool
    problems: list[str] = field(default_factory=list)


def replay(cert: GKCertificate, budget: int | None = None) -> ReplayReport:
    """Recompute every verdict stored in ``cert``."""
    try:
        return _replay(cert, budget)
    except GKError as exc:
        return ReplayReport(False, [f"{type(exc).__name__}: {exc}"])


def _replay(cert: GKCertificate, budget: int | None) -> ReplayReport:
    ps, Y = cert.ps, cert.witness
    problems = []
    if Y.n != ps.n or Y.is_zero():
        return ReplayReport(False, ["witness has the wrong shape"])
    basis = w0_basis(ps)
    coords = basis.coordinates(Y)
    if coords is None:
        problems.append("witness is not in W_0")
    elif tuple(coords) != tuple(cert.coordinates):
        problems.append("stored coordinates differ")
    iso = is_isolated_at_origin(Y, ps, budget)
    if iso.isolated is not True:
        problems.append(f"origin not certified isolated ({iso.reason})")
    elif iso.leading != cert.origin_leading or iso.quotient_dim != cert.quotient_dim:
        problems.append("staircase differs")
    if not cert.gamma_ok or not gamma_check(ps, Y):
        problems.append("gamma check fails")
    statuses = tuple(kupka_data(ps, Y, i, budget, probe=False) for i in range(2, ps.n + 1))
    if statuses != cert.chart_status:
        problems.append("chart verdicts differ")
    verdict = _chart_verdict(ps, statuses)
    if verdict is False or verdict != cert.exceptional_chart:
        problems.append("chart verdicts do not meet the GK conditions")
    return ReplayReport(not problems, problems)


def _chart_verdict(ps: ParamSet, statuses: Sequence[KupkaStatus]):
    """``None`` if all charts are Kupka, the exceptional chart index, or ``False``."""
    special = None
    for s in statuses:
        if s.classification is Classification.KUPKA:
            if ps.tau_at(s.chart) == 0:
                return False
            continue
        if (
            s.classification is Classification.ISOLATED_INVERTIBLE
            and special is None
            and s.chart in exceptional_chart_candidates(ps)
        ):
            special = s.chart
            continue
        return False
    return special


# ---------------------------------------------------------------- witnesses


def _mono(n, *pairs):
    e = [0] * n
    for i, k in pairs:
        e[i] += k
    return tuple(e)


def _sr_part(ps: ParamSet) -> dict:
    """Slots of ``x_n^d (tau R - (n + d) S)``."""
    n, d = ps.n, ps.d
    out = {}
    for k in range(n):
        c = ps.tau - (n + d) * ps.p[k]
        if c:
            key = (k, _mono(n, (k, 1), (n - 1, d)))
            out[key] = out.get(key, 0) + c
    return out


def exceptional_weights(n: int, d: int) -> tuple[int, ...]:
    return tuple(sum(d**j for j in range(i - 1, n)) for i in range(1, n + 1))


def exceptional_witness(ps: ParamSet) -> VectorField | None:
    n, d = ps.n, ps.d
    if ps.p != exceptional_weights(n, d) or ps.lam != d**n:
        return None
    terms = _sr_part(ps)
    for k in range(1, n):
        key = (k, _mono(n, (k - 1, d)))
        terms[key] = terms.get(key, 0) + 1
    return VectorField.from_terms(n, terms)


def case4_witness(ps: ParamSet) -> VectorField | None:
    """Sparse witness for n = 4 families with ``c_11, c_23, c_34``."""
    if ps.n != 4:
        return None
    (p, q, r, s), lam, d = ps.p, ps.lam, ps.d
    if (s + lam) % p:
        return None
    l = (s + lam) // p
    ab = [(a, b) for a in range(1, d + 1) for b in range(0, d + 1 - a) if a * p + b * r == q + lam]
    if not ab:
        return None
    a, b = ab[0]
    terms = _sr_part(ps)
    for key in [(0, _mono(4, (1, d))), (1, _mono(4, (0, a), (2, b))), (3, _mono(4, (0, l))), (3, _mono(4, (2, d)))]:
        terms[key] = terms.get(key, 0) + 1
    return VectorField.from_terms(4, terms)


def case5_witness(ps: ParamSet, rng: random.Random, bound: int) -> VectorField | None:
    """Witness for n = 4 families with ``lam = q (d - 1)``, ``c_23``, ``c_34``; free coefficients drawn from ``rng``."""
    if ps.n != 4:
        return None
    p, lam, d = ps.p[0], ps.lam, ps.d
    if (p + lam) % p or d < 2:
        return None
    l = (p + lam) // p
    if not 1 < l <= d + 1:
        return None
    a, a1, b, b1, c, c1 = (rng.randint(-bound, bound) for _ in range(6))
    e = -(l * a + b + c)
    e1 = -(a1 + d * b1 + c1)
    terms = _sr_part(ps)
    for k, (u, v) in enumerate([(a, a1), (b, b1), (c, c1), (e, e1)]):
        for coef, mono in [(u, (0, l - 1)), (v, (1, d - 1))]:
            key = (k, _mono(4, (k, 1), mono))
            terms[key] = terms.get(key, 0) + coef
    terms[(3, _mono(4, (2, d)))] = terms.get((3, _mono(4, (2, d))), 0) + 1
    return VectorField.from_terms(4, terms)


def _candidates(ps: ParamSet, basis: W0Basis, attempts: int, bound: int, seed: int) -> Iterator[tuple[str, VectorField]]:
    Y = exceptional_witness(ps)
    if Y is not None:
        yield "exceptional", Y
    Y = case4_witness(ps)
    if Y is not None:
        yield "sparse-b1", Y
    rng = random.Random(f"template:{seed}")
    for k in range(2):
        Y = case5_witness(ps, rng, bound)
        if Y is not None:
            yield f"sparse-b2:{k}", Y
    for k in range(attempts):
        coords = random_coordinates(basis.dim, bound * 2 ** (k // 4), hash_seed(seed, k))
        yield f"random:{seed}:{k}", basis.field(coords)


def hash_seed(seed: int, k: int) -> int:
    return seed * 1_000_003 + k


def axis_obstruction(ps: ParamSet, basis: W0Basis) -> int | None:
    """First ``k`` (1-based) whose coordinate axis lies in the zero set of every ``Y`` in ``W_0``."""
    support = basis.support()
    for k in range(ps.n):
        if not any(sum(e) == e[k] for _, e in support):
            return k + 1
    return None


@dataclass
class SearchOutcome:
    certificate: GKCertificate | None
    diagnostic: str
    tried: int = 0
    unknown: int = 0


def _try(ps: ParamSet, basis: W0Basis, Y: VectorField, source: str, budget: int | None):
    """Certificate for ``Y`` or a short reason for rejecting it."""
    if Y.is_zero():
        return None, "zero witness"
    coords = basis.coordinates(Y)
    if coords is None:
        return None, "template outside W_0"
    statuses = tuple(kupka_data(ps, Y, i, budget, probe=False) for i in range(2, ps.n + 1))
    verdict = _chart_verdict(ps, statuses)
    if verdict is False:
        return None, "chart origins fail the Kupka conditions"
    if not gamma_check(ps, Y):
        return None, "divisorial singular set or degree drop"
    iso = is_isolated_at_origin(Y, ps, budget)
    if iso.isolated is None:
        return None, "unknown: " + iso.reason
    if not iso.isolated:
        return None, "origin not isolated"
    cert = GKCertificate(ps, Y, tuple(coords), iso.leading, iso.quotient_dim, statuses, True, verdict, source)
    return cert, ""


def search_certificate(
    ps: ParamSet,
    attempts: int = DEFAULT_ATTEMPTS,
    bound: int = DEFAULT_BOUND,
    seed: int = 0,
    budget: int | None = None,
    basis: W0Basis | None = None,
) -> SearchOutcome:
    """Look for a certificate; the diagnostic explains a failure."""
    if attempts < 0 or bound < 1:
        raise ValueError("attempts must be >= 0 and bound >= 1")
    if ps.lam <= 0:
        return SearchOutcome(None, "lambda <= 0: the origin cannot be an isolated zero")
    if not m1_integral(ps.p, ps.lam):
        return SearchOutcome(None, "non-integer Milnor bound")
    basis = basis if basis is not None else w0_basis(ps)
    if basis.dim == 0:
        return SearchOutcome(None, "W_0 is zero")
    k = axis_obstruction(ps, basis)
    if k is not None:
        return SearchOutcome(None, f"the x{k} axis is contained in the zero set of every element")
    tried = unknown = 0
    reasons: dict[str, int] = {}
    for source, Y in _candidates(ps, basis, attempts, bound, seed):
        tried += 1
        cert, why = _try(ps, basis, Y, source, budget)
        if cert is not None:
            return SearchOutcome(cert, "certified", tried, unknown)
        unknown += why.startswith("unknown")
        reasons[why] = reasons.get(why, 0) + 1
    summary = "; ".join(f"{r} ({c})" for r, c in sorted(reasons.items()))
    return SearchOutcome(None, f"no witness after {tried} candidates: {summary}", tried, unknown)


def certify_gk(
    ps: ParamSet,
    attempts: int = DEFAULT_ATTEMPTS,
    bound: int = DEFAULT_BOUND,
    seed: int = 0,
    budget: int | None = None,
) -> GKCertificate | None:
    return search_certificate(ps, attempts, bound, seed, budget).certificate


def bracket_contract_holds(cert: GKCertificate) -> bool:
    """``[S_i, Y_i] = lam_i Y_i`` in every chart for the stored witness."""
    ps = cert.ps
    for i in range(1, ps.n + 1):
        data = chart_transform(ps, cert.witness, i)
        if data.Y.is_zero():
            continue
        try:
            if quasi_weight(data.S, data.Y) != data.lam:
                return False
        except GKError:
            return False
    return True
