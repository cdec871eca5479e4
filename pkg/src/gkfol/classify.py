"""Enumeration of GK components.

Closed-form case analyses for three and four weights, the exceptional family
for any ``n``, condition chains for general ``n``, canonical forms under the
bar involution and comparison against stored tables.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import reduce
from importlib import resources
from itertools import product
from typing import Iterable, Sequence

from .exceptions import InvalidWeights, ParseError, UnsupportedN
from .gkcheck import (
    DEFAULT_ATTEMPTS,
    DEFAULT_BOUND,
    GKCertificate,
    certify_gk,
    exceptional_weights,
    m1_integral,
)
from .w0space import dim_component, w0_basis
from .weights import ParamSet, WeightVector, bar_involution, check_condition, derive_params

CASE_TAGS = ("B1a", "B1b", "B1c", "B1d", "B2a", "B2b", "B2c", "B2d", "Exceptional", "ChainSearch")


# ---------------------------------------------------------------- chains


@dataclass(frozen=True)
class ConditionChain:
    kind: str
    i: int
    n: int
    conditions: tuple[tuple[int, int], ...]
    equality: str | None
    nonzero_taus: tuple[int, ...]

    def __str__(self):
        parts = [f"c{a}{b}" for a, b in self.conditions]
        if self.equality:
            parts.insert(self.i - 2, self.equality)
        return f"{self.kind}(i={self.i}): " + ", ".join(parts)

    def holds(self, ps: ParamSet) -> bool:
        """Arithmetic conditions and the tau constraints."""
        if ps.n != self.n:
            return False
        if self.kind == "b2" and ps.lam != ps.p[self.i - 1] * (ps.d - 1):
            return False
        if not all(check_condition(ps, a, b) for a, b in self.conditions):
            return False
        return all(ps.tau_at(j) != 0 for j in self.nonzero_taus)

    def holds_raw(self, p: Sequence[int], lam: int, d: int) -> bool:
        """``holds`` on plain integers, for sweeps."""
        n = self.n
        at = lambda k: 0 if k == n + 1 else p[k - 1]
        if self.kind == "b2" and lam != at(self.i) * (d - 1):
            return False
        for i, j in self.conditions:
            if (at(j) if j <= i else at(j + 1)) + lam != at(i + 1) * d:
                return False
        tau = lam + sum(p)
        return all(tau != at(j) * (n + d) for j in self.nonzero_taus)

    def solve(self, p1: int, lam: int, d: int) -> tuple[int, ...] | None:
        """Weights forced by the chain from ``p_1`` and ``lam`` (integers only), or ``None``."""
        n = self.n
        p: list = [None] * (n + 2)
        p[1], p[n + 1] = p1, 0
        forward = self.i if self.kind == "b1" else self.i - 2
        for k in range(1, forward + 1):
            q, r = divmod(p[k] + lam, d)
            if r:
                return None
            p[k + 1] = q
        start = self.i + 1 if self.kind == "b1" else self.i
        for k in range(n - 1, start - 1, -1):
            q, r = divmod(p[k + 2] + lam, d)
            if r:
                return None
            p[k + 1] = q
        if self.kind == "b2":
            if d < 2:
                return None
            q, r = divmod(lam, d - 1)
            if r:
                return None
            p[self.i] = q
        return tuple(p[1 : n + 1])


def condition_chains(n: int) -> list[ConditionChain]:
    if n < 3:
        raise UnsupportedN("condition chains need n >= 3")
    out = []
    for i in range(0, (n - 1) // 2 + 1):
        conds = [(k, k) for k in range(1, i + 1)] + [(k, k + 1) for k in range(i + 1, n)]
        out.append(ConditionChain("b1", i, n, tuple(conds), None, tuple(range(2, n + 1))))
    for i in range(2, (n + 2) // 2 + 1):
        conds = [(k, k) for k in range(1, i - 1)] + [(k, k + 1) for k in range(i, n)]
        taus = tuple(j for j in range(2, n + 1) if j != i)
        out.append(ConditionChain("b2", i, n, tuple(conds), f"lam=p{i}(d-1)", taus))
    return out


def satisfied_chains(ps: ParamSet) -> list[ConditionChain]:
    return [c for c in condition_chains(ps.n) if c.holds(ps)]


def chain_diagnosis(ps: ParamSet) -> str:
    """Which chains hold for ``ps`` or its bar, as readable text."""
    lines = []
    for label, q in (("", ps), ("bar ", bar_involution(ps) if _valid_bar(ps) else None)):
        if q is None:
            lines.append(f"{label}representative: not a valid weight vector")
            continue
        held = [str(c) for c in satisfied_chains(q)]
        lines.append(f"{label}representative {q}: " + ("; ".join(held) if held else "no condition chain holds"))
    return "\n".join(lines)


def _valid_bar(ps: ParamSet) -> bool:
    pb = ps.p_bar
    return all(x > 0 for x in pb) and all(a > b for a, b in zip(pb, pb[1:])) and reduce(math.gcd, pb) == 1


# ---------------------------------------------------------------- descriptors


@dataclass
class ComponentDescriptor:
    n: int
    d: int
    weights: WeightVector
    lam: int
    case_tag: str
    case_params: dict = field(default_factory=dict)
    dimension: int | None = None
    certificate: GKCertificate | None = None
    certified: bool | None = None
    metadata: str = ""

    def __post_init__(self):
        if not isinstance(self.weights, WeightVector):
            self.weights = WeightVector(tuple(self.weights))
        if self.case_tag not in CASE_TAGS:
            raise ValueError(f"unknown case tag {self.case_tag}")
        if not self.metadata:
            self.metadata = f"O ⊕ O({1 - self.d})"
        if self.certificate is not None:
            c = self.certificate.ps
            if (c.p, c.lam, c.d) != (self.weights.p, self.lam, self.d):
                raise ValueError("certificate does not match the descriptor")

    @property
    def params(self) -> ParamSet:
        return derive_params(self.weights, self.lam, self.d)

    def key(self) -> tuple:
        return (self.weights.p, self.lam, self.d)

    def row(self) -> tuple[int, ...]:
        return self.weights.p + (self.lam,)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "weights": list(self.weights.p),
            "lambda": self.lam,
            "case_tag": self.case_tag,
            "case_params": dict(self.case_params),
            "dimension": self.dimension,
            "certified": self.certified,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ComponentDescriptor":
        cert = data.get("certificate")
        return cls(
            int(data["n"]),
            int(data["d"]),
            WeightVector(tuple(data["weights"])),
            int(data["lambda"]),
            data["case_tag"],
            dict(data.get("case_params") or {}),
            data.get("dimension"),
            GKCertificate.from_dict(cert) if cert else None,
            data.get("certified"),
            data.get("metadata", ""),
        )

    def __eq__(self, other):
        return isinstance(other, ComponentDescriptor) and self.to_dict() == other.to_dict()


def _canonical_key(p: Sequence[int], lam: int) -> tuple:
    return (lam <= 0, tuple(p), lam)


def canonical_pair(weights: Sequence[int], lam: int, d: int) -> tuple[tuple[int, ...], int]:
    """Representative of ``{(P, lam), (P_bar, lam_1)}``: positive lambda first, then smaller weights."""
    ps = derive_params(weights, lam, d)
    options = [(ps.p, ps.lam)]
    if _valid_bar(ps):
        options.append((ps.p_bar, ps.lambda_at(1)))
    return min(options, key=lambda t: _canonical_key(*t))


def canonical_form(desc: ComponentDescriptor) -> ComponentDescriptor:
    p, lam = canonical_pair(desc.weights.p, desc.lam, desc.d)
    if (p, lam) == (desc.weights.p, desc.lam):
        return desc
    return replace(desc, weights=WeightVector(p), lam=lam, certificate=None, certified=None)


# ---------------------------------------------------------------- closed forms


def divisors(k: int) -> list[int]:
    k = abs(k)
    if k == 0:
        return []
    small = [i for i in range(1, math.isqrt(k) + 1) if k % i == 0]
    return sorted(set(small + [k // i for i in small]))


def _divisors_of(*values: int) -> list[int]:
    return sorted({x for v in values for x in divisors(v)})


def _admissible(weights: Sequence[int]) -> bool:
    return (
        all(w > 0 for w in weights)
        and all(a > b for a, b in zip(weights, weights[1:]))
        and reduce(math.gcd, weights) == 1
    )


def _cases_n3(d: int) -> Iterable[tuple[str, dict, tuple[int, ...], int]]:
    # (a): q = m(d+1), r = md, lam = m d^2, p | d^2 or p | d^2+d+1
    for p in _divisors_of(d * d, d * d + d + 1):
        for m in range(1, p):
            q, r = m * (d + 1), m * d
            if q >= p:
                break
            if math.gcd(p, m) == 1:
                yield "B1a", {"m": m, "p": p}, (p, q, r), m * d * d
    # (b): p = d, q = r + 1, lam = d r
    for r in range(1, d - 1):
        yield "B1b", {"r": r}, (d, r + 1, r), d * r
    # (c): p = kd, q = md + k, r = md, lam = m d^2, k | d+1
    for k in divisors(d + 1):
        for m in range(1, k):
            if k * d <= m * d + k:
                break
            if math.gcd(k, m) == 1:
                yield "B1c", {"k": k, "m": m}, (k * d, m * d + k, m * d), m * d * d
    # (d): q = md, r = m(d-1), lam = m(d^2-d), p | d^2-d or d^2 or d^2-1
    for p in _divisors_of(d * d - d, d * d, d * d - 1):
        for m in range(1, p):
            q, r = m * d, m * (d - 1)
            if q >= p:
                break
            if math.gcd(p, m) == 1:
                yield "B1d", {"m": m, "p": p}, (p, q, r), m * (d * d - d)


def _case_b2b_ok(k: int, m: int, d: int) -> bool:
    if d % k == 0:
        return True
    if (m * (d * d + d) + k) % (k * d) == 0:
        return True
    if m % d == 0 and (d * d + d + 1) % k == 0:
        return True
    return (d + 1) % k == 0 and math.gcd(m * (d + 1) // k, d) == 1


def _cases_n4(d: int) -> Iterable[tuple[str, dict, tuple[int, ...], int]]:
    # (a)
    for p in _divisors_of(d**3, d**3 + d * d + d + 1):
        for m in range(1, p):
            q = m * (d * d + d + 1)
            if q >= p:
                break
            if math.gcd(p, m) == 1:
                yield "B2a", {"m": m, "p": p}, (p, q, m * (d * d + d), m * d * d), m * d**3
    # (b): k ranges over the divisors named by the four sub-conditions
    ks = set(divisors(d)) | {j * d for j in divisors(d + 1)} | set(divisors(d * d + d + 1)) | set(divisors(d + 1))
    for k in sorted(ks):
        for m in range(1, k):
            if k * d <= m * d + k:
                break
            if math.gcd(k, m) == 1 and _case_b2b_ok(k, m, d):
                yield "B2b", {"k": k, "m": m}, (k * d, m * d + k, m * (d + 1), m * d), m * d * d
    # (c)
    for p in _divisors_of(d**3 - d * d, d**3, d**3 - 1):
        for m in range(1, p):
            q = m * d * d
            if q >= p:
                break
            if math.gcd(p, m) == 1:
                yield "B2c", {"m": m, "p": p}, (p, q, m * (d * d - 1), m * (d * d - d)), m * (d**3 - d * d)
    # (d)
    ks = set(divisors(d - 1)) | set(divisors(d)) | set(divisors(d * d - 1))
    for k in sorted(ks):
        for m in range(1, k):
            if k * d <= m * (d - 1) + k:
                break
            if math.gcd(k, m) != 1:
                continue
            if (d - 1) % k == 0 or d % k == 0 or (m % d == 0 and (d * d - 1) % k == 0):
                yield "B2d", {"k": k, "m": m}, (k * d, m * (d - 1) + k, m * d, m * (d - 1)), m * (d * d - d)


_CASE_CHAIN = {
    "B1a": ("b1", 0), "B1b": ("b1", 1), "B1c": ("b1", 1), "B1d": ("b2", 2),
    "B2a": ("b1", 0), "B2b": ("b1", 1), "B2c": ("b2", 2), "B2d": ("b2", 3),
}


def case_chain(tag: str, n: int) -> ConditionChain | None:
    spec = _CASE_CHAIN.get(tag)
    if spec is None:
        return None
    return next(c for c in condition_chains(n) if (c.kind, c.i) == spec)


def _describe(
    ps: ParamSet,
    tag: str,
    params: dict,
    certify: bool,
    attempts: int,
    bound: int,
    seed: int,
    budget: int | None,
) -> ComponentDescriptor:
    basis = w0_basis(ps)
    dim = dim_component(ps, basis) if basis.dim else None
    cert = None
    if certify:
        cert = certify_gk(ps, attempts, bound, seed, budget)
    return ComponentDescriptor(
        ps.n, ps.d, ps.weights, ps.lam, tag, params, dim, cert, (cert is not None) if certify else None
    )


def enumerate_components(
    n: int,
    d: int,
    certify: bool = False,
    attempts: int = DEFAULT_ATTEMPTS,
    bound: int = DEFAULT_BOUND,
    seed: int = 0,
    budget: int | None = None,
) -> list[ComponentDescriptor]:
    """Components from the closed-form cases, one per bar-orbit, sorted descending."""
    if n not in (3, 4):
        raise UnsupportedN(f"closed forms exist for n = 3 and n = 4, not n = {n}")
    if d < 2:
        raise ValueError("closed forms need d >= 2; use exceptional_family for d = 1")
    seen: dict[tuple, tuple] = {}
    for tag, params, weights, lam in (_cases_n3(d) if n == 3 else _cases_n4(d)):
        if not _admissible(weights):
            continue
        ps = derive_params(weights, lam, d)
        chain = case_chain(tag, n)
        if not (chain.holds(ps) or (_valid_bar(ps) and chain.holds(bar_involution(ps)))):
            continue
        key = canonical_pair(weights, lam, d)
        if key not in seen:
            seen[key] = (ps, tag, params)
    out = [
        _describe(ps, tag, params, certify, attempts, bound, seed, budget)
        for ps, tag, params in seen.values()
    ]
    out.sort(key=lambda c: c.row(), reverse=True)
    return out


def exceptional_family(
    n: int,
    d: int,
    certify: bool = True,
    attempts: int = DEFAULT_ATTEMPTS,
    bound: int = DEFAULT_BOUND,
    seed: int = 0,
    budget: int | None = None,
) -> ComponentDescriptor:
    """Weights ``r_i = d^{i-1} + ... + d^{n-1}`` with ``lam = d^n``."""
    if n < 3 or d < 1:
        raise ValueError("need n >= 3 and d >= 1")
    ps = derive_params(exceptional_weights(n, d), d**n, d)
    return _describe(ps, "Exceptional", {"n": n}, certify, attempts, bound, seed, budget)


def claim46_solutions(n: int, d: int, k: int) -> list[tuple[int, ...]]:
    """Exponents ``b >= 0`` with ``sum b_j r_j = r_k + lam`` and ``|b| <= d``."""
    if n < 3 or d < 1 or not 1 <= k <= n:
        raise ValueError("need n >= 3, d >= 1 and 1 <= k <= n")
    r = exceptional_weights(n, d)
    target = r[k - 1] + d**n
    out: list[tuple[int, ...]] = []

    def rec(j, remaining, cap, prefix):
        if j == n:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for b in range(min(cap, remaining // r[j]) + 1):
            rec(j + 1, remaining - b * r[j], cap - b, prefix + [b])

    rec(0, target, d, [])
    return sorted(out)


def search_general_n(
    n: int,
    d: int,
    max_p1: int,
    certify: bool = True,
    attempts: int = DEFAULT_ATTEMPTS,
    bound: int = DEFAULT_BOUND,
    seed: int = 0,
    budget: int | None = None,
) -> list[ComponentDescriptor]:
    """Chain solutions with ``p_1 <= max_p1`` that pass the arithmetic filters and certify."""
    if n < 3 or d < 1:
        raise ValueError("need n >= 3 and d >= 1")
    found: dict[tuple, ParamSet] = {}
    for p1 in range(1, max_p1 + 1):
        for lam in range(1, (d + 1) * p1 + 1):
            for chain in condition_chains(n):
                weights = chain.solve(p1, lam, d)
                if weights is None or not _admissible(weights):
                    continue
                ps = derive_params(weights, lam, d)
                if not passes_filters(ps, chain):
                    continue
                key = canonical_pair(weights, lam, d)
                found.setdefault(key, ps)
    out = []
    for ps in found.values():
        desc = _describe(ps, "ChainSearch", {"chains": [str(c) for c in satisfied_chains(ps)]}, certify, attempts, bound, seed, budget)
        if not certify or desc.certified:
            out.append(desc)
    out.sort(key=lambda c: c.row(), reverse=True)
    return out


def passes_filters(ps: ParamSet, chain: ConditionChain) -> bool:
    """Chain, tau, divisibility of some ``p_k + lam`` by ``p_1`` and an integral Milnor number."""
    if not chain.holds(ps):
        return False
    if not any((pk + ps.lam) % ps.p[0] == 0 for pk in ps.p):
        return False
    return m1_integral(ps.p, ps.lam)


def brute_force_components(
    n: int,
    d: int,
    max_p1: int,
    certify: bool = True,
    attempts: int = DEFAULT_ATTEMPTS,
    bound: int = DEFAULT_BOUND,
    seed: int = 0,
    budget: int | None = None,
) -> set[tuple[tuple[int, ...], int]]:
    """Canonical pairs found by scanning every admissible weight vector and every ``lam`` in ``[1, p_1 d]``."""
    chains = condition_chains(n)
    hits = set()
    for p1 in range(n, max_p1 + 1):
        for rest in _decreasing(n - 1, p1 - 1):
            weights = (p1,) + rest
            if reduce(math.gcd, weights) != 1:
                continue
            for lam in range(1, p1 * d + 1):
                if not any(c.holds_raw(weights, lam, d) for c in chains):
                    continue
                ps = derive_params(weights, lam, d)
                if not m1_integral(weights, lam):
                    continue
                if certify and certify_gk(ps, attempts, bound, seed, budget) is None:
                    continue
                hits.add(canonical_pair(weights, lam, d))
    return hits


def _decreasing(length: int, top: int):
    if length == 0:
        yield ()
        return
    for first in range(top, length - 1, -1):
        for rest in _decreasing(length - 1, first - 1):
            yield (first,) + rest


def adjacent_weight_hits(qs: Iterable[int], ds: Iterable[int], certify: bool = True) -> list[tuple]:
    """``(q, d, lam)`` with weights ``(q+1, q, 1)`` that satisfy a chain and certify (expected: none)."""
    hits = []
    for q, d in product(qs, ds):
        weights = (q + 1, q, 1)
        for lam in range(1, (d + 1) * (q + 1) + 1):
            ps = derive_params(weights, lam, d)
            if not any(c.holds(ps) for c in condition_chains(3)):
                continue
            if not m1_integral(weights, lam):
                continue
            if certify and certify_gk(ps) is None:
                continue
            hits.append((q, d, lam))
    return hits


# ---------------------------------------------------------------- tables

TABLE_IDS = ("cor48_d2", "cor48_d3", "cor410", "cor411")


def parametrized_rows(d: int) -> list[tuple[int, ...]]:
    """The seven parametrized rows ``(p, q, r, lam)`` at degree parameter ``d``."""
    return [
        (d * d + d + 1, d + 1, 1, -1),
        (d * d + d + 1, d + 1, d, d * d),
        (d * d + d, 2 * d + 1, d, d * d),
        (d * d, d + 1, d, d * d),
        (d * d, d, 1, 0),
        (d * d, d, d - 1, d * d - d),
        (d * d - 1, d, d - 1, d * d - d),
    ]


def parse_table(text: str) -> list[tuple[int, ...]]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append(tuple(int(x) for x in line.split()))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ParseError("rows of different widths")
    return rows


def format_table(rows: Iterable[Sequence[int]], header: str = "") -> str:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    lines += [" ".join(str(x) for x in r) for r in rows]
    return "\n".join(lines) + "\n"


def load_table(table_id: str) -> list[tuple[int, ...]]:
    if table_id not in ("cor48_d2", "cor48_d3", "cor411"):
        raise KeyError(table_id)
    text = resources.files("gkfol").joinpath(f"tables/{table_id}.txt").read_text()
    return parse_table(text)


@dataclass
class TableReport:
    table_id: str
    expected: int
    matched: int
    missing: list[tuple] = field(default_factory=list)
    extra: list[tuple] = field(default_factory=list)
    uncertified: list[tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.missing or self.extra or self.uncertified)

    def summary(self) -> str:
        status = "pass" if self.ok else "FAIL"
        text = f"{self.table_id}: {status}, {self.matched}/{self.expected} matched"
        if self.missing:
            text += f"; missing {self.missing}"
        if self.extra:
            text += f"; extra {self.extra}"
        if self.uncertified:
            text += f"; uncertified {self.uncertified}"
        return text


def _canon_rows(rows: Iterable[Sequence[int]], d: int) -> set:
    return {canonical_pair(r[:-1], r[-1], d) for r in rows}


def verify_table(
    table_id: str,
    certify: bool = True,
    attempts: int = DEFAULT_ATTEMPTS,
    bound: int = DEFAULT_BOUND,
    seed: int = 0,
    budget: int | None = None,
    degrees: Sequence[int] = (2, 3, 4, 5),
) -> TableReport:
    """Compare the enumeration with a stored table, both sides in canonical form."""
    kw = dict(certify=certify, attempts=attempts, bound=bound, seed=seed, budget=budget)
    if table_id == "cor410":
        report = TableReport(table_id, 0, 0)
        for d in degrees:
            comps = enumerate_components(3, d, **kw)
            have = {canonical_pair(c.weights.p, c.lam, d) for c in comps}
            report.uncertified += [c.row() for c in comps if certify and not c.certified]
            for row in parametrized_rows(d):
                report.expected += 1
                key = canonical_pair(row[:-1], row[-1], d)
                if key in have:
                    report.matched += 1
                else:
                    report.missing.append((d,) + row)
        return report
    n, d = {"cor48_d2": (3, 2), "cor48_d3": (3, 3), "cor411": (4, 2)}[table_id]
    expected = load_table(table_id)
    comps = enumerate_components(n, d, **kw)
    want = _canon_rows(expected, d)
    have = {canonical_pair(c.weights.p, c.lam, d): c for c in comps}
    return TableReport(
        table_id,
        len(want),
        len(want & set(have)),
        sorted(k[0] + (k[1],) for k in want - set(have)),
        sorted(k[0] + (k[1],) for k in set(have) - want),
        [c.row() for c in comps if certify and not c.certified],
    )


def parse_weights_arg(text: str) -> WeightVector:
    from .weights import normalize_weights

    try:
        raw = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InvalidWeights(f"cannot parse weights {text!r}") from None
    return normalize_weights(raw)
