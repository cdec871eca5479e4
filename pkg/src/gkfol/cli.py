"""Command line interface: ``gkfol <command> [options]``.

Exit codes: 0 success, 1 verification mismatch or no certificate, 2 invalid input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import groebner
from .classify import (
    TABLE_IDS,
    ComponentDescriptor,
    chain_diagnosis,
    condition_chains,
    enumerate_components,
    exceptional_family,
    parse_weights_arg,
    satisfied_chains,
    verify_table,
)
from .exceptions import EmptyFamily, GKError
from .gkcheck import DEFAULT_ATTEMPTS, DEFAULT_BOUND, GKCertificate, replay, search_certificate
from .render import render_field, render_rational
from .w0space import dim_component, w0_basis
from .weights import bar_involution, derive_params, milnor_number


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    attempts: int = DEFAULT_ATTEMPTS
    coeff_bound: int = DEFAULT_BOUND
    step_budget: int = groebner.DEFAULT_BUDGET
    format: str = "table"

    def header(self) -> str:
        return f"seed={self.seed} attempts={self.attempts} bound={self.coeff_bound} budget={self.step_budget}"

    def to_dict(self) -> dict:
        return {"seed": self.seed, "attempts": self.attempts, "bound": self.coeff_bound, "budget": self.step_budget}


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gkfol", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def family(p):
        p.add_argument("-w", "--weights", required=True, help="comma separated weights, any order")
        p.add_argument("-l", "--lambda", dest="lam", type=int, required=True)
        p.add_argument("-d", "--degree", type=_positive, required=True)

    def fmt(p):
        p.add_argument("--format", choices=("table", "json", "csv"), default="table")

    def search(p):
        p.add_argument("--seed", type=_nonnegative, default=0)
        p.add_argument("--attempts", type=_nonnegative, default=DEFAULT_ATTEMPTS)
        p.add_argument("--bound", type=_positive, default=DEFAULT_BOUND)
        p.add_argument("--budget", type=_positive, default=groebner.DEFAULT_BUDGET)

    p = sub.add_parser("params", help="derived parameters of a family")
    family(p), fmt(p)
    p = sub.add_parser("w0", help="basis of W_0")
    family(p), fmt(p)
    p = sub.add_parser("dim", help="dimension of the family closure")
    family(p), fmt(p)
    p = sub.add_parser("check", help="search for a GK certificate")
    family(p), fmt(p), search(p)
    p.add_argument("-o", "--output", help="write the certificate as JSON to this file")
    p = sub.add_parser("enumerate", help="closed-form enumeration for n = 3, 4")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-d", "--degree", type=int, required=True)
    p.add_argument("--certify", action="store_true")
    fmt(p), search(p)
    p = sub.add_parser("exceptional", help="the exceptional family")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-d", "--degree", type=_positive, required=True)
    fmt(p), search(p)
    p = sub.add_parser("chains", help="condition chains for n weights")
    p.add_argument("-n", type=int, required=True)
    fmt(p)
    p = sub.add_parser("verify", help="check a stored table or replay a certificate")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--table", choices=TABLE_IDS + ("all",))
    group.add_argument("--certificate", help="certificate JSON file")
    fmt(p), search(p)
    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        getattr(args, "seed", 0),
        getattr(args, "attempts", DEFAULT_ATTEMPTS),
        getattr(args, "bound", DEFAULT_BOUND),
        getattr(args, "budget", groebner.DEFAULT_BUDGET),
        getattr(args, "format", "table"),
    )


def _ps(args):
    w = parse_weights_arg(args.weights)
    return derive_params(w, args.lam, args.degree)


def _tuple(t) -> str:
    return "(" + ",".join(str(x) for x in t) + ")"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def params_record(ps) -> dict:
    n = ps.n
    rec = {
        "weights": list(ps.p),
        "lambda": ps.lam,
        "d": ps.d,
        "tau": ps.tau,
        "lambdas": [ps.lambda_at(i) for i in range(1, n + 1)],
        "taus": [ps.tau_at(i) for i in range(1, n + 1)],
        "p_bar": list(ps.p_bar),
        "bar": {"weights": list(ps.p_bar), "lambda": ps.lambda_at(1)},
        "milnor_number": render_rational(milnor_number(ps.p, ps.lam)),
        "zero_taus": [i for i in range(2, n + 1) if ps.tau_at(i) == 0],
    }
    return rec


def cmd_params(args, cfg: RunConfig) -> tuple[str, int]:
    ps = _ps(args)
    rec = params_record(ps)
    if cfg.format == "json":
        return _dump(rec), 0
    if cfg.format == "csv":
        rows = [("tau", ps.tau)]
        rows += [(f"lambda_{i}", v) for i, v in enumerate(rec["lambdas"], 1)]
        rows += [(f"tau_{i}", v) for i, v in enumerate(rec["taus"], 1)]
        rows += [(f"p_bar_{i}", v) for i, v in enumerate(rec["p_bar"], 1)]
        rows += [("milnor_number", rec["milnor_number"])]
        return _csv(rows, ("quantity", "value")), 0
    lines = [
        f"family   {_tuple(ps.p)}; lambda = {ps.lam}, d = {ps.d}",
        f"tau      = {ps.tau}",
    ]
    for i, v in enumerate(rec["lambdas"], 1):
        lines.append(f"lambda_{i} = {v}")
    for i, v in enumerate(rec["taus"], 1):
        mark = "   <-- zero" if i >= 2 and v == 0 else ""
        lines.append(f"tau_{i}    = {v}{mark}")
    lines.append(f"p_bar    = {_tuple(ps.p_bar)}")
    lines.append(f"bar pair = {_tuple(ps.p_bar)}; lambda = {ps.lambda_at(1)}")
    lines.append(f"milnor   = {rec['milnor_number']}")
    return "\n".join(lines), 0


def cmd_w0(args, cfg: RunConfig) -> tuple[str, int]:
    ps = _ps(args)
    b = w0_basis(ps)
    fields = [render_field(Y) for Y in b.fields()]
    if cfg.format == "json":
        return _dump({"family": params_record(ps)["weights"], "lambda": ps.lam, "d": ps.d, "dim": b.dim, "basis": fields}), 0
    if cfg.format == "csv":
        return _csv(list(enumerate(fields, 1)), ("index", "field")), 0
    lines = [f"W_0 for {_tuple(ps.p)}; lambda = {ps.lam}, d = {ps.d}: dim {b.dim}"]
    lines += [f"  Y{i} = {f}" for i, f in enumerate(fields, 1)]
    return "\n".join(lines), 0


def cmd_dim(args, cfg: RunConfig) -> tuple[str, int]:
    ps = _ps(args)
    try:
        dim = dim_component(ps)
    except EmptyFamily as exc:
        return f"empty family: {exc}", 1
    if cfg.format == "json":
        return _dump({"weights": list(ps.p), "lambda": ps.lam, "d": ps.d, "dimension": dim}), 0
    if cfg.format == "csv":
        return _csv([(dim,)], ("dimension",)), 0
    return str(dim), 0


def cmd_check(args, cfg: RunConfig) -> tuple[str, int]:
    ps = _ps(args)
    outcome = search_certificate(ps, cfg.attempts, cfg.coeff_bound, cfg.seed, cfg.step_budget)
    chains = [str(c) for c in satisfied_chains(ps)]
    diagnosis = chain_diagnosis(ps)
    cert = outcome.certificate
    if cert is not None and args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(_dump(cert.to_dict()) + "\n")
    code = 0 if cert is not None else 1
    if cfg.format == "json":
        return _dump({
            "config": cfg.to_dict(),
            "weights": list(ps.p),
            "lambda": ps.lam,
            "d": ps.d,
            "chains": chains,
            "diagnostic": outcome.diagnostic,
            "certificate": cert.to_dict() if cert else None,
        }), code
    if cfg.format == "csv":
        row = (",".join(map(str, ps.p)), ps.lam, ps.d, bool(cert), outcome.diagnostic)
        return _csv([row], ("weights", "lambda", "d", "certified", "diagnostic")), code
    lines = [f"# {cfg.header()}", f"family {_tuple(ps.p)}; lambda = {ps.lam}, d = {ps.d}", diagnosis]
    if cert is None:
        lines.append(f"no certificate: {outcome.diagnostic}")
        if not chains and not (satisfied_chains(bar_involution(ps)) if _bar_ok(ps) else []):
            lines.append("chain failure: no b1/b2 condition chain holds for the family or its bar")
    else:
        lines.append(f"certified by {cert.source} witness")
        lines.append(f"  Y = {render_field(cert.witness)}")
        lines.append(f"  quotient dimension at the origin = {cert.quotient_dim}")
        for s in cert.chart_status:
            lines.append(f"  chart {s.chart}: {s.classification.value}")
        if cert.exceptional_chart:
            lines.append(f"  exceptional chart: {cert.exceptional_chart}")
    return "\n".join(lines), code


def _bar_ok(ps) -> bool:
    try:
        derive_params(ps.p_bar, ps.lambda_at(1), ps.d)
    except GKError:
        return False
    return True


def _descriptor_rows(descs: list[ComponentDescriptor], n: int):
    names = ["p", "q", "r", "s"][:n] if n <= 4 else [f"p{i}" for i in range(1, n + 1)]
    header = names + ["lambda", "case", "dimension", "certified"]
    rows = [list(c.row()) + [c.case_tag, c.dimension, "" if c.certified is None else str(c.certified).lower()] for c in descs]
    return header, rows


def _render_descriptors(descs, n, cfg: RunConfig, title: str) -> str:
    if cfg.format == "json":
        return _dump({"config": cfg.to_dict(), "components": [c.to_dict() for c in descs]})
    header, rows = _descriptor_rows(descs, n)
    if cfg.format == "csv":
        return _csv(rows, header)
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    line = lambda r: "| " + " | ".join(str(x).rjust(w) for x, w in zip(r, widths)) + " |"
    out = [f"# {cfg.header()}", title, line(header), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    out += [line(r) for r in rows]
    return "\n".join(out)


def cmd_enumerate(args, cfg: RunConfig) -> tuple[str, int]:
    descs = enumerate_components(args.n, args.degree, args.certify, cfg.attempts, cfg.coeff_bound, cfg.seed, cfg.step_budget)
    code = 1 if args.certify and not all(c.certified for c in descs) else 0
    title = f"{len(descs)} components, n = {args.n}, d = {args.degree}"
    return _render_descriptors(descs, args.n, cfg, title), code


def cmd_exceptional(args, cfg: RunConfig) -> tuple[str, int]:
    desc = exceptional_family(args.n, args.degree, True, cfg.attempts, cfg.coeff_bound, cfg.seed, cfg.step_budget)
    text = _render_descriptors([desc], args.n, cfg, f"exceptional family, n = {args.n}, d = {args.degree}")
    if cfg.format == "table" and desc.certificate:
        text += f"\nwitness: {render_field(desc.certificate.witness)}"
    return text, 0 if desc.certified else 1


def cmd_chains(args, cfg: RunConfig) -> tuple[str, int]:
    chains = condition_chains(args.n)
    recs = [
        {
            "kind": c.kind,
            "i": c.i,
            "conditions": [f"c{a}{b}" for a, b in c.conditions],
            "equality": c.equality,
            "nonzero_taus": list(c.nonzero_taus),
        }
        for c in chains
    ]
    if cfg.format == "json":
        return _dump(recs), 0
    if cfg.format == "csv":
        rows = [(r["kind"], r["i"], " ".join(r["conditions"]), r["equality"] or "", " ".join(map(str, r["nonzero_taus"]))) for r in recs]
        return _csv(rows, ("kind", "i", "conditions", "equality", "nonzero_taus")), 0
    return "\n".join(f"{c}; tau_j != 0 for j in {list(c.nonzero_taus)}" for c in chains), 0


def cmd_verify(args, cfg: RunConfig) -> tuple[str, int]:
    if args.certificate:
        try:
            with open(args.certificate, encoding="utf-8") as fh:
                cert = GKCertificate.from_dict(json.load(fh))
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read certificate: {exc}") from None
        report = replay(cert, cfg.step_budget)
        if cfg.format == "json":
            return _dump({"ok": report.ok, "problems": report.problems}), 0 if report.ok else 1
        text = "certificate replay: " + ("pass" if report.ok else "FAIL\n  " + "\n  ".join(report.problems))
        return text, 0 if report.ok else 1
    ids = TABLE_IDS if args.table == "all" else (args.table,)
    reports = [verify_table(t, True, cfg.attempts, cfg.coeff_bound, cfg.seed, cfg.step_budget) for t in ids]
    code = 0 if all(r.ok for r in reports) else 1
    if cfg.format == "json":
        return _dump([
            {"table": r.table_id, "ok": r.ok, "expected": r.expected, "matched": r.matched,
             "missing": r.missing, "extra": r.extra, "uncertified": r.uncertified}
            for r in reports
        ]), code
    if cfg.format == "csv":
        return _csv([(r.table_id, r.ok, r.matched, r.expected) for r in reports], ("table", "ok", "matched", "expected")), code
    return "\n".join([f"# {cfg.header()}"] + [r.summary() for r in reports]), code


COMMANDS = {
    "params": cmd_params,
    "w0": cmd_w0,
    "dim": cmd_dim,
    "check": cmd_check,
    "enumerate": cmd_enumerate,
    "exceptional": cmd_exceptional,
    "chains": cmd_chains,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = _config(args)
    try:
        text, code = COMMANDS[args.command](args, cfg)
    except (GKError, ValueError, UsageError) as exc:
        print(f"gkfol: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
