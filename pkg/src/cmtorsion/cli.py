"""Command-line front end: every subcommand prints one JSON CommandResult
(or CSV rows with ``--format csv``) on standard output.

Exit codes: 0 ok, 1 domain error, 2 usage error.  Negative discriminants may
be given directly (``classnum -23``) or after a ``--`` guard.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import dataclass, field
from typing import Any

from . import atlas, classify, ellcurve, quadorder
from .arith.poly import parse_rational
from .errors import DomainError, ResourceError
from .numfield import NumberField, rationals


@dataclass
class CommandResult:
    command: str
    inputs: dict
    result: Any = None
    timing_ms: int = 0
    status: str = "ok"
    message: str | None = None
    rows: list = field(default_factory=list, repr=False, compare=False)

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "timing_ms": self.timing_ms,
            "status": self.status,
        }
        if self.message is not None:
            out["message"] = self.message
        return out

    def serialize(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def parse(cls, text: str) -> "CommandResult":
        d = json.loads(text)
        return cls(d["command"], d["inputs"], d["result"], d["timing_ms"], d["status"], d.get("message"))


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit code 2 with usage on stderr
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


# ---------------------------------------------------------------------------
# Input parsing


def _field(text: str | None) -> NumberField:
    if not text:
        return rationals()
    try:
        coeffs = [parse_rational(c) for c in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad --field {text!r}: {exc}") from None
    return NumberField(coeffs)


def _vector(text: str):
    try:
        return [parse_rational(c) for c in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad coefficient vector {text!r}: {exc}") from None


def _curve(F: NumberField, curve: str | None, kubert: str | None, hesse: str | None) -> ellcurve.Curve:
    given = [x is not None for x in (curve, kubert, hesse)]
    if sum(given) != 1:
        raise UsageError("give exactly one of --curve, --kubert, --hesse")
    if curve is not None:
        parts = curve.split(";")
        if len(parts) != 5:
            raise UsageError("--curve needs five ';'-separated coefficients a1;a2;a3;a4;a6")
        return ellcurve.Curve(F, *(F.element(_vector(p)) for p in parts))
    if kubert is not None:
        parts = kubert.split(";")
        if len(parts) != 2:
            raise UsageError("--kubert needs b;c")
        b, c = (F.element(_vector(p)) for p in parts)
        return ellcurve.kubert_curve(b, c, F)
    return ellcurve.hesse_curve(F.element(_vector(hesse)), F)


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


# ---------------------------------------------------------------------------
# Subcommands: each returns (result payload, csv rows or None)


def cmd_classnum(a):
    return quadorder.class_number(a.delta), None


def cmd_nu(a):
    d = quadorder.decompose(a.delta)
    return {"nu": d.nu, "two_torsion": quadorder.two_torsion_class_count(d), **d.to_json()}, None


def cmd_real_ideals(a):
    ideals = quadorder.real_primitive_ideals(a.delta)
    rows = [[i.kind, i.a, i.basis[0], i.basis[1]] for i in ideals]
    return [i.to_json() for i in ideals], (["kind", "a", "basis0", "basis1"], rows)


def cmd_raydeg(a):
    return quadorder.ray_class_degree(a.delta, a.N, a.over), None


def cmd_cartan(a):
    return quadorder.cartan_unit_order(a.delta, a.N), None


def cmd_hcp(a):
    H = atlas.hilbert_class_poly(a.delta)
    return H.to_json(), (["degree", "coefficient"], [[i, str(c)] for i, c in enumerate(H.poly.coeffs)])


def cmd_degseq(a):
    s = atlas.degree_sequence(a.delta, a.m, a.n, seed=a.seed)
    return s.to_json(), (["delta", "m", "n", "degree"], [[a.delta, a.m, a.n, d] for d in s.degrees])


def cmd_torsion(a):
    F = _field(a.field)
    E = _curve(F, a.curve, a.kubert, a.hesse)
    T = ellcurve.torsion_subgroup(E)
    return {"curve": E.to_json(), "torsion": T.to_json()}, None


def cmd_twist(a):
    F = _field(a.field)
    E = _curve(F, a.curve, a.kubert, a.hesse)
    Et = ellcurve.quadratic_twist(E, F.element(_vector(a.elem)))
    return Et.to_json(), None


def cmd_iso(a):
    F = _field(a.field)
    specs = a.curve or []
    kub = a.kubert or []
    if len(specs) + len(kub) != 2:
        raise UsageError("iso needs two curves (--curve and/or --kubert, repeated)")
    curves = [_curve(F, s, None, None) for s in specs] + [_curve(F, None, k, None) for k in kub]
    return {"isomorphic": ellcurve.curves_isomorphic(*curves)}, None


def cmd_classify(a):
    d = a.degree
    mode = "prime-squared" if a.prime_squared else "prime" if a.prime else "odd"
    if mode == "prime-squared":
        r = math.isqrt(d) if d > 0 else 0
        if r * r != d or not classify.is_prime(r):
            raise DomainError(f"{d} is not the square of a prime")
        groups = classify.prime_squared_groups(r)
        return {"p": r, "degree": d, "groups": [g.to_json() for g in groups]}, (
            ["group"],
            [[g.label()] for g in groups],
        )
    if mode == "prime":
        if not classify.is_prime(d):
            raise DomainError(f"{d} is not prime")
        if d % 2:
            report = classify.odd_degree_candidates(d)
        else:
            rows = classify.prime_degree_table(d)
            groups = classify.olson_groups()
            seen = {(g.m, g.N) for g in groups}
            for r in rows:
                if (r.m, r.n) not in seen:
                    seen.add((r.m, r.n))
                    groups.append(r.torsion)
            report = classify.DegreeReport(d, groups, list(groups))
    else:
        report = classify.odd_degree_candidates(d)
    out = report.to_json()
    return out, (["status", "group"], [["proven", t.label()] for t in report.proven] + [
        ["candidate", t.label()] for t in report.candidates if t not in report.proven
    ])


def cmd_prime_table(a):
    rows = classify.prime_degree_table(a.p)
    return [r.to_json() for r in rows], (
        ["row", "field", "curve", "delta", "torsion"],
        [[r.index, classify._poly_text(r.field), r.label, r.delta, r.torsion.label()] for r in rows],
    )


def cmd_verify_table1(a):
    rows = _ints(a.rows) if a.rows else None
    rep = atlas.verify_table1(rows, jobs=a.jobs)
    return rep.to_json(), (
        ["row", "expected", "computed", "pass"],
        [[r.row, r.expected, r.computed, r.passed] for r in rep.rows],
    )


def cmd_sg_scan(a):
    rep = atlas.sg_scan(a.X, jobs=a.jobs, budget_seconds=a.budget)
    return rep.to_json(), (["k", "ell", "p", "h"], [[r.k, r.ell, r.p, r.h] for r in rep.members])


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="cmtorsion",
        description="Torsion of CM elliptic curves over number fields.",
        epilog="Negative numbers may be passed directly or after '--'.",
    )
    p.add_argument("--format", choices=["json", "csv"], default="json")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.add_argument("--format", choices=["json", "csv"], default=argparse.SUPPRESS)
        sp.set_defaults(func=func)
        return sp

    sp = add("classnum", cmd_classnum, "class number h(delta)")
    sp.add_argument("delta", type=int)
    sp = add("nu", cmd_nu, "genus data: #Pic[2] = 2^nu")
    sp.add_argument("delta", type=int)
    sp = add("real-ideals", cmd_real_ideals, "primitive proper real ideals")
    sp.add_argument("delta", type=int)
    sp = add("raydeg", cmd_raydeg, "degree of the ray class field of conductor N")
    sp.add_argument("delta", type=int)
    sp.add_argument("N", type=int)
    sp.add_argument("--over", choices=["K", "Q"], default="K")
    sp = add("cartan", cmd_cartan, "order of (O/NO)^x")
    sp.add_argument("delta", type=int)
    sp.add_argument("N", type=int)
    sp = add("hcp", cmd_hcp, "Hilbert class polynomial")
    sp.add_argument("delta", type=int)
    sp = add("degseq", cmd_degseq, "degree sequence over j(delta) for (m, n)")
    sp.add_argument("delta", type=int)
    sp.add_argument("m", type=int)
    sp.add_argument("n", type=int)
    sp.add_argument("--seed", type=int, default=0)
    for name, func, text in (
        ("torsion", cmd_torsion, "torsion subgroup of a curve"),
        ("twist", cmd_twist, "quadratic twist of a curve"),
    ):
        sp = add(name, func, text)
        sp.add_argument("--field", help="ascending coefficients, e.g. 1,0,1")
        sp.add_argument("--curve", help="a1;a2;a3;a4;a6, each a power-basis vector")
        sp.add_argument("--kubert", help="b;c")
        sp.add_argument("--hesse", help="lambda")
        if name == "twist":
            sp.add_argument("--elem", required=True, help="twisting parameter d")
    sp = add("iso", cmd_iso, "isomorphism test for two curves over the same field")
    sp.add_argument("--field")
    sp.add_argument("--curve", action="append")
    sp.add_argument("--kubert", action="append")
    sp = add("classify", cmd_classify, "torsion groups by degree")
    sp.add_argument("--degree", type=int, required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--odd", action="store_true")
    g.add_argument("--prime", action="store_true")
    g.add_argument("--prime-squared", action="store_true")
    sp = add("prime-table", cmd_prime_table, "listed fields and curves in prime degree p")
    sp.add_argument("p", type=int)
    sp = add("verify-table1", cmd_verify_table1, "verify the prime-degree curve list")
    sp.add_argument("--rows", help="comma-separated row numbers")
    sp.add_argument("--jobs", type=int, default=1)
    sp = add("sg-scan", cmd_sg_scan, "count k <= X with 4k+3, 2k+1, h(-(4k+3)) prime")
    sp.add_argument("X", type=int)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--budget", type=float, default=None, help="seconds before stopping early")
    return p


def _inputs(args: argparse.Namespace) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("func", "format", "command")}


def _emit_csv(table, out) -> None:
    header, rows = table
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


_VALUE_OPTIONS = ("--field", "--elem", "--curve", "--kubert", "--hesse", "--rows")


def _glue_values(argv: list[str]) -> list[str]:
    """Rewrite '--field -3,0,1' as '--field=-3,0,1' so values may start with '-'."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1] != "--":
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = getattr(args, "format", "json")
    t0 = time.perf_counter()
    res = CommandResult(args.command, _inputs(args))
    table = None
    code = 0
    try:
        res.result, table = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"cmtorsion: error: {exc}\n")
        return 2
    except (DomainError, ResourceError) as exc:
        res.status, res.message = "error", str(exc)
        code = 1
    res.timing_ms = int((time.perf_counter() - t0) * 1000)
    if fmt == "csv" and code == 0:
        if table is None:
            table = (["result"], [[json.dumps(res.result, sort_keys=True)]])
        _emit_csv(table, out)
    else:
        out.write(res.serialize() + "\n")
    if code:
        sys.stderr.write(f"cmtorsion: {res.message}\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
