"""Command-line front end.

Exit codes: 0 success, 1 verification or identity failure, 2 usage error.
Records go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import families as fam
from .search import PROBLEMS, SearchProblem, run_partitioned


class UsageError(Exception):
    pass


def _number(text: str):
    try:
        f = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a number: {text!r}") from None
    return int(f) if f.denominator == 1 else f


def _parse_params(items: list[str] | None) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"parameter must look like name=value, got {item!r}")
        k, v = item.split("=", 1)
        if k == "S":
            out[k] = tuple(_number(p) for p in v.split(",") if p)
        elif v.lower() in ("true", "false"):
            out[k] = v.lower() == "true"
        else:
            out[k] = _number(v)
    return out


def _parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return list(range(int(a), int(b) + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"index must be N or A..B, got {text!r}") from None


def _emit_csv(rows: list[dict], out) -> None:
    cols: list[str] = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    w = csv.DictWriter(out, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: r.get(k, "") for k in cols})


def _flat_record(rec: fam.SolutionRecord) -> dict:
    d = rec.to_dict()
    row = {"family": d["family"], "equation": d["equation"]}
    for k, v in d["params"].items():
        row[f"param_{k}"] = ",".join(v) if isinstance(v, list) else v
    row.update(d["solution"])
    row["verified"] = str(d["verified"]).lower()
    return row


# -- families ---------------------------------------------------------------

def cmd_families(args, out) -> int:
    if args.action == "list":
        descs = fam.list_families()
        if args.format == "json":
            for d in descs:
                out.write(json.dumps(d.to_dict()) + "\n")
        elif args.format == "csv":
            _emit_csv([{**d.to_dict(), "corrections": " | ".join(d.corrections)} for d in descs],
                      out)
        else:
            for d in descs:
                mark = " [corrected]" if d.corrections else ""
                out.write(f"{d.id:<15} {d.target:<36} {d.domain}{mark}\n")
        return 0

    if not args.family:
        raise UsageError("families gen needs a family id")
    try:
        desc = fam.get_family(args.family)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    params = _parse_params(args.params)
    try:
        if args.n is not None:
            if desc.index_param is None:
                raise UsageError(f"{desc.id} has no index parameter; use --params")
            records = fam.generate_range(desc.id, _parse_range(args.n), **params)
        else:
            records = [fam.generate(desc.id, **params)]
    except fam.DomainError as exc:
        raise UsageError(f"{desc.id}: {exc}") from None
    if args.format == "json":
        for r in records:
            out.write(r.to_json() + "\n")
    elif args.format == "csv":
        _emit_csv([_flat_record(r) for r in records], out)
    else:
        for r in records:
            p = " ".join(f"{k}={v}" for k, v in r.to_dict()["params"].items())
            s = " ".join(f"{k}={v}" for k, v in r.to_dict()["solution"].items())
            out.write(f"{r.family} {p}: {s}  ({fam.EQUATIONS[r.equation].text})\n")
    return 0


# -- verify -------------------------------------------------------------------

def cmd_verify(args, out) -> int:
    eq = fam.EQUATIONS.get(args.equation)
    if eq is None:
        raise UsageError(f"unknown equation {args.equation!r}; known: {', '.join(fam.EQUATIONS)}")
    if len(args.components) != len(eq.components):
        raise UsageError(f"{eq.id} takes {len(eq.components)} values "
                         f"({' '.join(eq.components)}), got {len(args.components)}")
    sol = dict(zip(eq.components, (_number(c) for c in args.components)))
    params = _parse_params(args.params)
    rec = fam.SolutionRecord("manual", params, sol, eq.id)
    if fam.verify(rec):
        out.write(f"verified: {eq.text}\n")
        return 0
    try:
        res = fam.residual(eq.id, sol)
    except ZeroDivisionError as exc:
        res = f"undefined ({exc})"
    out.write(f"not verified: {eq.text}; residual = {res}\n")
    return 1


# -- identity -----------------------------------------------------------------

def cmd_identity(args, out) -> int:
    if args.action == "list":
        for i in fam.list_identities():
            out.write(i + "\n")
        return 0
    if args.all:
        ids = fam.list_identities()
    elif args.identity:
        ids = [args.identity]
    else:
        raise UsageError("identity check needs an id or --all")
    variant = "printed" if args.printed else "corrected"
    for i in ids:
        if i not in fam.list_identities():
            raise UsageError(f"unknown identity {i!r}")
    if args.printed:
        ids = [i for i in ids if fam.has_printed_variant(i)]
        if not ids:
            raise UsageError("no printed variant for the requested identities")
    reports = [fam.check_identity(i, variant) for i in ids]
    for r in reports:
        if args.format == "json":
            out.write(json.dumps(r.to_dict()) + "\n")
        else:
            extra = ""
            if r.cofactor is not None:
                extra = f"cofactor degree {r.cofactor.total_degree()}"
            elif r.residual is not None:
                text = str(r.residual)
                extra = "residual " + (text if len(text) < 120 else text[:117] + "...")
            out.write(f"{r.id:<8} {r.status:<30} {extra}\n")
    if args.printed:
        return 0 if all(r.status == fam.NONZERO for r in reports) else 1
    return 0 if all(r.ok for r in reports) else 1


# -- search -------------------------------------------------------------------

def cmd_search(args, out) -> int:
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    try:
        problem = SearchProblem(args.problem, args.bound, base=args.base,
                                exponent=args.exponent, coprime_only=args.coprime_only,
                                require_gap=args.gap, partitions=args.threads,
                                method=args.method)
        report = run_partitioned(problem)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(f"elapsed_ms={report.elapsed_ms:.1f} method={report.method}", file=sys.stderr)
    for note in report.notes:
        print(note, file=sys.stderr)
    if args.format == "json":
        out.write(report.to_json(timing=args.timing) + "\n")
    elif args.format == "csv":
        rows = report.to_dict(timing=False)["solutions"]
        if rows:
            _emit_csv([{k: str(v).lower() if isinstance(v, bool) else v for k, v in r.items()}
                       for r in rows], out)
    else:
        opts = " ".join(f"{k}={v}" for k, v in report.options.items())
        out.write(f"{report.problem} bound={report.bound} {opts} count={report.count}\n")
        for s, f in zip(report.solutions, report.flags):
            line = " ".join(f"{k}={v}" for k, v in s.items())
            flags = " ".join(f"{k}={v}" for k, v in f.items())
            out.write(f"  {line}  {flags}".rstrip() + "\n")
    return 0


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tritet",
                                description="Diophantine equations in triangular and "
                                            "tetrahedral numbers")
    sub = p.add_subparsers(dest="command", required=True)
    formats = ("json", "csv", "plain")

    pf = sub.add_parser("families", help="list or generate solution families")
    pf.add_argument("action", choices=("list", "gen"))
    pf.add_argument("family", nargs="?")
    pf.add_argument("--n", help="index N or inclusive range A..B")
    pf.add_argument("--params", nargs="+", metavar="NAME=VALUE")
    pf.add_argument("--format", choices=formats, default="json")
    pf.set_defaults(func=cmd_families)

    pv = sub.add_parser("verify", help="check one solution of a named equation",
                        description="equations: " + ", ".join(fam.EQUATIONS))
    pv.add_argument("equation")
    pv.add_argument("components", nargs="*")
    pv.add_argument("--params", nargs="+", metavar="NAME=VALUE")
    pv.set_defaults(func=cmd_verify)

    pi = sub.add_parser("identity", help="list or symbolically check identities")
    pi.add_argument("action", choices=("list", "check"))
    pi.add_argument("identity", nargs="?")
    pi.add_argument("--all", action="store_true")
    pi.add_argument("--printed", action="store_true",
                    help="check the uncorrected printed form (expected to fail)")
    pi.add_argument("--format", choices=("json", "plain"), default="plain")
    pi.set_defaults(func=cmd_identity)

    ps = sub.add_parser("search", help="exhaustive search")
    ps.add_argument("problem", choices=PROBLEMS)
    ps.add_argument("--bound", type=int, required=True)
    ps.add_argument("--base", type=int, default=10)
    ps.add_argument("--exponent", type=int, default=2)
    ps.add_argument("--coprime-only", action="store_true")
    ps.add_argument("--gap", action="store_true", help="SQPROD-TET: require y > 2x + 2")
    ps.add_argument("--threads", type=int, default=1)
    ps.add_argument("--method", choices=("auto", "fast", "exact"), default="auto")
    ps.add_argument("--timing", action="store_true", help="include elapsed_ms in json output")
    ps.add_argument("--format", choices=formats, default="json")
    ps.set_defaults(func=cmd_search)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout (used by tests)."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
