"""``sflab`` command-line front end.

Every command writes a report in text, CSV or JSON. Numbers are printed
with 17 significant digits so output round-trips and diffs cleanly; runtimes
are only included with ``--timing`` so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings
from dataclasses import dataclass

from . import __version__
from .errors import SflabError
from .exponents import (
    LAMBDA2,
    THRESHOLD,
    admissibility,
    budget_passes,
    c_alpha,
    error_budget,
    phi,
    solve_lambda_roots,
)
from .explicit import bundled_zeros, default_T, load_zeros, psi_truncated, truncation_diag
from .representation import CSV_COLUMNS, ContractWarning, Method, Window, r_of_n, r_tilde, sweep, window_sum
from .sieve import CACHE_ENV, build_sieve
from .squarefull import count_upto, enumerate_squarefull
from .zeta import singular_constant, zeta

EXIT_OK, EXIT_DOMAIN, EXIT_IO = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def fmt_num(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _json_num(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


@dataclass
class Report:
    """A command result: tabular rows plus scalar fields."""

    command: str
    columns: tuple[str, ...] = ()
    rows: list[dict] | None = None
    fields: dict | None = None
    notes: tuple[str, ...] = ()


def emit_report(report: Report, fmt: str, config: dict | None = None) -> bytes:
    """Serialize deterministically.

    CSV carries only the header and data rows. Text and JSON also echo the
    resolved configuration.
    """
    rows = report.rows or []
    fields = report.fields or {}
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if rows:
            writer.writerow(report.columns)
            for row in rows:
                writer.writerow([fmt_num(row.get(c)) for c in report.columns])
        else:
            writer.writerow(list(fields))
            writer.writerow([fmt_num(v) for v in fields.values()])
        return buf.getvalue().encode()
    if fmt == "json":
        doc = {k: _json_num(v) for k, v in fields.items()}
        if report.rows is not None:
            doc["rows"] = [{c: _json_num(row.get(c)) for c in report.columns} for row in rows]
        if report.notes:
            doc["notes"] = list(report.notes)
        doc["config"] = config or {}
        return (json.dumps(doc, indent=2) + "\n").encode()
    lines = [f"# sflab {report.command}"]
    if config:
        lines.append("# config: " + " ".join(f"{k}={fmt_num(v)}" for k, v in config.items()))
    lines.extend(f"# note: {n}" for n in report.notes)
    for k, v in fields.items():
        lines.append(f"{k}: {fmt_num(v)}")
    if rows:
        lines.append("\t".join(report.columns))
        for row in rows:
            lines.append("\t".join(fmt_num(row.get(c)) for c in report.columns))
    return ("\n".join(lines) + "\n").encode()


# -- commands ----------------------------------------------------------------


def _cache_dir(args):
    return args.cache_dir or os.environ.get(CACHE_ENV) or None


def _zeros(args):
    if args.zeros:
        return load_zeros(args.zeros)
    return bundled_zeros()


def cmd_primes(args) -> Report:
    table = build_sieve(args.limit, _cache_dir(args))
    fields = {"limit": args.limit, "count": len(table)}
    if args.count_only:
        return Report("primes", fields=fields)
    return Report("primes", ("p",), [{"p": p} for p in table.primes.tolist()], fields)


def cmd_squarefull(args) -> Report:
    fields = {"limit": args.limit, "b_cap": args.b, "count": count_upto(args.limit, args.b)}
    if args.count_only:
        return Report("squarefull", fields=fields)
    sq = enumerate_squarefull(args.limit, args.b)
    return Report("squarefull", ("n", "a", "b"), [item._asdict() for item in sq], fields)


def cmd_zeta(args) -> Report:
    z = zeta(args.s)
    return Report("zeta", fields={"s": z.s, "value": z.value, "abs_error_bound": z.abs_error_bound})


def cmd_constant(args) -> Report:
    return Report("constant", fields={"singular_constant": singular_constant()})


def cmd_r(args) -> Report:
    table = build_sieve(max(args.n, 2), _cache_dir(args))
    value = r_of_n(args.n, table) if args.b is None else r_tilde(args.n, args.b, table)
    return Report("r", fields={"N": args.n, "B": args.b, "value": value})


def cmd_window(args) -> Report:
    w = Window(args.x, args.h)
    table = build_sieve(max(args.x + args.h, 2), _cache_dir(args))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ContractWarning)
        rep = window_sum(w, args.b, table, args.method, timing=args.timing)
    value = rep.sum_logp if args.weight == "logp" else rep.sum_lambda
    fields = {
        "weight": args.weight,
        "value": value,
        "contract_ok": w.contract_ok,
        "in_theorem_range": w.in_theorem_range,
        "n_squarefull": rep.n_squarefull,
        "lambda_minus_logp": rep.lambda_minus_logp,
    }
    return Report("window", CSV_COLUMNS, [rep.as_row()], fields, rep.notes)


def cmd_sweep(args) -> Report:
    rows = sweep(args.x_list, args.h_exp, a=args.a, budget=args.budget, method=args.method, timing=args.timing)
    notes = tuple(f"X={r.window.X}: {r.error}" for r in rows if r.error)
    columns = CSV_COLUMNS + ("in_theorem_range",)
    out = []
    for r in rows:
        row = r.as_row()
        row["in_theorem_range"] = r.window.in_theorem_range
        out.append(row)
    return Report("sweep", columns, out, notes=notes)


def cmd_psi(args) -> Report:
    table = build_sieve(max(math.floor(args.x), 2), _cache_dir(args))
    fields = {"x": args.x, "psi": table.psi(args.x), "theta": table.theta(args.x)}
    if args.t is not None:
        zeros = _zeros(args)
        trunc = psi_truncated(args.x, args.t, zeros)
        fields.update({"T": args.t, "psi_truncated": trunc, "difference": trunc - fields["psi"], "zeros_digest": zeros.source_digest})
    return Report("psi", fields=fields)


def cmd_explicit(args) -> Report:
    zeros = _zeros(args)
    T = args.t if args.t is not None else default_T(args.x, args.h, args.eps1)
    table = build_sieve(max(args.x + args.h, 2), _cache_dir(args))
    diag = truncation_diag(args.x, args.h, args.b, T, zeros, table)
    fields = dict(diag.as_row())
    fields["zeros_digest"] = zeros.source_digest
    if args.format == "csv":
        return Report("explicit", tuple(diag.as_row()), [diag.as_row()])
    rows = [{"x": x, "psi_err": e} for x, e in diag.psi_err_sample]
    return Report("explicit", ("x", "psi_err"), rows, fields)


def cmd_exponents(args) -> Report:
    rows, fields, notes = [], {}, []

    def add(label, exponent, bound=None, passed=None):
        rows.append({"label": label, "exponent": exponent, "bound": bound, "pass": passed})

    if args.phi is not None:
        add("phi", phi(args.phi))
    if args.c_alpha is not None:
        add("c_alpha", c_alpha(args.c_alpha))
    if args.solve or not any(v is not None for v in (args.phi, args.c_alpha, args.delta)) and not args.budget:
        lam1, lam2 = solve_lambda_roots()
        add("lambda1", lam1, 1.0)
        add("lambda2", lam2, LAMBDA2)
        add("threshold", 1.0 - lam2, THRESHOLD)
    if args.delta is not None:
        eps = args.eps if args.eps is not None else 0.0
        rep = admissibility(args.delta, eps)
        fields.update(rep.as_dict())
        add("cond1", rep.cond1, 1.0 - eps / 10.0, rep.cond1 < 1.0 - eps / 10.0 if eps else rep.cond1 < 1.0)
        add("cond2", rep.cond2, 1.5 - eps / 10.0, rep.cond2 < 1.5 - eps / 10.0 if eps else rep.cond2 < 1.5)
    if args.budget:
        if args.x is None or args.h is None:
            raise UsageError("--budget needs --x and --h")
        terms = error_budget(args.x, args.h, args.eps1)
        for t in terms:
            add(t.label, t.exponent, t.bound, t.passed)
        fields["budget_pass"] = budget_passes(terms)
    return Report("exponents", ("label", "exponent", "bound", "pass"), rows, fields, tuple(notes))


# -- parser ------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("output")
    g.add_argument("--format", choices=("text", "csv", "json"), default=argparse.SUPPRESS)
    g.add_argument("--output", "-o", default=argparse.SUPPRESS, help="write the report here instead of stdout")
    g.add_argument("--csv", dest="csv_out", metavar="PATH", default=argparse.SUPPRESS, help="shorthand for --format csv --output PATH")
    g.add_argument("--cache-dir", default=argparse.SUPPRESS, help=f"sieve cache directory (default ${CACHE_ENV})")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    g.add_argument("--timing", action="store_true", default=argparse.SUPPRESS, help="include runtime_ms (breaks byte-identical reruns)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="sflab", description="Primes plus square-full numbers in short intervals.", parents=[common])
    parser.add_argument("--version", action="version", version=f"sflab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("primes", parents=[common], help="sieve primes up to a limit")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("squarefull", parents=[common], help="enumerate square-full numbers a^2 b^3")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--b", type=float, default=None, help="keep only b <= B")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_squarefull)

    p = sub.add_parser("zeta", parents=[common], help="zeta(s) for real s >= 1.1")
    p.add_argument("--s", type=float, required=True)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("constant", parents=[common], help="zeta(3/2)/zeta(3)")
    p.set_defaults(func=cmd_constant)

    p = sub.add_parser("r", parents=[common], help="representation function R(N)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", type=float, default=None)
    p.set_defaults(func=cmd_r)

    p = sub.add_parser("window", parents=[common], help="sum of R(N) over X < N <= X+H")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--method", choices=("pair", "prefix"), default="prefix")
    p.add_argument("--weight", choices=("logp", "lambda"), default="logp")
    p.set_defaults(func=cmd_window)

    p = sub.add_parser("sweep", parents=[common], help="window sums for several X with H = ceil(X^E)")
    p.add_argument("--x-list", type=int, nargs="+", required=True)
    p.add_argument("--h-exp", type=float, required=True)
    p.add_argument("--a", type=float, default=None, help="use B = (log X)^(4A)")
    p.add_argument("--budget", type=int, default=10**8, help="largest X+H to sieve")
    p.add_argument("--method", choices=("pair", "prefix"), default="prefix")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("psi", parents=[common], help="psi(x), optionally against the truncated explicit formula")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--zeros", default=None, help="zero-ordinate file (default: bundled 1000 zeros)")
    p.add_argument("--t", type=float, default=None)
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("explicit", parents=[common], help="zero-sum diagnostics r1, r2, r3 for a window")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--t", type=float, default=None, help="default X^(1+eps1)/H")
    p.add_argument("--eps1", type=float, default=0.01)
    p.add_argument("--zeros", default=None)
    p.set_defaults(func=cmd_explicit)

    p = sub.add_parser("exponents", parents=[common], help="zero-density exponent calculus")
    p.add_argument("--phi", type=float, default=None, metavar="L")
    p.add_argument("--c-alpha", type=float, default=None, metavar="A")
    p.add_argument("--solve", action="store_true")
    p.add_argument("--delta", type=float, default=None, metavar="D")
    p.add_argument("--eps", type=float, default=None, help="epsilon for the admissibility margins")
    p.add_argument("--eps1", type=float, default=0.01)
    p.add_argument("--budget", action="store_true")
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--h", type=float, default=None)
    p.set_defaults(func=cmd_exponents)
    return parser


_DEFAULTS = {"format": "text", "output": None, "csv_out": None, "cache_dir": None, "seed": 0, "timing": False}


def resolve_config(args) -> dict:
    config = {"command": args.command}
    for k, v in sorted(vars(args).items()):
        if k in ("func", "command"):
            continue
        config[k] = list(v) if isinstance(v, (list, tuple)) else v
    return config


def dispatch(argv: list[str] | None = None) -> int:
    """Run one command; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_DOMAIN
    except SystemExit as exc:
        return int(exc.code or 0)
    for k, v in _DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    if args.csv_out:
        args.format, args.output = "csv", args.csv_out
    if hasattr(args, "method") and isinstance(args.method, str) and args.method in ("pair", "prefix"):
        args.method = Method.parse(args.method).value
    try:
        report = args.func(args)
        payload = emit_report(report, args.format, resolve_config(args))
    except UsageError as exc:
        print(f"E_DOMAIN: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except SflabError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"E_IO: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        if args.output:
            with open(args.output, "wb") as fh:
                fh.write(payload)
        else:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()
    except OSError as exc:
        print(f"E_IO: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
