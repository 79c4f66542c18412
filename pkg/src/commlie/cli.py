"""Command-line front end: ``count``, ``verify``, ``series`` and ``asym``.

Exit codes: 0 ok, 2 bad usage, 3 integrality failure or mismatch.
Payloads carry no timestamps, so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__, api
from .asymptotics import convergence_report, limit_constant
from .bruteforce import GuardError
from .qexact import render
from .report import CountReport, IntegralityError

EXIT_OK, EXIT_USAGE, EXIT_ASSERT = 0, 2, 3

KIND_ALIASES = {
    "pairs": "pairs",
    "nilpairs": "nilpotent_pairs",
    "nilpotent_pairs": "nilpotent_pairs",
    "group_order": "group_order",
}

SERIES_MAX_SYMBOLIC = 12
SERIES_MAX_NUMERIC = 20


class UsageError(Exception):
    pass


def _parse_n(text: str) -> list[int]:
    if "-" in text or ":" in text:
        lo, hi = text.replace(":", "-").split("-", 1)
        lo, hi = int(lo), int(hi)
    else:
        lo = hi = int(text)
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad n range {text!r}")
    return list(range(lo, hi + 1))


def _q_label(q):
    return "symbolic" if q is None else q


def _check_family_q(family: str, q):
    if family == "sp" and q is not None and q % 2 == 0:
        raise UsageError(f"sp needs odd q, got q={q}; characteristic 2 is excluded")
    if q is not None and q < 2:
        raise UsageError(f"q must be a prime power >= 2, got {q}")


def _resolve_q(args):
    if args.symbolic and args.q is not None:
        raise UsageError("give either --q or --symbolic, not both")
    if not args.symbolic and args.q is None:
        raise UsageError("one of --q or --symbolic is required")
    return None if args.symbolic else args.q


def _emit(args, command: str, meta: dict, rows: list[dict], columns: list[str], text_lines: list[str]):
    out = sys.stdout
    if args.format == "json":
        payload = {"meta": {"command": command, "version": __version__, **meta}, "results": rows}
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r)
        out.write(buf.getvalue())
    else:
        out.write("\n".join(text_lines) + "\n")


# -- count ------------------------------------------------------------------------

def cmd_count(args) -> int:
    q = _resolve_q(args)
    _check_family_q(args.family, q)
    kind = KIND_ALIASES[args.kind]
    if q is None and args.backend == "oracle":
        raise UsageError("the oracle backend needs a numeric --q")
    reports = []
    for n in args.n:
        value = api.count(args.family, kind, n, q, args.backend, force=args.force)
        if q is None and not isinstance(value, int):
            value = render(value)
        reports.append(CountReport(args.family, n, _q_label(q), kind, args.backend, value))
    if len(reports) == 1:
        text = [str(reports[0].value)]
    else:
        text = [f"n={r.n} {r.value}" for r in reports]
    meta = {"family": args.family, "kind": kind, "backend": args.backend, "q": _q_label(q)}
    _emit(args, "count", meta, [r.to_dict() for r in reports],
          ["family", "kind", "n", "q", "backend", "value"], text)
    return EXIT_OK


# -- verify -----------------------------------------------------------------------

def _verify_checks(family: str, max_n: int, q: int, force: bool, oracle: bool):
    """Yield (name, ok, detail) for every comparison."""
    for kind in ("pairs", "nilpotent_pairs"):
        for n in range(1, max_n + 1):
            name = f"{family} {kind} n={n} q={q}"
            values = {}
            try:
                for backend in ("class_sum", "gen_fn"):
                    values[backend] = api.count(family, kind, n, q, backend)
            except IntegralityError as exc:
                yield name, False, f"integrality failure in {exc.stratum}: {exc.value}"
                continue
            if oracle and api.oracle_supported(family, q):
                values["oracle"] = api.count(family, kind, n, q, "oracle", force=force)
            shown = " ".join(f"{k}={v}" for k, v in values.items())
            yield name, len(set(values.values())) == 1, shown


def cmd_verify(args) -> int:
    _check_family_q(args.family, args.q)
    rows, text = [], []
    failed = 0
    for name, ok, detail in _verify_checks(args.family, args.max_n, args.q, args.force, not args.no_oracle):
        status = "PASS" if ok else "FAIL"
        failed += not ok
        rows.append({"check": name, "status": status, "detail": detail})
        text.append(f"{status} {name} {detail}")
    text.append(f"{len(rows) - failed}/{len(rows)} checks passed")
    meta = {"family": args.family, "max_n": args.max_n, "q": args.q}
    _emit(args, "verify", meta, rows, ["check", "status", "detail"], text)
    return EXIT_ASSERT if failed else EXIT_OK


# -- series -----------------------------------------------------------------------

def cmd_series(args) -> int:
    q = _resolve_q(args)
    _check_family_q(args.family, q)
    cap = SERIES_MAX_SYMBOLIC if q is None else SERIES_MAX_NUMERIC
    if not 0 <= args.order <= cap:
        raise UsageError(f"--order must be between 0 and {cap} in this mode")
    kind = KIND_ALIASES[args.kind]
    if kind == "group_order":
        raise UsageError("series needs --kind pairs or nilpairs")
    rows, text = [], ["n | count_n/|G_n| | product side | difference"]
    nonzero = 0
    for n, lhs, rhs, diff in api.series_rows(args.family, kind, args.order, q, args.backend):
        nonzero += diff != 0
        row = {"n": n, "lhs": render(lhs), "rhs": render(rhs), "difference": render(diff)}
        rows.append(row)
        text.append(f"{n} | {row['lhs']} | {row['rhs']} | {row['difference']}")
    meta = {"family": args.family, "kind": kind, "order": args.order, "q": _q_label(q),
            "backend": args.backend}
    _emit(args, "series", meta, rows, ["n", "lhs", "rhs", "difference"], text)
    return EXIT_ASSERT if nonzero else EXIT_OK


# -- asym -------------------------------------------------------------------------

def cmd_asym(args) -> int:
    _check_family_q(args.family, args.q)
    limit, table = convergence_report(args.family, args.q, args.n_max, args.eps)
    meta = {"family": args.family, "q": args.q, "eps": repr(args.eps), "n_max": args.n_max}
    text = [
        f"constant {limit.value:.20g}",
        f"certified_error {limit.error_bound:.3e}",
        f"terms {limit.terms}",
    ]
    meta.update(constant=str(limit.value), certified_error=str(limit.error_bound), terms=limit.terms)
    if args.family == "u":
        other = limit_constant("u_unsimplified", args.q, args.eps)
        diff = abs(other.value - limit.value)
        text += [f"unsimplified_form {other.value:.20g}", f"form_difference {diff:.3e}"]
        meta.update(unsimplified_form=str(other.value), form_difference=str(diff))
    text.append("n | scaled count | gap to constant")
    rows = []
    for r in table:
        rows.append({"n": r.n, "ratio": str(r.ratio), "decimal": str(r.decimal), "gap": str(r.gap)})
        text.append(f"{r.n} | {r.decimal:.20g} | {r.gap:.6e}")
    _emit(args, "asym", meta, rows, ["n", "ratio", "decimal", "gap"], text)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="commlie", description="Exact counts of commuting pairs in finite Lie algebras.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, kind=True):
        sp.add_argument("--family", choices=api.FAMILIES, required=True)
        if kind:
            sp.add_argument("--kind", choices=sorted(KIND_ALIASES), default="pairs")
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")

    c = sub.add_parser("count", help="exact count for one n or a range a-b")
    common(c)
    c.add_argument("--n", type=_parse_n, required=True)
    c.add_argument("--q", type=int)
    c.add_argument("--symbolic", action="store_true")
    c.add_argument("--backend", choices=("class_sum", "gen_fn", "oracle"), default="gen_fn")
    c.add_argument("--force", action="store_true", help="run the oracle past its size guard")
    c.set_defaults(func=cmd_count)

    v = sub.add_parser("verify", help="compare both formula backends and the oracle")
    common(v, kind=False)
    v.add_argument("--max-n", type=int, required=True)
    v.add_argument("--q", type=int, required=True)
    v.add_argument("--force", action="store_true")
    v.add_argument("--no-oracle", action="store_true")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("series", help="both sides of the generating-function identity")
    common(s)
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--q", type=int)
    s.add_argument("--symbolic", action="store_true")
    s.add_argument("--backend", choices=("class_sum", "gen_fn"), default="class_sum",
                   help="backend for the count side")
    s.set_defaults(func=cmd_series)

    a = sub.add_parser("asym", help="limit constant and convergence table")
    common(a, kind=False)
    a.add_argument("--q", type=int, required=True)
    a.add_argument("--n-max", type=int, default=8)
    a.add_argument("--eps", type=float, default=1e-12)
    a.set_defaults(func=cmd_asym)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"commlie: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegralityError as exc:
        print(f"commlie: integrality failure in {exc.stratum}: {exc.value}", file=sys.stderr)
        return EXIT_ASSERT
    except (GuardError, ValueError) as exc:
        print(f"commlie: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
