"""Command-line front end.

Subcommands::

    threshold nv|trican|bir|map4|map3|map2 ...   one certified threshold
    table t1|t2|t3|t4|t5 ...                     a sweep over a grid
    higherdim nv|bir ...                         dimension >= 3 statements
    higherdim dichotomy nv|bir ...               dichotomy bounds
    verify                                       engine vs shipped tables
    eval EXPR                                    evaluate an exact expression

Exit codes: 0 success, 1 domain error (inadmissible input), 2 verification
mismatch, 3 precision cap exhausted, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Optional

from gmpy2 import mpq

from . import higherdim, threefold
from .bounds import ThresholdReport
from .enclose import decimal_enclosure
from .errors import (DomainError, ParseError, PluriboundError,
                     PrecisionExhausted)
from .expr import parse_expr, render
from .refdata import verify_all

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_MISMATCH = 2
EXIT_PRECISION = 3
EXIT_USAGE = 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


# --------------------------------------------------------------------------
# output formatting
# --------------------------------------------------------------------------

def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (list, tuple)):
        return "; ".join(str(x) for x in v)
    return str(v)


def _emit(rows: list, columns: list, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
        return
    table = [[_cell(r.get(c)) for c in columns] for r in rows]
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(columns)
        w.writerows(table)
        return
    widths = [max(len(c), *(len(line[i]) for line in table)) if table
              else len(c) for i, c in enumerate(columns)]
    out.write("| " + " | ".join(c.ljust(w) for c, w in zip(columns, widths))
              + " |\n")
    out.write("|" + "|".join("-" * (w + 2) for w in widths) + "|\n")
    for line in table:
        out.write("| " + " | ".join(v.ljust(w) for v, w in
                                    zip(line, widths)) + " |\n")


def _report_row(rep: ThresholdReport, digits: int,
                cap: Optional[int]) -> dict:
    lo, hi = decimal_enclosure(rep.infimum.value, digits=digits,
                               precision_cap=cap)
    return {
        "family": rep.family,
        "branch": rep.branch_id,
        "published": rep.published,
        "unit": render(rep.unit),
        "reading": "exact form" if rep.published_exact else "least lattice",
        "strict": rep.infimum.strict,
        "attained": rep.attained_lattice,
        "infimum": render(rep.infimum.value),
        "enclosure": [lo, hi],
        "conditions": list(rep.attaining),
    }


# --------------------------------------------------------------------------
# subcommand handlers
# --------------------------------------------------------------------------

def _cmd_threshold(args, out) -> int:
    cap = args.precision
    fam = args.family
    if fam == "nv":
        rep = threefold.nv_threshold(args.g, args.n, precision_cap=cap)
    elif fam == "trican":
        rep = threefold.trican_threshold(args.g, precision_cap=cap)
    elif fam == "bir":
        rep = threefold.bir_threshold(args.l, args.g, precision_cap=cap)
    elif fam == "map4":
        rep = threefold.map4_threshold(args.g, precision_cap=cap)
    elif fam == "map3":
        rep = threefold.map3_threshold(args.g, precision_cap=cap)
    else:
        rep = threefold.map2_threshold(args.g, precision_cap=cap)
    row = _report_row(rep, args.digits, cap)
    for key in ("g", "n", "l"):
        if hasattr(args, key):
            row[key] = getattr(args, key)
    cols = ["family"] + [k for k in ("g", "n", "l") if k in row] + \
        ["branch", "published", "unit", "reading", "attained", "infimum",
         "enclosure", "conditions"]
    _emit([row], cols, args.format, out)
    return EXIT_OK


def _span(text: str, what: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            k = int(text)
            return range(k, k + 1)
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise _UsageError(f"bad {what} range {text!r}; expected A..B") from None


def _cmd_table(args, out) -> int:
    cap = args.precision
    rows = []
    if args.name == "t1":
        for g in _span(args.g_range or "2..12", "g"):
            for n in _span(args.n_range or "1..6", "n"):
                rep = threefold.nv_threshold(g, n, precision_cap=cap)
                rows.append({"g": g, "n": n, "published": rep.published,
                             "branch": rep.branch_id,
                             "reading": "exact form" if rep.published_exact
                             else "least lattice"})
        cols = ["g", "n", "published", "branch", "reading"]
    elif args.name == "t2":
        for l in _span(args.l_range or "5..14", "l"):
            for g in _span(args.g_range or "2..12", "g"):
                rep = threefold.bir_threshold(l, g, precision_cap=cap)
                rows.append({"l": l, "g": g, "published": rep.published,
                             "unit": "2^(1/3)", "branch": rep.branch_id,
                             "reading": "exact form" if rep.published_exact
                             else "least lattice"})
        cols = ["l", "g", "published", "unit", "branch", "reading"]
    else:
        fn, lo = {"t3": (threefold.map4_threshold, 2),
                  "t4": (threefold.map3_threshold, 3),
                  "t5": (threefold.map2_threshold, 4)}[args.name]
        for g in _span(args.g_range or f"{lo}..41", "g"):
            rep = fn(g, precision_cap=cap)
            rows.append({"g": g, "published": rep.published,
                         "unit": "2^(1/3)", "branch": rep.branch_id,
                         "reading": "exact form" if rep.published_exact
                         else "least lattice"})
        cols = ["g", "published", "unit", "branch", "reading"]
    _emit(rows, cols, args.format, out)
    return EXIT_OK


def _profile(args) -> Optional[tuple]:
    if args.v is None:
        return None
    try:
        return tuple(mpq(tok) for tok in args.v.split(","))
    except ValueError:
        raise _UsageError(f"bad profile {args.v!r}; expected e.g. "
                          "2,1,1/2660") from None


def _cmd_higherdim(args, out) -> int:
    cap = args.precision
    if args.stmt == "dichotomy":
        fn = higherdim.dichotomy_nv if args.side == "nv" \
            else higherdim.dichotomy_bir
        rep = fn(args.d, args.l, args.beta_bar, _profile(args), g=args.g,
                 precision_cap=cap)
        lo, hi = decimal_enclosure(rep.bound.value, digits=args.digits,
                                   precision_cap=cap)
        row = {"statement": f"dichotomy-{args.side}", "d": args.d,
               "l": args.l, "beta_bar": str(rep.beta_bar),
               "published": rep.published,
               "reading": "exact" if rep.published_exact else "least above",
               "bound": render(rep.bound.value), "enclosure": [lo, hi]}
        _emit([row], ["statement", "d", "l", "beta_bar", "published",
                      "reading", "bound", "enclosure"], args.format, out)
        return EXIT_OK
    if args.stmt == "nv":
        if args.alpha is not None:
            got = higherdim.nv_multiplier(args.alpha, args.d, _profile(args),
                                          g=args.g, precision_cap=cap)
            _emit([{"statement": "nv-multiplier", "d": args.d,
                    "alpha": args.alpha, "multiplier": got}],
                  ["statement", "d", "alpha", "multiplier"], args.format, out)
            return EXIT_OK
        rep = higherdim.nv_alpha_threshold(args.d, _profile(args), g=args.g,
                                           precision_cap=cap)
        lo, hi = decimal_enclosure(rep.bound.value, digits=args.digits,
                                   precision_cap=cap)
        row = {"statement": "nv-threshold", "d": args.d,
               "published": rep.published,
               "reading": "exact" if rep.published_exact else "least above",
               "pi_floor": rep.pi_floor, "bound": render(rep.bound.value),
               "enclosure": [lo, hi]}
        _emit([row], ["statement", "d", "published", "reading", "pi_floor",
                      "bound", "enclosure"], args.format, out)
        return EXIT_OK
    # bir
    if args.alpha is not None:
        got = higherdim.bir_l_min(args.alpha, args.d, _profile(args),
                                  g=args.g, precision_cap=cap)
        _emit([{"statement": "bir-l-min", "d": args.d, "alpha": args.alpha,
                "l_min": got}],
              ["statement", "d", "alpha", "l_min"], args.format, out)
        return EXIT_OK
    rep = higherdim.bir_alpha_threshold(args.d, _profile(args), g=args.g,
                                        precision_cap=cap)
    lo, hi = decimal_enclosure(rep.bound.value, digits=args.digits,
                               precision_cap=cap)
    row = {"statement": "bir-threshold", "d": args.d,
           "published": rep.published,
           "reading": "exact" if rep.published_exact else "least above",
           "l_limit": rep.l_limit, "bound": render(rep.bound.value),
           "enclosure": [lo, hi]}
    _emit([row], ["statement", "d", "published", "reading", "l_limit",
                  "bound", "enclosure"], args.format, out)
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    tables = tuple(args.tables.split(",")) if args.tables else None
    rep = verify_all(precision_cap=args.precision, tables=tables,
                     window=args.window)
    out.write(rep.summary() + "\n")
    if rep.counts["mismatch"]:
        return EXIT_MISMATCH
    if rep.counts["undecided"]:
        return EXIT_PRECISION
    return EXIT_OK


def _cmd_eval(args, out) -> int:
    e = parse_expr(args.expr)
    lo, hi = decimal_enclosure(e, digits=args.digits,
                               precision_cap=args.precision)
    _emit([{"expression": render(e), "enclosure": [lo, hi]}],
          ["expression", "enclosure"], args.format, out)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser assembly
# --------------------------------------------------------------------------

def _add_common(p) -> None:
    p.add_argument("--format", choices=("markdown", "csv", "json"),
                   default="markdown")
    p.add_argument("--precision", type=int, metavar="BITS", default=None,
                   help="cap on working precision for certification")
    p.add_argument("--digits", type=int, default=12,
                   help="decimal digits in printed enclosures")


def build_parser() -> _Parser:
    top = _Parser(prog="pluribound",
                  description="certified effective bounds for pluricanonical "
                              "systems")
    sub = top.add_subparsers(dest="command", required=True)

    p_thr = sub.add_parser("threshold", help="one certified threshold")
    thr_sub = p_thr.add_subparsers(dest="family", required=True)
    for fam, opts in (("nv", "gn"), ("trican", "g"), ("bir", "lg"),
                      ("map4", "g"), ("map3", "g"), ("map2", "g")):
        q = thr_sub.add_parser(fam)
        if "g" in opts:
            q.add_argument("--g", type=int, required=True)
        if "n" in opts:
            q.add_argument("--n", type=int, required=True)
        if "l" in opts:
            q.add_argument("--l", type=int, required=True)
        _add_common(q)
        q.set_defaults(handler=_cmd_threshold)

    p_tab = sub.add_parser("table", help="sweep a published table's grid")
    tab_sub = p_tab.add_subparsers(dest="name", required=True)
    for name in ("t1", "t2", "t3", "t4", "t5"):
        q = tab_sub.add_parser(name)
        q.add_argument("--g-range", metavar="A..B", default=None)
        if name == "t1":
            q.add_argument("--n-range", metavar="A..B", default=None)
        if name == "t2":
            q.add_argument("--l-range", metavar="A..B", default=None)
        _add_common(q)
        q.set_defaults(handler=_cmd_table)

    p_hd = sub.add_parser("higherdim", help="dimension >= 3 statements")
    hd_sub = p_hd.add_subparsers(dest="stmt", required=True)
    for stmt in ("nv", "bir"):
        q = hd_sub.add_parser(stmt)
        q.add_argument("--d", type=int, required=True)
        q.add_argument("--g", type=int, default=None)
        q.add_argument("--v", metavar="V1,V2,...", default=None,
                       help="explicit volume profile")
        q.add_argument("--alpha", type=int, default=None,
                       help="query the multiplier (nv) or least degree (bir) "
                            "at this alpha instead of the threshold")
        _add_common(q)
        q.set_defaults(handler=_cmd_higherdim)
    p_dich = hd_sub.add_parser("dichotomy")
    dich_sub = p_dich.add_subparsers(dest="side", required=True)
    for side in ("nv", "bir"):
        q = dich_sub.add_parser(side)
        q.add_argument("--d", type=int, required=True)
        q.add_argument("--l", type=int, required=True)
        q.add_argument("--g", type=int, default=None)
        q.add_argument("--v", metavar="V1,V2,...", default=None)
        q.add_argument("--beta-bar", required=True,
                       help="exact rational lower bound, e.g. 3 or 7/2")
        _add_common(q)
        q.set_defaults(handler=_cmd_higherdim, stmt="dichotomy")

    p_ver = sub.add_parser("verify",
                           help="recompute shipped tables with the engine")
    p_ver.add_argument("--tables", metavar="t1,t2,...", default=None)
    p_ver.add_argument("--window", type=int, default=60,
                       help="cells checked past an open range end")
    _add_common(p_ver)
    p_ver.set_defaults(handler=_cmd_verify)

    p_ev = sub.add_parser("eval", help="evaluate an exact expression")
    p_ev.add_argument("expr", metavar="EXPR",
                      help="e.g. '(3*sqrt(37)+6)/((1/3)*sqrt(37)-2)'")
    _add_common(p_ev)
    p_ev.set_defaults(handler=_cmd_eval)
    return top


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    out = sys.stdout
    try:
        args = parser.parse_args(argv)
        return args.handler(args, out)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except PluriboundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
