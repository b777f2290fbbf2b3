"""Command-line front end.  Every subcommand prints one JSON document."""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from .errors import PermPolyError
from .families import (
    ELEMENT_PARAMS,
    FAMILY_PARAMS,
    INT_PARAMS,
    POLY_PARAMS,
    SCHEMA_VERSION,
    FamilySpec,
    construct,
    enumerate_good_pairs,
    grado2_closed_form,
)
from .field_core import parse_field_spec
from .mu_maps import classify_degree_one, mu_table
from .poly_core import Polynomial, RationalMap, format_polynomial, parse_polynomial
from .verify import check_agw_criterion, is_permutation_of_field, is_permutation_sorted

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS,
                        help="worker processes for exhaustive scans (default 1)")
    common.add_argument("--indent", type=int, default=argparse.SUPPRESS, help="JSON indent; 0 for compact output (default 2)")
    p = _Parser(prog="permpoly", parents=[common],
                description="Construct and verify permutation polynomials over GF(q^2) and GF(q^3).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", parents=[common], help="build a family member and optionally verify it")
    c.add_argument("--field", help="field spec p^m/e[:modulus], e.g. 3^2/1")
    c.add_argument("--family", choices=sorted(FAMILY_PARAMS))
    c.add_argument("--spec-file", help="read family, field and parameters from a key = value file")
    c.add_argument("--verify", action="store_true", help="run the exhaustive permutation check")
    for name in sorted(INT_PARAMS):
        c.add_argument(_flag(name), dest=f"p_{name}", type=int)
    for name in sorted(ELEMENT_PARAMS | POLY_PARAMS):
        c.add_argument(_flag(name), dest=f"p_{name}", metavar="VALUE")

    v = sub.add_parser("verify-poly", parents=[common], help="exhaustively test whether a polynomial permutes the field")
    v.add_argument("--field", required=True)
    v.add_argument("--poly", required=True, help="dense coefficients (constant first) or sparse e:c;e:c")
    v.add_argument("--cross-check", action="store_true", help="also run the sort-based check")

    d = sub.add_parser("classify-degree1", parents=[common], help="degree-one bijections of mu_{q+1}, closed form vs brute force")
    d.add_argument("--field", required=True)
    d.add_argument("--to-line", action="store_true", help="classify bijections mu_{q+1} -> GF(q) U {inf} instead")
    d.add_argument("--list", action="store_true", help="include every closed-form map in the output")

    g = sub.add_parser("search-good-pairs", parents=[common], help="enumerate (beta, k)-good pairs of a given degree")
    g.add_argument("--field", required=True)
    g.add_argument("--degree", type=int, required=True)
    g.add_argument("--k", type=int, default=0)
    g.add_argument("--compare-closed-form", action="store_true",
                   help="for degree 2 and q even, compare with the explicit parametrization")
    g.add_argument("--limit", type=int, default=None, help="print at most this many pairs")

    a = sub.add_parser("check-agw", parents=[common], help="both sides of the x^r h(x^d) criterion")
    a.add_argument("--field", required=True)
    a.add_argument("--r", type=int, required=True)
    a.add_argument("--d", type=int, required=True)
    a.add_argument("--h", required=True)

    t = sub.add_parser("mu-table", parents=[common], help="list mu_n and optionally the values of L/M on it")
    t.add_argument("--field", required=True)
    t.add_argument("--n", type=int, default=None, help="subgroup order (default q+1)")
    t.add_argument("--num", help="numerator polynomial")
    t.add_argument("--den", help="denominator polynomial (default 1)")
    return p


def _doc(command: str, **body) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, **body}


def _cmd_construct(args) -> tuple[dict, int]:
    if args.spec_file:
        with open(args.spec_file, encoding="utf-8") as fh:
            spec = FamilySpec.from_text(fh.read())
    else:
        if not args.field or not args.family:
            raise PermPolyError("construct needs --field and --family (or --spec-file)")
        params = {k[2:]: v for k, v in vars(args).items() if k.startswith("p_") and v is not None}
        spec = FamilySpec(args.family, parse_field_spec(args.field), params)
    report = construct(spec, verify=args.verify)
    code = EXIT_MISMATCH if report.consistent is False else EXIT_OK
    return _doc("construct", report=report.to_dict()), code


def _cmd_verify_poly(args) -> tuple[dict, int]:
    F = parse_field_spec(args.field)
    P = parse_polynomial(F, args.poly)
    t0 = time.perf_counter()
    rep = is_permutation_of_field(P, F)
    body = {"field": F.spec_string(), "poly": format_polynomial(P), **rep.to_dict(),
            "timing_s": round(time.perf_counter() - t0, 6)}
    code = EXIT_OK
    if args.cross_check:
        other = is_permutation_sorted(P, F)
        body["cross_check"] = other
        if other != rep.is_permutation:
            code = EXIT_MISMATCH
    return _doc("verify-poly", **body), code


def _map_text(R: RationalMap) -> dict:
    return {"num": format_polynomial(R.num), "den": format_polynomial(R.den)}


def _cmd_classify(args) -> tuple[dict, int]:
    F = parse_field_spec(args.field)
    target = "line" if args.to_line else "mu"
    res = classify_degree_one(F, target)
    body = {
        "field": F.spec_string(),
        "target": target,
        "closed_form_count": res["closed_form_count"],
        "brute_force_count": res["brute_force_count"],
        "missing_from_closed_form": len(res["missing_from_closed_form"]),
        "extra_in_closed_form": len(res["extra_in_closed_form"]),
        "agree": not res["missing_from_closed_form"] and not res["extra_in_closed_form"],
    }
    if args.list:
        body["maps"] = [_map_text(R) for R in res["closed_form"]]
    return _doc("classify-degree1", **body), EXIT_OK if body["agree"] else EXIT_MISMATCH


def _pair_text(L, M, b) -> dict:
    return {"L": format_polynomial(L), "M": format_polynomial(M), "beta": str(b)}


def _cmd_search(args) -> tuple[dict, int]:
    F = parse_field_spec(args.field)
    t0 = time.perf_counter()
    pairs = enumerate_good_pairs(F, args.degree, args.k, jobs=args.jobs)
    body = {"field": F.spec_string(), "degree": args.degree, "k": args.k, "count": len(pairs),
            "timing_s": round(time.perf_counter() - t0, 6)}
    shown = pairs if args.limit is None else pairs[: args.limit]
    body["pairs"] = [_pair_text(*t) for t in shown]
    code = EXIT_OK
    if args.compare_closed_form:
        closed = grado2_closed_form(F, args.k) if args.degree == 2 else []
        key = lambda t: (t[0].codes, t[1].codes, t[2].code)  # noqa: E731
        a, b = {key(t) for t in pairs}, {key(t) for t in closed}
        body["closed_form_count"] = len(b)
        body["matches_closed_form"] = a == b
        if a != b:
            code = EXIT_MISMATCH
    return _doc("search-good-pairs", **body), code


def _cmd_agw(args) -> tuple[dict, int]:
    F = parse_field_spec(args.field)
    h = parse_polynomial(F, args.h)
    lhs, rhs = check_agw_criterion(args.r, args.d, h, F)
    body = {"field": F.spec_string(), "r": args.r, "d": args.d, "h": format_polynomial(h),
            "lhs": lhs, "rhs": rhs, "agree": lhs == rhs}
    return _doc("check-agw", **body), EXIT_OK if lhs == rhs else EXIT_MISMATCH


def _cmd_mu_table(args) -> tuple[dict, int]:
    F = parse_field_spec(args.field)
    R = None
    if args.num is not None:
        den = Polynomial.constant(F, 1) if args.den is None else parse_polynomial(F, args.den)
        R = RationalMap(parse_polynomial(F, args.num), den)
    rows = mu_table(R, F, args.n)
    return _doc("mu-table", field=F.spec_string(), n=len(rows), rows=rows), EXIT_OK


COMMANDS = {
    "construct": _cmd_construct,
    "verify-poly": _cmd_verify_poly,
    "classify-degree1": _cmd_classify,
    "search-good-pairs": _cmd_search,
    "check-agw": _cmd_agw,
    "mu-table": _cmd_mu_table,
}


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    args.jobs = getattr(args, "jobs", 1)
    args.indent = getattr(args, "indent", 2)
    if args.jobs < 1:
        print("permpoly: error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        doc, code = COMMANDS[args.command](args)
    except (PermPolyError, OSError) as exc:
        print(f"permpoly {args.command}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    json.dump(doc, out, indent=args.indent or None, sort_keys=False)
    out.write("\n")
    return code


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
