"""Command-line front door.

Verbs: poly, roots, verify, sequence, lattice, table, plot.  Exit codes
follow the report semantics: 0 when nothing failed, 1 on any failing
check, 2 when something stayed undecided, 64 on usage errors.  Output
formats are text (default), json (big integers as decimal strings), and
csv (with a header row); all of them carry the exact values.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .nclattice import build_group, characteristic_poly, load_lattice, nc_interval, save_lattice, verify_mobius_identity
from .skewgrowth import CoxeterType, skew_growth
from .verify import SUITE_ORDER, exit_code, run_suites

_EPS_DEFAULT = Fraction(1, 10**12)

_TABLE_B_ORDER = ("E6", "E7", "E8", "F4", "G2", "H3", "H4")


class _Parser(argparse.ArgumentParser):
    """argparse with the sysexits usage code instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(64)


def _parse_type(parser: _Parser, spec: str) -> CoxeterType:
    try:
        return CoxeterType.parse(spec)
    except ValueError as e:
        parser.error(str(e))


def _parse_eps(parser: _Parser, text: str) -> Fraction:
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError):
        parser.error(f"cannot parse eps {text!r} as a rational")
    if eps <= 0:
        parser.error("eps must be positive")
    return eps


def _poly_payload(ct: CoxeterType) -> dict:
    n = skew_growth(ct).poly
    return {"type": str(ct), "rank": ct.rank, "coeffs": [str(c) for c in n.coeffs]}


def _emit_poly(ct: CoxeterType, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(_poly_payload(ct), indent=2))
    elif fmt == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["degree", "coefficient"])
        for k, c in enumerate(skew_growth(ct).poly.coeffs):
            w.writerow([k, str(c)])
    else:
        print(skew_growth(ct).poly)


def _box_fields(box) -> dict:
    if box.exact is not None:
        return {"exact": str(box.exact), "approx": f"{float(box.exact):.10f}"}
    return {"low": str(box.low), "high": str(box.high), "approx": f"{float(box.midpoint()):.10f}"}


def _box_text(box) -> str:
    if box.exact is not None:
        return f"{box.exact}  (exact)"
    return f"{float(box.midpoint()):.10f}  (width <= {float(box.width):.2e})"


def _emit_roots(ct: CoxeterType, eps: Fraction, fmt: str) -> None:
    from .roots import isolate_roots, refine_root

    n = skew_growth(ct).poly
    boxes = [refine_root(n, b, eps) for b in isolate_roots(n, 0, 1)]
    if fmt == "json":
        rows = [{"nu": nu, **_box_fields(b)} for nu, b in enumerate(boxes, start=1)]
        print(json.dumps({"type": str(ct), "rank": ct.rank, "roots": rows}, indent=2))
    elif fmt == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["nu", "approx", "low", "high", "exact"])
        for nu, b in enumerate(boxes, start=1):
            f = _box_fields(b)
            w.writerow([nu, f["approx"], f.get("low", f.get("exact")), f.get("high", f.get("exact")), f.get("exact", "")])
    else:
        for nu, b in enumerate(boxes, start=1):
            print(f"{nu:>4}  {_box_text(b)}")


def _emit_sequence(family: str, to: int, eps: Fraction, sandwich: bool, fmt: str) -> None:
    from .roots import smallest_root_sequence

    seq = smallest_root_sequence(family, to, eps)
    if fmt == "json":
        rows = []
        for l, box in seq:
            row = {"l": l, **_box_fields(box)}
            if sandwich:
                row["sandwich"] = "ok"
            rows.append(row)
        print(json.dumps({"family": family, "rows": rows}, indent=2))
    elif fmt == "csv":
        w = csv.writer(sys.stdout)
        header = ["l", "approx", "low", "high", "exact"] + (["sandwich"] if sandwich else [])
        w.writerow(header)
        for l, box in seq:
            f = _box_fields(box)
            row = [l, f["approx"], f.get("low", f.get("exact")), f.get("high", f.get("exact")), f.get("exact", "")]
            if sandwich:
                row.append("ok")
            w.writerow(row)
    else:
        for l, box in seq:
            tail = "  sandwich=ok" if sandwich else ""
            print(f"{l:>4}  {_box_text(box)}{tail}")


def _emit_reports(reports, fmt: str) -> None:
    if fmt == "json":
        rows = [{"check": r.check, "type": r.type, "rank": r.rank, "status": r.status, "details": r.details} for r in reports]
        print(json.dumps(rows, indent=2))
    elif fmt == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["check", "type", "rank", "status", "details"])
        for r in reports:
            w.writerow([r.check, r.type, r.rank, r.status, r.details])
    else:
        for r in reports:
            tail = f"  {r.details}" if r.details else ""
            print(f"{r.status:9s} {r.check:20s} {r.type:8s}{tail}")


def _emit_table_b(fmt: str) -> None:
    rows = [(name, str(skew_growth(CoxeterType.parse(name)).poly)) for name in _TABLE_B_ORDER]
    rows.append(("I2(p)", "1 - pt + (p - 1)t^2"))
    if fmt == "json":
        print(json.dumps([{"type": n, "N": s} for n, s in rows], indent=2))
    elif fmt == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["type", "N"])
        w.writerows(rows)
    else:
        for name, s in rows:
            print(f"{name:>6}: {s}")


def _emit_table_a(family: str, to: int, fmt: str) -> None:
    start = {"A": 1, "B": 2, "D": 4}[family]
    rows = [(f"{family}{l}", str(skew_growth(CoxeterType(family, l)).poly)) for l in range(start, to + 1)]
    if fmt == "json":
        print(json.dumps([{"type": n, "N": s} for n, s in rows], indent=2))
    elif fmt == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["type", "N"])
        w.writerows(rows)
    else:
        for name, s in rows:
            print(f"{name:>6}: {s}")


def _emit_lattice(ct: CoxeterType, max_order: int, subset_limit: int, cache, fmt: str) -> int:
    import os

    if cache and os.path.exists(cache):
        ncl = load_lattice(cache)
        if ncl.ctype != ct:
            print(f"cache holds {ncl.ctype}, not {ct}", file=sys.stderr)
            return 1
    else:
        group = build_group(ct, max_order=max_order)
        ncl = nc_interval(group)
        if cache:
            save_lattice(ncl, cache)
    n = skew_growth(ct).poly
    chi = characteristic_poly(ncl)
    try:
        mobius_ok = verify_mobius_identity(ncl, subset_limit=subset_limit)
        mobius_txt = "pass" if mobius_ok else "fail"
    except ValueError as e:
        mobius_ok, mobius_txt = True, f"skipped ({e})"
    payload = {
        "type": str(ct),
        "elements": len(ncl.elements),
        "atoms": len(ncl.atoms),
        "characteristic_poly": str(chi),
        "matches_closed_form": chi == n,
        "mobius_identity": mobius_txt,
    }
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        for k, v in payload.items():
            print(f"{k}: {v}")
    return 0 if (chi == n and mobius_ok) else 1


def _default_out(ct: CoxeterType) -> str:
    name = str(ct).replace("(", "_").replace(")", "")
    return f"{name}.svg"


def build_parser() -> _Parser:
    parser = _Parser(prog="dualskew", description="Skew-growth polynomials of dual Artin monoids: exact values, root certificates, identity suites.")
    sub = parser.add_subparsers(dest="verb", required=True)

    fmt_kw = dict(choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("poly", help="print the skew-growth polynomial of one type")
    p.add_argument("typespec")
    p.add_argument("--format", **fmt_kw)

    p = sub.add_parser("roots", help="isolate all roots in (0, 1], decreasing")
    p.add_argument("typespec")
    p.add_argument("--eps", default=None, help="refinement width, a rational like 1e-12 or 1/4096")
    p.add_argument("--format", **fmt_kw)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", choices=tuple(SUITE_ORDER) + ("all",))
    p.add_argument("typespec", nargs="?", default=None, help="restrict the suite to one type")
    p.add_argument("--to", type=int, default=None, help="sweep bound (rank)")
    p.add_argument("--family", choices=("A", "B", "D"), default=None)
    p.add_argument("--eps", default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-order", type=int, default=None, help="largest group order the lattice suite will build")
    p.add_argument("--subset-limit", type=int, default=None, help="largest atom count for the subset fold")
    p.add_argument("--precision-cap", type=int, default=None, help="bit ceiling for the Bruns enclosures")
    p.add_argument("--format", **fmt_kw)

    p = sub.add_parser("sequence", help="smallest-root sequence of a family")
    p.add_argument("family", choices=("A", "B", "D"))
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--eps", default=None)
    p.add_argument("--sandwich", action="store_true", help="certify the D sandwich per rank")
    p.add_argument("--format", **fmt_kw)

    p = sub.add_parser("lattice", help="build the noncrossing-partition interval and re-derive N from it")
    p.add_argument("typespec")
    p.add_argument("--max-order", type=int, default=10**6)
    p.add_argument("--subset-limit", type=int, default=20)
    p.add_argument("--cache", default=None, help="JSON file to load the interval from, or save it to")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("table", help="regenerate a catalog table")
    p.add_argument("which", choices=("A", "B"))
    p.add_argument("--family", choices=("A", "B", "D"), default="A")
    p.add_argument("--to", type=int, default=8)
    p.add_argument("--format", **fmt_kw)

    p = sub.add_parser("plot", help="render the zero locus to an SVG plus a CSV of the boxes")
    p.add_argument("typespec")
    p.add_argument("--out", default=None, help="output SVG path (default <type>.svg)")
    p.add_argument("--style", choices=("plain", "grid"), default="plain")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)

        if args.verb == "poly":
            _emit_poly(_parse_type(parser, args.typespec), args.format)
            return 0

        if args.verb == "roots":
            eps = _parse_eps(parser, args.eps) if args.eps else _EPS_DEFAULT
            _emit_roots(_parse_type(parser, args.typespec), eps, args.format)
            return 0

        if args.verb == "verify":
            options = {
                "to": args.to,
                "family": args.family,
                "max_order": args.max_order,
                "subset_limit": args.subset_limit,
                "precision_cap": args.precision_cap,
            }
            if args.eps:
                options["eps"] = _parse_eps(parser, args.eps)
            if args.typespec:
                options["only"] = _parse_type(parser, args.typespec)
            reports = run_suites(args.suite, jobs=args.jobs, **options)
            _emit_reports(reports, args.format)
            return exit_code(reports)

        if args.verb == "sequence":
            eps = _parse_eps(parser, args.eps) if args.eps else _EPS_DEFAULT
            if args.sandwich and args.family != "D":
                parser.error("--sandwich applies to family D")
            try:
                _emit_sequence(args.family, args.to, eps, args.sandwich, args.format)
            except ValueError as e:
                parser.error(str(e))
            return 0

        if args.verb == "lattice":
            ct = _parse_type(parser, args.typespec)
            try:
                return _emit_lattice(ct, args.max_order, args.subset_limit, args.cache, args.format)
            except ValueError as e:
                print(str(e), file=sys.stderr)
                return 1

        if args.verb == "table":
            if args.which == "B":
                _emit_table_b(args.format)
            else:
                start = {"A": 1, "B": 2, "D": 4}[args.family]
                if args.to < start:
                    parser.error(f"family {args.family} starts at rank {start}")
                _emit_table_a(args.family, args.to, args.format)
            return 0

        if args.verb == "plot":
            from .plotting import plot_roots

            ct = _parse_type(parser, args.typespec)
            out = args.out if args.out else _default_out(ct)
            try:
                svg, companion = plot_roots(ct, out, style=args.style)
            except OSError as e:
                print(f"cannot write {out}: {e}", file=sys.stderr)
                return 1
            print(svg)
            print(companion)
            return 0

        parser.error(f"unknown verb {args.verb!r}")
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 64


if __name__ == "__main__":
    sys.exit(main())
