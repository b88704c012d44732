"""Command-line front end: ``degcalc {pairs,degrees,bn,castelnuovo,calibrate,verify}``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import classes, intersect, verify
from .exact import format_rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def max_genus() -> int:
    raw = os.environ.get("DEGCALC_MAX_G", "8")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"DEGCALC_MAX_G must be an integer, got {raw!r}") from None


def _check_genus(g: int):
    cap = max_genus()
    if not 2 <= g <= cap:
        raise UsageError(f"genus must satisfy 2 <= g <= {cap} (cap set by DEGCALC_MAX_G), got {g}")


def _parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad genus range {text!r}; expected A..B") from None
    if lo > hi:
        raise UsageError(f"empty genus range {text!r}")
    return list(range(lo, hi + 1))


def _convention(args) -> intersect.PairingConvention:
    return intersect.PairingConvention(
        twos_factor=args.convention,
        z_pairing=getattr(args, "z_pairing", "fiber-rule"),
    )


def _emit(rows: list[dict], columns: list[str], fmt: str, json_payload=None) -> str:
    if fmt == "json":
        return json.dumps(json_payload if json_payload is not None else rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([row[c] for c in columns])
        return buf.getvalue()
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) if rows else len(c) for c in columns}
    lines = ["  ".join(c.ljust(widths[c]) for c in columns).rstrip()]
    for row in rows:
        lines.append("  ".join(str(row[c]).ljust(widths[c]) for c in columns).rstrip())
    return "\n".join(lines) + "\n"


def _monomial_text(mono: dict) -> str:
    parts = []
    for key in ("H", "a", "b", "c"):
        e = mono[key]
        if e:
            name = "h" if key == "H" else key
            parts.append(name if e == 1 else f"{name}^{e}")
    return "(" + "*".join(parts) + ")"


# commands -----------------------------------------------------------------------

def cmd_pairs(args) -> int:
    _check_genus(args.g)
    conv = _convention(args)
    records = intersect.pairing_table(args.g, hecke=args.hecke, conv=conv)
    if args.format == "json":
        out = intersect.records_to_json(records, conv) + "\n"
    elif args.format == "csv":
        out = intersect.records_to_csv(records)
    else:
        out = "".join(f"{_monomial_text(r['monomial'])} = {r['value']}\n" for r in records)
    sys.stdout.write(out)
    return EXIT_OK


def _degree_rows(args) -> list[dict]:
    conv = _convention(args)
    gs = _parse_range(args.g_range)
    for g in gs:
        _check_genus(g)
    rows = []
    if args.type == 2:
        nu = args.nu
        if nu == 3:
            cls = classes.type2_class(3, "odd-moduli")
            provenance = f"odd moduli, {conv.twos_factor.value}"
            for g in gs:
                rows.append({"g": g, "degree": format_rational(intersect.evaluate_degree(cls, g, conv)),
                             "provenance": provenance})
            return rows
        if nu == 4:
            cls = classes.type2_class(4, "hecke-graph", route=args.variant)
            provenance = f"hecke graph, {conv.describe()}, class {args.variant}"
        else:
            raise UsageError(f"type 2 degrees are available for --nu 3 or 4, got {nu}")
    else:
        if args.n not in classes.TYPE3_HECKE_CLASSES:
            raise UsageError(f"type 3 degrees are available for --n 0, 1, 2, got {args.n}")
        cls = classes.type3_class(args.n)
        provenance = f"hecke graph, {conv.describe()}"
    for g in gs:
        if 3 * g - 3 - cls.weight < 0:
            raise UsageError(f"g = {g}: locus has negative expected dimension")
        rows.append({"g": g, "degree": format_rational(intersect.evaluate_degree_Z(cls, g, conv=conv)),
                     "provenance": provenance})
    return rows


def cmd_degrees(args) -> int:
    if args.type == 2 and args.nu is None:
        raise UsageError("--type 2 needs --nu")
    if args.type == 3 and args.n is None:
        raise UsageError("--type 3 needs --n")
    rows = _degree_rows(args)
    doc = intersect.table_document("degrees-table", rows, _convention(args))
    sys.stdout.write(_emit(rows, ["g", "degree", "provenance"], args.format, doc))
    return EXIT_OK


def cmd_bn(args) -> int:
    g = args.g
    if g is None or g < 2:
        raise UsageError("--g >= 2 is required")
    if args.type3 or args.type2:
        if args.type3:
            if args.n is None:
                raise UsageError("--type3 needs --n")
            spec = classes.LocusSpec(classes.TypeIII(args.n), g)
            kind, index = "III", args.n
        else:
            if args.nu is None:
                raise UsageError("--type2 needs --nu")
            spec = classes.LocusSpec(classes.TypeII(args.nu, args.deg_f), g)
            kind, index = "II", args.nu
        record = {"type": kind, "g": g, "index": index,
                  "expected_codim": classes.expected_codim(spec),
                  "expected_dim": classes.expected_dim(spec)}
        if index % 2:
            record["canonical_exponent"] = classes.canonical_exponent(kind, index)
    else:
        if args.r is None or args.d is None:
            raise UsageError("classic loci need --r and --d")
        r, d = args.r, args.d
        spec = classes.LocusSpec(classes.Classic(r, d), g)
        record = {"type": "classic", "g": g, "r": r, "d": d,
                  "rho": classes.brill_noether_rho(g, r, d),
                  "expected_codim": classes.expected_codim(spec)}
        if g - d + r >= 0:
            record["lambda"] = format_rational(classes.lambda_coeff(r, d, g))
            record["class"] = classes.w_class(r, d, g).format()
            if record["rho"] == 0:
                record["count"] = classes.castelnuovo_count(g, r, d)
    if args.format == "json":
        sys.stdout.write(json.dumps(record, indent=2) + "\n")
    else:
        sys.stdout.write("".join(f"{k} = {v}\n" for k, v in record.items()))
    return EXIT_OK


def cmd_castelnuovo(args) -> int:
    sys.stdout.write(f"{classes.castelnuovo_count(args.g, args.r, args.d)}\n")
    return EXIT_OK


def _load_targets(path):
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data.get("targets", [])
    return [intersect.Target.from_json(t) for t in data]


def cmd_calibrate(args) -> int:
    targets = _load_targets(args.targets) if args.targets else list(intersect.DEFAULT_TARGETS)
    heldout = _load_targets(args.heldout) if args.heldout else list(intersect.DEFAULT_HELDOUT)
    report = intersect.calibrate_even_convention(targets, heldout, base=_convention(args))
    if args.format == "json":
        sys.stdout.write(json.dumps(report.to_json(), indent=2) + "\n")
    else:
        sys.stdout.write(report.format() + "\n")
    if not report.found or (report.heldout_results and not report.heldout_ok):
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    entries = verify.run_checks()
    if args.json:
        sys.stdout.write(json.dumps(verify.report_json(entries), indent=2) + "\n")
    else:
        width = max(len(e.check_name) for e in entries)
        for e in entries:
            sys.stdout.write(f"{e.status:<22}  {e.check_name:<{width}}  {e.paper_anchor}\n")
            if e.status != verify.PASS:
                sys.stdout.write(f"{'':<22}  expected: {e.expected}\n{'':<22}  computed: {e.computed}\n")
        summary = verify.report_json(entries)["summary"]
        sys.stdout.write(", ".join(f"{k}: {v}" for k, v in summary.items()) + "\n")
    return EXIT_FAIL if any(e.status == verify.FAIL for e in entries) else EXIT_OK


# parser --------------------------------------------------------------------------

def _add_convention(p, z_pairing=True):
    p.add_argument("--convention", choices=[f.value for f in intersect.TwosFactor], default="pow-q",
                   help="factor in the pairing formula: (2^q - 2) or (2^g - 2)")
    if z_pairing:
        p.add_argument("--z-pairing", choices=[z.value for z in intersect.ZPairing], default="fiber-rule")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="degcalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pairs", help="all top-degree intersection numbers")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--hecke", action="store_true", help="pairings on the Hecke graph")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    _add_convention(p)
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("degrees", help="degrees of Brill-Noether loci")
    p.add_argument("--type", type=int, choices=[2, 3], required=True)
    p.add_argument("--nu", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--g-range", required=True, help="A..B")
    p.add_argument("--variant", choices=list(classes.TYPE2_ROUTES), default="determinant",
                   help="codim-6 type II class used for --nu 4")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    _add_convention(p)
    p.set_defaults(func=cmd_degrees)

    p = sub.add_parser("bn", help="Brill-Noether numbers and classes")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--d", type=int)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--type3", action="store_true")
    group.add_argument("--type2", action="store_true")
    p.add_argument("--n", type=int)
    p.add_argument("--nu", type=int)
    p.add_argument("--deg-f", type=int)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_bn)

    p = sub.add_parser("castelnuovo", help="g! * lambda(r, d, g) when rho = 0")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_castelnuovo)

    p = sub.add_parser("calibrate", help="pin the even-moduli degree convention")
    p.add_argument("--targets", help="JSON list of {type, nu|n, g, value}")
    p.add_argument("--heldout", help="JSON list of held-out targets")
    p.add_argument("--format", choices=["text", "json"], default="text")
    _add_convention(p)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("verify", help="run every reproducibility check")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError, OSError) as exc:
        print(f"degcalc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
