"""Command-line front end.

Exit codes: 0 success (or every suite passed), 1 a verification failed,
2 invalid input or a size bound that prevents the command from running.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from .cyclotomic import is_prime
from .errors import BoundExceeded, IdentityViolation, MembershipError, SupercharError
from .finite_field import FieldCtx
from .group import DEFAULT_BRUTE_BOUND, DEFAULT_STREAM_BOUND, SylowGroup
from .oracle import SUITES, verify_suite
from .roots import FAMILIES, Family, Root, basic_subsets, check_root, count_basic_pairs
from .superclass import SuperclassModel
from .table import SuperTable

log = logging.getLogger("superchar")


class UsageError(Exception):
    """Invalid command-line input (exit code 2)."""


def _parse_modulus(text: Optional[str]) -> Optional[tuple[int, ...]]:
    if text is None:
        return None
    try:
        return tuple(int(c) for c in text.replace(" ", "").split(","))
    except ValueError:
        raise UsageError(f"cannot parse modulus {text!r}; use comma separated coefficients, constant first")


def _group(args) -> SylowGroup:
    if args.p == 2:
        raise UsageError("p must be odd")
    if args.p < 3 or not is_prime(args.p):
        raise UsageError(f"p must be an odd prime, got {args.p}")
    if args.e < 1:
        raise UsageError(f"e must be at least 1, got {args.e}")
    if args.n < 1:
        raise UsageError(f"n must be at least 1, got {args.n}")
    try:
        ctx = FieldCtx(args.p, args.e, _parse_modulus(args.modulus))
        return SylowGroup(Family(args.family, args.n), ctx)
    except ValueError as exc:
        raise UsageError(str(exc))


def _write(args, text: str) -> None:
    if args.out in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        log.info("wrote %s", args.out)


# commands -----------------------------------------------------------------------------------


def cmd_table(args) -> int:
    G = _group(args)
    order = G.ctx.q ** len(G.family.roots)
    if order > args.max_stream_order:
        raise UsageError(f"|U| = {order} exceeds the max streaming order {args.max_stream_order}")
    table = SuperTable.build(G, bound=args.max_stream_order)
    _write(args, table.to_csv() if args.format == "csv" else table.to_json())
    return 0


def _suites(text: str) -> list[str]:
    if text == "all":
        return list(SUITES)
    names = [s.strip() for s in text.split(",") if s.strip()]
    unknown = [s for s in names if s not in SUITES]
    if unknown or not names:
        raise UsageError(f"unknown suite(s) {unknown or text!r}; choose from {', '.join(SUITES)} or all")
    return names


def cmd_verify(args) -> int:
    names = _suites(args.suite)
    G = _group(args)
    report = verify_suite(G, names, args.max_group_order, args.max_stream_order)
    if args.out is None:
        print(report.text())
    else:
        _write(args, json.dumps(report.to_json(), indent=1) + "\n")
        print(report.text(), file=sys.stderr)
    for s in report.suites:
        if s.status == "skipped":
            print(f"note: suite {s.suite} skipped ({s.reason})", file=sys.stderr)
    return 0 if report.ok else 1


def _parse_coords(G: SylowGroup, items) -> dict:
    coords = {}
    for name, value in items:
        try:
            a = Root.parse(str(name))
            check_root(G.family, a)
            v = int(value)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"bad coordinate {name!r}: {exc}")
        if not 0 <= v < G.ctx.q:
            raise UsageError(f"coordinate {v} is not a canonical element of F_{G.ctx.q}")
        coords[a] = v
    return coords


def _read_element(G: SylowGroup, args):
    """The group element named on the command line, as a flat matrix."""
    if args.coords is not None:
        items = []
        for part in filter(None, (t.strip() for t in args.coords.split(","))):
            name, sep, value = part.partition("=")
            if not sep:
                raise UsageError(f"coordinates must look like e1-e2=1, got {part!r}")
            items.append((name, value))
        return G.group_from_lie(G.lie_from_coords(_parse_coords(G, items)))
    if args.matrix is not None:
        text = args.matrix
    else:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc}")
        stripped = text.strip()
        if stripped.startswith("[") or stripped.startswith("{"):
            try:
                data = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise UsageError(f"invalid JSON in {args.file}: {exc}")
            if isinstance(data, dict) and "rows" in data:
                data = data["rows"]
            if isinstance(data, dict):
                return G.group_from_lie(G.lie_from_coords(_parse_coords(G, data.items())))
            try:
                rows = [[int(x) for x in r] for r in data]
            except (TypeError, ValueError):
                raise UsageError("matrix rows must be lists of integers")
            return G.check_group(G.from_rows(rows))
        text = stripped.replace("\n", ";")
    try:
        rows = [[int(x) for x in row.replace(",", " ").split()] for row in text.split(";") if row.strip()]
    except ValueError:
        raise UsageError("matrix entries must be integers in [0, q)")
    return G.check_group(G.from_rows(rows))


def cmd_classify(args) -> int:
    G = _group(args)
    try:
        z = _read_element(G, args)
    except MembershipError as exc:
        raise UsageError(f"element is not in U: {exc}")
    S = SuperclassModel(G)
    pair = S.superclass_of(z)
    order = G.ctx.q ** len(G.family.roots)
    if order <= args.max_stream_order:
        size = str(S.superclass_size(pair, args.max_stream_order))
    else:
        size = f"not computed (|U| = {order} exceeds the max streaming order)"
    rep = G.to_rows(S.representative(pair))
    out = [pair.label(), f"|K| = {size}", "representative:"]
    out += ["  " + " ".join(str(x) for x in r) for r in rep]
    _write(args, "\n".join(out) + "\n")
    return 0


def cmd_info(args) -> int:
    G = _group(args)
    fam, ctx = G.family, G.ctx
    nroots = len(fam.roots)
    lines = [
        f"family: {fam.letter}{fam.n}",
        f"field: q = {ctx.q} = {ctx.p}^{ctx.e}",
        f"modulus (constant first): {list(ctx.modulus)}",
        "field elements: integers c0 + c1*p + ... for c0 + c1*t + ...",
        f"m = {G.m}",
        f"|Phi| = {nroots}",
        f"|U| = q^{nroots} = {ctx.q ** nroots}",
        f"basic subsets = {len(basic_subsets(fam))}",
        f"basic pairs = {count_basic_pairs(fam, ctx.q)}",
        "indices (mirror order): " + " ".join(str(i) for i in fam.indices),
    ]
    _write(args, "\n".join(lines) + "\n")
    return 0


# parser --------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", required=True, choices=FAMILIES, help="B, C or D")
    common.add_argument("--n", type=int, required=True, help="rank")
    common.add_argument("--p", type=int, required=True, help="odd prime characteristic")
    common.add_argument("--e", type=int, default=1, help="degree of F_q over F_p (default 1)")
    common.add_argument("--modulus", help="monic irreducible modulus, comma separated, constant term first")
    common.add_argument(
        "--max-group-order",
        type=int,
        default=DEFAULT_BRUTE_BOUND,
        help=f"largest |U| enumerated in memory (default {DEFAULT_BRUTE_BOUND})",
    )
    common.add_argument(
        "--max-stream-order",
        type=int,
        default=DEFAULT_STREAM_BOUND,
        help=f"largest |U| streamed element by element (default {DEFAULT_STREAM_BOUND})",
    )
    common.add_argument("--out", help="output path, - for stdout")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(
        prog="superchar",
        description="Superclasses and supercharacters of Sylow p-subgroups of classical groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="write the supercharacter table")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", default="all", help="all, or a comma separated list of: " + ", ".join(SUITES))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", parents=[common], help="find the superclass of an element")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", help="rows separated by ';', entries by ',' or spaces")
    src.add_argument("--file", help="JSON rows, JSON {root: value} coordinates, or one row per line")
    src.add_argument("--coords", help="Lie algebra coordinates such as e1-e2=1,2e1=2")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("info", parents=[common], help="print facts about the configuration")
    p.set_defaults(func=cmd_info)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (UsageError, BoundExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IdentityViolation as exc:
        print(f"identity violated: {exc}", file=sys.stderr)
        return 1
    except (SupercharError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # keep malformed input from surfacing as a traceback
        log.debug("unexpected error", exc_info=True)
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
