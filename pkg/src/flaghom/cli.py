"""Command-line interface: flaghom {homology,poincare,orientability,verify,cache}.

Exit codes: 0 ok, 1 usage, 2 mismatch, 3 resource guard, 4 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from flaghom import poly
from flaghom.boundary import build_chain_complex
from flaghom.cache import CacheError, cache_read, cache_write
from flaghom.closedform import Unsupported, poincare_closed_form, theta_spec
from flaghom.homology import ConsistencyError, StructureViolation, check_consistency, homology_groups
from flaghom.moves import UnsupportedMove
from flaghom.orient import is_orientable
from flaghom.rootsys import RootSystemError, build_root_system
from flaghom.verify import SUITES, all_thetas, run_suite
from flaghom.weyl import DEFAULT_MAX_ORDER, ResourceError, enumerate_group

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_RESOURCE, EXIT_INTERNAL = 0, 1, 2, 3, 4

FIELDS = (
    "type", "rank", "theta", "cells", "betti", "torsion_ranks", "poincare",
    "orientable", "dim", "mode", "elapsed_ms",
)


class UsageError(Exception):
    pass


class MismatchError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_type(text: str, rank: int | None) -> tuple[str, int]:
    text = text.strip().upper()
    if not text or text[0] not in "ABCDEFG":
        raise UsageError(f"unknown type {text!r}; expected a letter A-G, optionally with rank (e.g. F4)")
    letter, tail = text[0], text[1:]
    if tail:
        if not tail.isdigit():
            raise UsageError(f"cannot parse type {text!r}")
        if rank is not None and rank != int(tail):
            raise UsageError(f"--type {text} conflicts with --rank {rank}")
        rank = int(tail)
    if rank is None:
        raise UsageError(f"type {letter} needs a rank: use --type {letter}N or --rank N")
    try:
        build_root_system(letter, rank)
    except RootSystemError as exc:
        raise UsageError(str(exc)) from None
    if letter == "G":
        raise UsageError(
            "G2 is not supported: its triple bond gives a braid relation of length 6, "
            "for which no degree sign is available"
        )
    return letter, rank


def parse_theta(text: str | None, removed: str | None, rank: int) -> tuple[int, ...]:
    if text is not None and removed is not None:
        raise UsageError("give either --theta or --theta-removed, not both")
    raw = removed if removed is not None else (text or "")
    try:
        idx = [int(x) for x in raw.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"cannot parse index list {raw!r}; expected e.g. \"1,3\"") from None
    bad = [i for i in idx if not 1 <= i <= rank]
    if bad:
        raise UsageError(f"theta indices {bad} out of range 1..{rank}")
    if removed is not None:
        return tuple(i for i in range(1, rank + 1) if i not in set(idx))
    return tuple(sorted(set(idx)))


def _load_table(args, letter: str, rank: int):
    if args.cache:
        try:
            table = cache_read(args.cache)
        except FileNotFoundError:
            table = None
        else:
            if table.rs.name != f"{letter}{rank}":
                raise UsageError(f"cache {args.cache} holds {table.rs.name}, not {letter}{rank}")
            return table
    table = enumerate_group(build_root_system(letter, rank), args.max_order)
    if args.cache:
        cache_write(table, args.cache)
    return table


def _record(letter, rank, theta, h, rs, elapsed_ms) -> dict:
    rep = is_orientable(rs, theta, h.poincare)
    return {
        "type": letter,
        "rank": rank,
        "theta": list(theta),
        "cells": list(h.cells),
        "betti": list(h.betti),
        "torsion_ranks": list(h.torsion_ranks),
        "poincare": list(h.poincare),
        "orientable": rep.orientable_by_betti,
        "dim": rep.dim,
        "mode": "exact" if h.mode == "exact" else "inferred",
        "elapsed_ms": elapsed_ms,
    }


def _compute(args, letter, rank, theta, table=None):
    table = table or _load_table(args, letter, rank)
    t0 = time.perf_counter()
    c = build_chain_complex(table, theta, args.threads)
    if not c.check_d_squared():
        raise ConsistencyError(f"{letter}{rank} theta={list(theta)}: D o D != 0")
    h = homology_groups(c, args.mode, args.threads)
    check_consistency(h)
    if h.violations:
        raise StructureViolation("; ".join(h.violations))
    elapsed = 0 if args.no_timing else int(round((time.perf_counter() - t0) * 1000))
    return table, h, elapsed


def _emit(records: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        payload = records[0] if len(records) == 1 else records
        out.write(json.dumps(payload) + "\n")
    elif fmt == "csv":
        keys = list(records[0])
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for r in records:
            w.writerow([" ".join(map(str, v)) if isinstance(v, list) else v for v in (r[k] for k in keys)])
        out.write(buf.getvalue())
    else:
        for r in records:
            for k, v in r.items():
                if isinstance(v, list) and k in ("poincare", "closed_form", "computed"):
                    v = poly.to_str(v)
                out.write(f"{k:>14}: {v}\n")
            out.write("\n")


def cmd_homology(args, out) -> int:
    letter, rank = parse_type(args.type, args.rank)
    theta = parse_theta(args.theta, args.theta_removed, rank)
    table, h, elapsed = _compute(args, letter, rank, theta)
    _emit([_record(letter, rank, theta, h, table.rs, elapsed)], args.output, out)
    return EXIT_OK


def cmd_poincare(args, out) -> int:
    letter, rank = parse_type(args.type, args.rank)
    theta = parse_theta(args.theta, args.theta_removed, rank)
    cf = poincare_closed_form(letter, rank, theta)
    _, h, elapsed = _compute(args, letter, rank, theta)
    computed = list(h.poincare)
    if isinstance(cf, Unsupported):
        match, closed = "unsupported-closed-form", None
    else:
        closed = list(cf)
        match = "equal" if closed == computed else "MISMATCH"
    rec = {
        "type": letter,
        "rank": rank,
        "theta": list(theta),
        "closed_form": closed,
        "computed": computed,
        "match": match,
        "reason": cf.reason if isinstance(cf, Unsupported) else None,
        "mode": "exact" if h.mode == "exact" else "inferred",
        "elapsed_ms": elapsed,
    }
    if args.output == "text" and closed is None:
        rec["closed_form"] = "unsupported"
    _emit([rec], args.output, out)
    return EXIT_MISMATCH if match == "MISMATCH" else EXIT_OK


def cmd_orientability(args, out) -> int:
    letter, rank = parse_type(args.type, args.rank)
    if args.all_theta:
        thetas = list(all_thetas(rank))
    else:
        thetas = [parse_theta(args.theta, args.theta_removed, rank)]
    table = _load_table(args, letter, rank)
    rows = []
    status = EXIT_OK
    for theta in thetas:
        _, h, _ = _compute(args, letter, rank, theta, table)
        rep = is_orientable(table.rs, theta, h.poincare)
        if not rep.agree:
            status = EXIT_MISMATCH
        rows.append({
            "type": letter,
            "rank": rank,
            "theta": list(theta),
            "theta_type": theta_spec(letter, rank, theta).label,
            "beta_top": rep.beta_top_degree,
            "dim": rep.dim,
            "orientable_by_betti": rep.orientable_by_betti,
            "orientable_by_sum": rep.orientable_by_sum,
            "root_sums": [rep.criterion_sum[a] for a in sorted(rep.criterion_sum)],
        })
    if args.output == "json":
        out.write(json.dumps(rows if args.all_theta else rows[0]) + "\n")
    else:
        _emit(rows, args.output, out)
    return status


def cmd_verify(args, out) -> int:
    res = run_suite(args.suite, args.mode, args.threads)
    for line in res.lines():
        out.write(line + "\n")
    return EXIT_OK if res.ok else EXIT_MISMATCH


def cmd_cache(args, out) -> int:
    if args.read:
        try:
            table = cache_read(args.read)
        except FileNotFoundError:
            raise UsageError(f"no such cache file: {args.read}") from None
        out.write(json.dumps({
            "type": table.rs.type_tag, "rank": table.rs.rank,
            "elements": table.size, "length_profile": table.length_profile(),
        }) + "\n")
        return EXIT_OK
    if not args.type or not args.write:
        raise UsageError("cache needs --read PATH, or --type T --write PATH")
    letter, rank = parse_type(args.type, args.rank)
    table = enumerate_group(build_root_system(letter, rank), args.max_order)
    cache_write(table, args.write)
    out.write(json.dumps({"type": letter, "rank": rank, "elements": table.size, "path": args.write}) + "\n")
    return EXIT_OK


def _common(p: argparse.ArgumentParser, theta: bool = True) -> None:
    p.add_argument("--type", required=True, help="Cartan type, e.g. F4, E6, or a letter with --rank")
    p.add_argument("--rank", type=int, default=None)
    if theta:
        p.add_argument("--theta", default=None, help='simple roots in theta, e.g. "1,3"; "" for the maximal flag')
        p.add_argument("--theta-removed", default=None, help="simple roots NOT in theta (crossed-out nodes)")
    p.add_argument("--mode", choices=("exact", "rank-inferred", "auto"), default="auto")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--output", choices=("json", "csv", "text"), default="json")
    p.add_argument("--cache", default=None, help="group cache file; read if present, written otherwise")
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER, help="largest |W| to enumerate")
    p.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0 (reproducible output)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flaghom", description="Integral homology of real flag manifolds of split type.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("homology", help="Betti numbers and torsion of F_theta")
    _common(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("poincare", help="closed form against the cellular computation")
    _common(p)
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("orientability", help="root-sum and top-Betti orientability tests")
    _common(p)
    p.add_argument("--all-theta", action="store_true", help="report every subset of simple roots")
    p.set_defaults(func=cmd_orientability)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--mode", choices=("exact", "rank-inferred", "auto"), default="auto")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cache", help="write or inspect a group cache")
    p.add_argument("--type", default=None)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--write", default=None, metavar="PATH")
    p.add_argument("--read", default=None, metavar="PATH")
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("flaghom: error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"flaghom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceError, MemoryError) as exc:
        print(f"flaghom: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except CacheError as exc:
        print(f"flaghom: cache error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (StructureViolation, ConsistencyError, UnsupportedMove, AssertionError) as exc:
        print(f"flaghom: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
