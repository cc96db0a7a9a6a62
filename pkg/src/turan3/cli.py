"""The ``turan3`` command line.

Exit codes: 0 success, 1 disagreement with a certified constant (or an
invalid deduction), 2 usage error, 3 inconclusive (limit reached, Unknown).
Machine-readable output is one JSON record per line.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import shlex
import sys
import time
from dataclasses import asdict, dataclass
from typing import Sequence

from . import __version__
from .core import format_hg3, read_hg3, write_hg3
from .iso import are_isomorphic, embeds_into
from .patterns import ConstructionSpec, as_pattern, construct, contains
from .ramsey import (
    InvalidStep,
    Verdict,
    check_coloring,
    read_col3,
    search_coloring,
    verify_deduction,
    write_col3,
)
from .search import FLAGS, ConstraintSet, SearchConfig, Status, max_edges
from .turan import TABLES, CertifiedDisagreement, conditional_turan, paper_value, reproduce_table, turan, turan_order

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3

CSV_COLUMNS = ("n", "paper_value", "construction_value", "search_value", "search_status", "agree")


@dataclass
class RunRecord:
    command_line: str
    config: dict
    outcome: dict
    wall_time_ms: int
    engine_version: str = __version__


class UsageError(Exception):
    pass


def _emit(obj: dict, out) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _names(text: str | None, flag: str) -> tuple[str, ...]:
    if not text:
        return ()
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    for s in names:
        try:
            as_pattern(s)
        except (KeyError, ValueError) as exc:
            raise UsageError(f"{flag}: {exc}") from None
    return names


def _required(text: str | None):
    if text is None:
        return None
    if text.endswith(".hg3"):
        return read_hg3(text)
    _names(text, "--require")
    return text


def _config(args: argparse.Namespace) -> SearchConfig:
    threads = args.threads
    if threads is None and os.environ.get("TURAN3_THREADS"):
        threads = int(os.environ["TURAN3_THREADS"])
    limit = args.time_limit
    if limit is None and os.environ.get("TURAN3_TIME_LIMIT"):
        limit = float(os.environ["TURAN3_TIME_LIMIT"])
    try:
        return SearchConfig(
            time_limit=limit,
            enumerate_all=getattr(args, "enumerate", False),
            worker_count=threads or 1,
            node_limit=args.node_limit,
        )
    except ValueError as exc:
        raise UsageError(f"--time-limit/--threads/--node-limit: {exc}") from None


def _table_for(forbidden: tuple[str, ...], order: int, required) -> str | None:
    for name, spec in TABLES.items():
        if (set(spec.forbidden) == set(forbidden) and spec.order == order
                and spec.required == required and not spec.flags):
            return name
    return None


# --- subcommands ----------------------------------------------------------------


def cmd_search(args, out) -> tuple[int, dict]:
    flags = frozenset(_names_plain(args.flags))
    bad = flags - FLAGS
    if bad:
        raise UsageError(f"--flags: unknown flag(s) {', '.join(sorted(bad))}; known: {', '.join(sorted(FLAGS))}")
    cons = ConstraintSet(_names(args.forbid, "--forbid"), _required(args.require), (), flags)
    outcome = max_edges(args.n, cons, _config(args))
    query = {"n": args.n, **cons.describe()}
    rec = outcome.to_record(query)
    _emit(rec, out)
    return (EXIT_UNKNOWN if outcome.status == Status.LOWER_BOUND_ONLY else EXIT_OK), rec


def _names_plain(text: str | None) -> list[str]:
    return [s.strip() for s in (text or "").split(",") if s.strip()]


def cmd_turan(args, out) -> tuple[int, dict]:
    forbidden = _names(args.forbid, "--forbid")
    if not forbidden:
        raise UsageError("--forbid: at least one pattern is required")
    required = _required(args.require)
    if args.order > 1 and required is not None:
        raise UsageError("--order and --require cannot be combined")
    cfg = _config(args)
    if required is not None:
        cv = conditional_turan(args.n, forbidden, required, cfg)
    elif args.order > 1:
        cv = turan_order(args.n, forbidden, args.order, cfg)
    else:
        cv = turan(args.n, forbidden, cfg)
    rec = cv.to_record()
    table = _table_for(forbidden, args.order, required if isinstance(required, str) else None)
    code = EXIT_OK
    if table is not None:
        expected = paper_value(table, args.n)
        rec["table"] = table
        rec["paper_value"] = expected
        if expected is not None and cv.status == Status.EXACT and cv.value != expected:
            code = EXIT_DISAGREE
    if cv.status == Status.LOWER_BOUND_ONLY and code == EXIT_OK:
        code = EXIT_UNKNOWN
    _emit(rec, out)
    return code, rec


def cmd_table(args, out) -> tuple[int, dict]:
    if args.name not in TABLES:
        raise UsageError(f"--name: unknown table {args.name!r}; known: {', '.join(TABLES)}")
    ns = None
    if args.ns:
        try:
            ns = [int(x) for x in args.ns.split(",")]
        except ValueError:
            raise UsageError(f"--ns: expected comma-separated integers, got {args.ns!r}") from None
    rows = reproduce_table(args.name, args.search_max_n, _config(args), ns)
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in rows:
            w.writerow(["" if r[c] is None else r[c] for c in CSV_COLUMNS])
    else:
        for r in rows:
            _emit(r, out)
    code = EXIT_OK if all(r["agree"] for r in rows) else EXIT_DISAGREE
    if code == EXIT_OK and any(r["search_status"] == Status.LOWER_BOUND_ONLY.value for r in rows):
        code = EXIT_UNKNOWN
    return code, {"rows": rows}


def cmd_construct(args, out) -> tuple[int, dict]:
    sizes = tuple(int(x) for x in _names_plain(args.sizes))
    try:
        spec = ConstructionSpec.parse(args.kind, args.n, sizes)
        if spec.kind == "cliqueunion" and args.n is not None and args.n != spec.n:
            raise ValueError(f"sizes sum to {spec.n}, not --n {args.n}")
        H = construct(spec)
    except ValueError as exc:
        raise UsageError(f"construct: {exc}") from None
    if args.output:
        write_hg3(H, args.output)
    else:
        out.write(format_hg3(H))
    return EXIT_OK, {"kind": spec.kind, "n": H.n, "m": H.m}


def cmd_check(args, out) -> tuple[int, dict]:
    H = read_hg3(args.file)
    p = as_pattern(_names(args.pattern, "--pattern")[0])
    w = contains(H, p)
    out.write(("present" if w is not None else "absent") + "\n")
    return EXIT_OK, {"pattern": p.name, "present": w is not None, "witness": w}


def cmd_iso(args, out) -> tuple[int, dict]:
    A, B = read_hg3(args.a), read_hg3(args.b)
    if args.embed:
        verdict = "embeds" if embeds_into(A, B) else "none"
    else:
        verdict = "isomorphic" if are_isomorphic(A, B) else "not-isomorphic"
    out.write(verdict + "\n")
    return EXIT_OK, {"verdict": verdict}


def cmd_ramsey(args, out) -> tuple[int, dict]:
    if args.action == "verify":
        try:
            proof = verify_deduction(args.r, compute=args.compute, config=_config(args), raise_invalid=False)
        except ValueError as exc:
            raise UsageError(f"--r: {exc}") from None
        except CertifiedDisagreement as exc:
            _emit({"error": str(exc)}, out)
            return EXIT_DISAGREE, {"error": str(exc)}
        rec = proof.to_record()
        _emit(rec, out)
        return (EXIT_OK if proof.valid else EXIT_DISAGREE), rec
    if args.action == "witness":
        verdict, col = search_coloring(args.n, args.colors, as_pattern(args.pattern), _config(args))
        rec = {"n": args.n, "r": args.colors, "pattern": args.pattern, "verdict": verdict.value}
        if col is not None and args.output:
            write_col3(col, args.output)
            rec["file"] = args.output
        _emit(rec, out)
        return (EXIT_UNKNOWN if verdict == Verdict.UNKNOWN else EXIT_OK), rec
    col = read_col3(args.file)
    hit = check_coloring(col, as_pattern(args.pattern))
    rec = {"n": col.n, "r": col.r, "pattern": args.pattern, "monochromatic": hit is not None}
    if hit is not None:
        rec["color"], rec["witness"] = hit[0], list(hit[1])
    _emit(rec, out)
    return EXIT_OK, rec


# --- parser ---------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _add_limits(p: argparse.ArgumentParser) -> None:
    p.add_argument("--time-limit", type=float, default=None, help="seconds (env TURAN3_TIME_LIMIT)")
    p.add_argument("--threads", type=int, default=None, help="worker processes (env TURAN3_THREADS)")
    p.add_argument("--node-limit", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="turan3", description="Exact Turán and Ramsey computations for 3-graphs.")
    ap.add_argument("--version", action="version", version=f"turan3 {__version__}")
    ap.add_argument("--record", metavar="FILE", help="append a JSON run record to FILE")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("search", help="maximum edges under constraints")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--forbid", default="")
    p.add_argument("--require", default=None, help="pattern name or .hg3 file")
    p.add_argument("--flags", default="")
    p.add_argument("--enumerate", action="store_true")
    _add_limits(p)

    p = sub.add_parser("turan", help="ordinary, higher-order or conditional Turán number")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--forbid", required=True)
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--require", default=None)
    _add_limits(p)

    p = sub.add_parser("table", help="reproduce a table of certified values")
    p.add_argument("--name", required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--search-max-n", type=int, default=None, help="also search rows with n up to this")
    p.add_argument("--ns", default=None, help="comma-separated subset of n")
    _add_limits(p)

    p = sub.add_parser("construct", help="write a named construction as .hg3")
    p.add_argument("kind", choices=ConstructionSpec.KINDS)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--sizes", default=None, help="clique sizes for cliqueunion, e.g. 6,6,1")
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("check", help="is a pattern present in a .hg3 graph")
    p.add_argument("--file", required=True)
    p.add_argument("--pattern", required=True)

    p = sub.add_parser("iso", help="compare two .hg3 graphs")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--embed", action="store_true", help="test whether a embeds into b")

    p = sub.add_parser("ramsey", help="Ramsey deduction and colorings")
    rsub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = rsub.add_parser("verify")
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--compute", action="store_true", help="search Turán values instead of citing")
    _add_limits(q)
    q = rsub.add_parser("witness")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--colors", type=int, required=True)
    q.add_argument("--pattern", default="P")
    q.add_argument("-o", "--output", default=None)
    _add_limits(q)
    q = rsub.add_parser("check")
    q.add_argument("--file", required=True)
    q.add_argument("--pattern", default="P")
    return ap


COMMANDS = {
    "search": cmd_search,
    "turan": cmd_turan,
    "table": cmd_table,
    "construct": cmd_construct,
    "check": cmd_check,
    "iso": cmd_iso,
    "ramsey": cmd_ramsey,
}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    t0 = time.monotonic()
    try:
        args = build_parser().parse_args(argv)
        code, outcome = COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"turan3: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"turan3: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CertifiedDisagreement as exc:
        print(f"turan3: disagreement: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except InvalidStep as exc:
        print(f"turan3: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    if args.record:
        snapshot = {k: v for k, v in vars(args).items() if k != "record"}
        rec = RunRecord(shlex.join(["turan3", *_without_record(argv)]), snapshot, outcome,
                        round((time.monotonic() - t0) * 1000))
        with open(args.record, "a") as fh:
            fh.write(json.dumps(asdict(rec), sort_keys=True, default=str) + "\n")
    return code


def _without_record(argv: list[str]) -> list[str]:
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
        elif a == "--record":
            skip = True
        elif not a.startswith("--record="):
            out.append(a)
    return out


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
