"""qtx command line: analyze, search, propagate, compare, verify.

Exit codes: 0 success, 2 verification failure, 3 parse error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .constrx import QuantumParams, propagate, prune_dominated
from .galois import FieldError
from .qt import QTCodeSpec
from .search import (InfeasibleError, SearchConfig, TableError, analyze, compare_one,
                     format_report, read_table, run_search, verify_record)

EXIT_OK, EXIT_VERIFY, EXIT_PARSE = 0, 2, 3
DEFAULT_BUDGET = 5e10


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None


def _load_ndjson(path: str) -> list[dict]:
    out = []
    try:
        fh = sys.stdin if path == "-" else open(path)
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    with fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise ParseError(f"{path}: line {lineno} column {exc.colno}: {exc.msg}") from None
    return out


def _load_spec(path: str) -> QTCodeSpec:
    obj = _load_json(path)
    try:
        return QTCodeSpec.from_json(obj)
    except (KeyError, ValueError, TypeError, FieldError) as exc:
        raise ParseError(f"{path}: invalid spec: {exc}") from None


def _params_of(obj: dict) -> QuantumParams:
    try:
        return QuantumParams.from_json(obj["params"] if "params" in obj else obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"invalid record: {exc}") from None


def _set_threads(n: int | None):
    if n:
        import numba
        numba.set_num_threads(max(1, min(n, numba.config.NUMBA_NUM_THREADS)))


def _emit(obj):
    print(json.dumps(obj, sort_keys=True))


# ---- subcommands --------------------------------------------------------------------
def cmd_analyze(args) -> int:
    spec = _load_spec(args.spec)
    _set_threads(args.threads)
    rep = analyze(spec, budget=args.budget or DEFAULT_BUDGET, distances=not args.no_distances)
    if args.json:
        _emit(rep)
    else:
        print("\n".join(format_report(rep)))
    return EXIT_OK


def _search_config(args) -> SearchConfig:
    obj = _load_json(args.config) if args.config else {}
    for key in ("regime", "q", "m", "ell", "lam", "e", "seed", "iterations", "threshold",
                "retries", "budget", "defective_slot"):
        val = getattr(args, key, None)
        if val is not None:
            obj[key] = val
    if args.dims:
        try:
            obj["dims"] = json.loads(args.dims)
        except json.JSONDecodeError as exc:
            raise ParseError(f"--dims: {exc.msg}") from None
    try:
        return SearchConfig.from_json(obj)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"invalid search config: {exc}") from None


def cmd_search(args) -> int:
    cfg = _search_config(args)
    table = read_table(args.known_table) if args.known_table else None
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for rec in run_search(cfg, threads=args.threads or 1, timing=args.timing, table=table):
            print(rec.dumps(), file=out, flush=True)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_PARSE
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def cmd_propagate(args) -> int:
    base = [_params_of(r) for r in _load_ndjson(args.results)]
    found = list(base)
    for p in base:
        found.extend(propagate(p, args.depth))
    for p in prune_dominated(found):
        _emit(p.to_json())
    return EXIT_OK


def cmd_compare(args) -> int:
    if not args.known_table:
        raise ParseError("compare needs --known-table")
    table = read_table(args.known_table)
    for r in _load_ndjson(args.results):
        p = _params_of(r)
        _emit({"line": p.line(), "status": compare_one(p, table)})
    return EXIT_OK


def cmd_verify(args) -> int:
    _set_threads(args.threads)
    ok_all = True
    for lineno, rec in enumerate(_load_ndjson(args.results), start=1):
        if "spec" not in rec or "params" not in rec:
            raise ParseError(f"{args.results}: record {lineno} lacks spec/params")
        try:
            ok, line = verify_record(rec, budget=args.budget or DEFAULT_BUDGET)
        except (ValueError, FieldError) as exc:
            ok, line = False, f"error: {exc}"
        ok_all &= ok
        _emit({"record": lineno, "ok": ok, "recomputed": line,
               "stored": _params_of(rec).bounds_line()})
    return EXIT_OK if ok_all else EXIT_VERIFY


# ---- parser ------------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--budget", type=float, default=None,
                        help="cap on enumerated messages per weight computation")
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--regime", choices=["hermitian", "symplectic", "lambda_pair"], default=None)
    common.add_argument("--known-table", default=None, help="CSV with columns q,n,k,d")
    common.add_argument("--threshold", type=int, default=None)

    p = _Parser(prog="qtx", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="report on a QT spec file")
    a.add_argument("spec")
    a.add_argument("--json", action="store_true")
    a.add_argument("--no-distances", action="store_true")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("search", parents=[common], help="randomized constituent search")
    s.add_argument("config", nargs="?", default=None, help="JSON search config")
    s.add_argument("--q", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--ell", type=int)
    s.add_argument("--lam", type=str)
    s.add_argument("--e", type=int)
    s.add_argument("--dims", type=str, help='JSON list, e.g. "[1, [1, 1]]"')
    s.add_argument("--defective-slot", type=int)
    s.add_argument("--iterations", type=int)
    s.add_argument("--retries", type=int)
    s.add_argument("--timing", action="store_true", help="add wall time to records")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_search)

    g = sub.add_parser("propagate", parents=[common], help="apply propagation rules")
    g.add_argument("results")
    g.add_argument("--depth", type=int, default=3)
    g.set_defaults(func=cmd_propagate)

    c = sub.add_parser("compare", parents=[common], help="compare against a known table")
    c.add_argument("results")
    c.set_defaults(func=cmd_compare)

    v = sub.add_parser("verify", parents=[common], help="recompute stored records")
    v.add_argument("results")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, TableError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
