"""``taucalc`` command line.

Exit codes: 0 success, 1 a verification found failures, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import logging
import os
import sys
import time
from pathlib import Path
from typing import Sequence

from . import faber, kdv, lseries
from .cache import CacheError, cache_roundtrip, load_values, save_values
from .exactmath import format_rational
from .npoint import NPointTable, UnstableError, verify_cross
from .polynomial import DivisibilityError

__all__ = ["main", "run", "resolve_cache_path"]

log = logging.getLogger("taucalc")

DEFAULT_CACHE = "taucalc-cache.jsonl"
SUITES = ("faber", "thm44", "thm45", "thm48", "cor32", "cor46", "kdv", "zagier", "cross")


class UsageError(Exception):
    pass


def resolve_cache_path(flag: str | None, environ=os.environ) -> Path:
    """--cache beats TAUCALC_CACHE beats ./taucalc-cache.jsonl."""
    if flag:
        return Path(flag)
    env = environ.get("TAUCALC_CACHE")
    if env:
        return Path(env)
    return Path(DEFAULT_CACHE)


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS so a subcommand's defaults never clobber a value given before it
    common.add_argument("--cache", default=argparse.SUPPRESS,
                        help="cache file (default: $TAUCALC_CACHE or ./taucalc-cache.jsonl)")
    common.add_argument("--format", choices=("text", "json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="taucalc", description="Exact psi-class intersection numbers.",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("tau", parents=[common], help="one intersection number")
    s.add_argument("-g", type=int, required=True)
    s.add_argument("-d", type=_int_list, required=True, help="indices, e.g. 0,2 (use -d=-2 for negatives)")
    s.add_argument("--extended", action="store_true", help="admit the genus-0 unstable conventions")

    s = sub.add_parser("npoint", parents=[common], help="n-point polynomial")
    s.add_argument("-g", type=int, required=True)
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--normalized", action="store_true")

    s = sub.add_parser("lcoeff", parents=[common], help="L-series coefficient")
    for flag in ("-g", "-a", "-b", "-k"):
        s.add_argument(flag, type=int, required=True)
    s.add_argument("-d", type=_int_list, required=True)

    s = sub.add_parser("lgen", parents=[common], help="generalized L-series coefficient")
    s.add_argument("-g", type=int, required=True)
    s.add_argument("-k", type=int, required=True)
    s.add_argument("-r", type=_int_list, default=())
    s.add_argument("-s", type=_int_list, default=())
    s.add_argument("-d", type=_int_list, required=True)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=SUITES)
    s.add_argument("--max-genus", type=int)
    s.add_argument("--max-points", type=int)

    s = sub.add_parser("table", parents=[common], help="compute all stable values and write the cache")
    s.add_argument("--max-genus", type=int, required=True)
    s.add_argument("--max-points", type=int, required=True)
    s.add_argument("--out", help="output path (default: the cache path)")

    s = sub.add_parser("kdv", parents=[common], help="Gelfand-Dikii polynomials")
    ksub = s.add_subparsers(dest="kdv_command", required=True)
    r = ksub.add_parser("rn", parents=[common])
    r.add_argument("-n", type=int, required=True)

    s = sub.add_parser("cache", parents=[common], help="cache maintenance")
    csub = s.add_subparsers(dest="cache_command", required=True)
    c = csub.add_parser("check", parents=[common], help="validate every record")
    c.add_argument("path", nargs="?")
    c = csub.add_parser("roundtrip", parents=[common], help="write, reload and compare a fresh table")
    c.add_argument("path")
    c.add_argument("--max-genus", type=int, default=2)
    c.add_argument("--max-points", type=int, default=4)
    return p


def _table(args) -> NPointTable:
    path = resolve_cache_path(args.cache)
    if path.exists():
        log.info("loading cache %s", path)
        return NPointTable(load_values(path))
    return NPointTable()


def _csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _emit_value(args, fields: dict, value) -> str:
    text = format_rational(value)
    if args.format == "json":
        return json.dumps({**fields, "value": text})
    if args.format == "csv":
        header = list(fields) + ["value"]
        row = [";".join(map(str, v)) if isinstance(v, (list, tuple)) else v for v in fields.values()]
        return _csv([header, row + [text]]).rstrip("\n")
    return text


def _cmd_tau(args) -> tuple[str, int]:
    table = _table(args)
    d = args.d
    if not args.extended:
        if any(x < 0 for x in d):
            raise UnstableError(f"negative index in {list(d)}; pass --extended for the unstable conventions")
    value = table.tau(args.g, d, extended=args.extended)
    if args.format == "csv":
        rows = [["g", "n", "d", "value"], [args.g, len(d), ";".join(map(str, d)), format_rational(value)]]
        return _csv(rows).rstrip("\n"), 0
    return _emit_value(args, {"g": args.g, "d": list(d)}, value), 0


def _cmd_npoint(args) -> tuple[str, int]:
    table = _table(args)
    poly = table.g_poly_normalized(args.g, args.n) if args.normalized else table.f_poly(args.g, args.n)
    if args.format == "json":
        return json.dumps({"g": args.g, "n": args.n, "normalized": args.normalized,
                           "terms": poly.to_records()}), 0
    if args.format == "csv":
        rows = [["exponents", "coeff"]]
        rows += [[";".join(map(str, r["exponents"])), r["coeff"]] for r in poly.to_records()]
        return _csv(rows).rstrip("\n"), 0
    return str(poly), 0


def _cmd_lcoeff(args) -> tuple[str, int]:
    q = lseries.LQuery(args.g, args.a, args.b, args.k, args.d)
    value = lseries.l_coeff(_table(args), q)
    return _emit_value(args, {"g": q.g, "a": q.a, "b": q.b, "k": q.k, "d": list(q.d)}, value), 0


def _cmd_lgen(args) -> tuple[str, int]:
    q = lseries.LGenQuery(args.g, args.k, args.r, args.s, args.d)
    value = lseries.l_gen_coeff(_table(args), q)
    fields = {"g": q.g, "k": q.k, "r": list(q.r), "s": list(q.s), "d": list(q.d)}
    return _emit_value(args, fields, value), 0


def _run_suite(args, table: NPointTable):
    kw = {}
    if args.max_genus is not None:
        kw["max_genus"] = args.max_genus
    if args.max_points is not None:
        kw["max_points"] = args.max_points
    name = args.suite
    if name == "faber":
        return faber.verify_faber(table, **kw)
    if name == "thm44":
        return lseries.verify_thm44(table, **kw)
    if name == "thm45":
        return lseries.verify_thm45(table, **kw)
    if name == "thm48":
        return lseries.verify_thm48(table, **kw)
    if name == "cor32":
        return faber.verify_cor32(table, **kw)
    if name == "cor46":
        top = kw.pop("max_genus", 4)
        return faber.verify_cor46(table, genera=tuple(range(2, top + 1)), **kw)
    if name == "kdv":
        return kdv.verify_kdv(table, **kw)
    if name == "zagier":
        if "max_points" in kw:
            raise UsageError("verify zagier takes --max-genus only")
        return faber.verify_zagier(**kw)
    return verify_cross(table, **kw)


def _cmd_verify(args) -> tuple[str, int]:
    start = time.perf_counter()
    rep = _run_suite(args, _table(args))
    log.info("%s finished in %.2fs", args.suite, time.perf_counter() - start)
    code = 0 if rep.passed else 1
    if args.format == "json":
        return rep.to_json(), code
    if args.format == "csv":
        rows = [["identity", "checked", "failures", "skipped", "status"],
                [rep.identity, rep.checked, len(rep.failures), len(rep.skipped), rep.status]]
        return _csv(rows).rstrip("\n"), code
    return rep.summary(), code


def _cmd_table(args) -> tuple[str, int]:
    if args.max_genus < 0 or args.max_points < 1:
        raise UsageError("need --max-genus >= 0 and --max-points >= 1")
    values = NPointTable().stable_values(args.max_genus, args.max_points)
    out = Path(args.out) if args.out else resolve_cache_path(args.cache)
    save_values(out, values)
    ordered = sorted(values.items(), key=lambda kv: (kv[0][0], len(kv[0][1]), kv[0][1]))
    if args.format == "csv":
        rows = [["g", "n", "d", "value"]]
        rows += [[g, len(d), ";".join(map(str, d)), format_rational(v)] for (g, d), v in ordered]
        return _csv(rows).rstrip("\n"), 0
    if args.format == "json":
        return json.dumps({"path": str(out), "count": len(values),
                           "values": [{"g": g, "d": list(d), "value": format_rational(v)}
                                      for (g, d), v in ordered]}), 0
    return f"wrote {len(values)} values to {out}", 0


def _cmd_kdv(args) -> tuple[str, int]:
    if not 1 <= args.n <= 6:
        raise UsageError("kdv rn supports 1 <= n <= 6")
    rn = kdv.gelfand_dikii(args.n)
    if args.format == "json":
        terms = [{"orders": list(m), "coeff": format_rational(c)} for m, c in rn.sorted_terms()]
        return json.dumps({"n": args.n, "text": str(rn), "terms": terms}), 0
    if args.format == "csv":
        rows = [["orders", "coeff"]] + [[";".join(map(str, m)), format_rational(c)] for m, c in rn.sorted_terms()]
        return _csv(rows).rstrip("\n"), 0
    return str(rn), 0


def _cmd_cache(args) -> tuple[str, int]:
    if args.cache_command == "check":
        path = Path(args.path) if args.path else resolve_cache_path(args.cache)
        values = load_values(path)
        msg = {"path": str(path), "records": len(values), "status": "ok"}
        return (json.dumps(msg) if args.format == "json" else f"{path}: {len(values)} records ok"), 0
    rep = cache_roundtrip(args.path, args.max_genus, args.max_points)
    return (rep.to_json() if args.format == "json" else rep.summary()), (0 if rep.passed else 1)


COMMANDS = {
    "tau": _cmd_tau,
    "npoint": _cmd_npoint,
    "lcoeff": _cmd_lcoeff,
    "lgen": _cmd_lgen,
    "verify": _cmd_verify,
    "table": _cmd_table,
    "kdv": _cmd_kdv,
    "cache": _cmd_cache,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name, default in (("cache", None), ("format", "text"), ("verbose", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, stream=stderr, format="taucalc: %(message)s")
    try:
        text, code = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(stderr)
        print(f"taucalc: error: {exc}", file=stderr)
        return 2
    except (CacheError, UnstableError, DivisibilityError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"taucalc: error: {exc}", file=stderr)
        return 2
    print(text, file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
