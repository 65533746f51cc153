"""JSON-lines store of stable tau values.

Line 1 is the header ``{"format":"taucalc-cache","version":1}``; every other
line is ``{"g":int,"d":[non-increasing ints],"v":"num/den"}``, sorted by
(g, len(d), d).
"""
from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .exactmath import format_rational, parse_rational
from .npoint import NPointTable, dimension, is_stable
from .report import VerificationReport

__all__ = ["CacheError", "HEADER", "save_values", "load_values", "load_table", "cache_roundtrip"]

HEADER = {"format": "taucalc-cache", "version": 1}

Values = Mapping[tuple[int, tuple[int, ...]], Fraction]


class CacheError(ValueError):
    pass


def _sort_key(item):
    (g, d), _ = item
    return (g, len(d), d)


def dump_values(values: Values) -> str:
    lines = [json.dumps(HEADER, separators=(",", ":"))]
    for (g, d), v in sorted(values.items(), key=_sort_key):
        rec = {"g": g, "d": list(d), "v": format_rational(v)}
        lines.append(json.dumps(rec, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def save_values(path: str | os.PathLike, values: Values) -> None:
    """Write atomically (temp file in the same directory, then rename)."""
    path = Path(path)
    text = dump_values(values)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=".taucalc-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _check_record(lineno: int, rec) -> tuple[tuple[int, tuple[int, ...]], Fraction]:
    def fail(msg):
        raise CacheError(f"line {lineno}: {msg}: {json.dumps(rec)}")

    if not isinstance(rec, dict) or set(rec) != {"g", "d", "v"}:
        fail("expected keys g, d, v")
    g, d, v = rec["g"], rec["d"], rec["v"]
    if type(g) is not int or not isinstance(d, list) or not all(type(x) is int for x in d):
        fail("g must be an int and d a list of ints")
    if not isinstance(v, str):
        fail("v must be a rational string")
    d = tuple(d)
    if any(x < 0 for x in d):
        fail("negative index")
    if list(d) != sorted(d, reverse=True):
        fail("d is not non-increasing")
    if not is_stable(g, len(d)) or len(d) == 0:
        fail("(g, n) outside the stable range")
    if sum(d) != dimension(g, len(d)):
        fail(f"dimension violated: sum(d) = {sum(d)} but 3g-3+n = {dimension(g, len(d))}")
    try:
        value = parse_rational(v)
    except (ValueError, ZeroDivisionError):
        fail("unparsable value")
    if value <= 0:
        fail("positivity violated: stable intersection numbers are > 0")
    return (g, d), value


def parse_values(text: str) -> dict[tuple[int, tuple[int, ...]], Fraction]:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise CacheError("line 1: header missing")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise CacheError(f"line 1: header missing or unparsable ({exc.msg})") from None
    if header != HEADER:
        raise CacheError(f"line 1: header mismatch, expected {json.dumps(HEADER)}")
    out: dict[tuple[int, tuple[int, ...]], Fraction] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CacheError(f"line {lineno}: parse failure ({exc.msg})") from None
        key, value = _check_record(lineno, rec)
        if key in out and out[key] != value:
            raise CacheError(f"line {lineno}: conflicting duplicate for g={key[0]}, d={list(key[1])}")
        out[key] = value
    return out


def load_values(path: str | os.PathLike) -> dict[tuple[int, tuple[int, ...]], Fraction]:
    return parse_values(Path(path).read_text(encoding="utf-8"))


def load_table(path: str | os.PathLike) -> NPointTable:
    return NPointTable(load_values(path))


def cache_roundtrip(path: str | os.PathLike, max_genus: int = 2, max_points: int = 4,
                    table: NPointTable | None = None) -> VerificationReport:
    """Save the engine's values to ``path``, reload, and compare record by record."""
    table = table or NPointTable()
    values = table.stable_values(max_genus, max_points)
    rep = VerificationReport("cache", {"g": [0, max_genus], "n": [1, max_points], "path": str(path)})
    save_values(path, values)
    loaded = load_values(path)
    rep.record(set(loaded) == set(values), {"check": "key set"}, ("keys",))
    for key, v in sorted(values.items(), key=lambda kv: (kv[0][0], len(kv[0][1]), kv[0][1])):
        rep.record(loaded.get(key) == v, {"g": key[0], "d": key[1], "v": v}, ("values",))
    # a second write must be byte-identical
    first = Path(path).read_bytes()
    save_values(path, loaded)
    rep.record(Path(path).read_bytes() == first, {"check": "idempotent rewrite"}, ("idempotence",))
    return rep
