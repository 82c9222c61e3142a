"""Matrix text and JSON formats.

Text: first line ``n``, then ``n`` lines of ``n`` whitespace-separated
integers. JSON: ``{"n": int, "entries": [[int, ...], ...],
"symmetrizer": [int, ...]}`` with the symmetrizer optional. Both readers
reject trailing content.
"""

from __future__ import annotations

import json
from typing import Sequence

from .errors import ParseError, SymmetrizerMismatch
from .matrix import ExchangeMatrix, Symmetrizer, certifies, validate


def _int(tok: object, where: str) -> int:
    if isinstance(tok, bool):
        raise ParseError(f"{where}: expected integer, got {tok!r}")
    if isinstance(tok, int):
        return tok
    if isinstance(tok, str):
        try:
            return int(tok)
        except ValueError:
            pass
    raise ParseError(f"{where}: expected integer, got {tok!r}")


def parse_text(text: str) -> list[list[int]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty input")
    head = lines[0].split()
    if len(head) != 1:
        raise ParseError(f"first line must hold only n, got {lines[0]!r}")
    n = _int(head[0], "line 1")
    if n <= 0:
        raise ParseError(f"n must be positive, got {n}")
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} matrix rows, got {len(lines) - 1}")
    rows = []
    for lineno, ln in enumerate(lines[1:], 2):
        toks = ln.split()
        if len(toks) != n:
            raise ParseError(f"line {lineno}: expected {n} integers, got {len(toks)}")
        rows.append([_int(t, f"line {lineno}") for t in toks])
    return rows


def parse_json(text: str) -> tuple[list[list[int]], list[int] | None]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ParseError('JSON matrix must be an object with an "entries" key')
    unknown = set(obj) - {"n", "entries", "symmetrizer"}
    if unknown:
        raise ParseError(f"unexpected keys {sorted(unknown)}")
    entries = obj["entries"]
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise ParseError('"entries" must be a list of lists')
    rows = [[_int(x, f"entries[{i}]") for x in r] for i, r in enumerate(entries)]
    if "n" in obj and _int(obj["n"], '"n"') != len(rows):
        raise ParseError(f'"n" is {obj["n"]} but there are {len(rows)} rows')
    d = obj.get("symmetrizer")
    if d is not None:
        if not isinstance(d, list):
            raise ParseError('"symmetrizer" must be a list')
        d = [_int(x, "symmetrizer") for x in d]
    return rows, d


def read_matrix(text: str, fmt: str = "auto") -> tuple[ExchangeMatrix, Symmetrizer | None]:
    """Parse and validate; returns the matrix and any supplied symmetrizer.

    A supplied symmetrizer must certify the matrix.
    """
    if fmt == "auto":
        fmt = "json" if text.lstrip().startswith("{") else "text"
    if fmt == "json":
        rows, d = parse_json(text)
    elif fmt == "text":
        rows, d = parse_text(text), None
    else:
        raise ValueError(f"unknown format {fmt!r}")
    B = validate(rows)
    if d is not None:
        d = tuple(d)
        if not certifies(d, B):
            raise SymmetrizerMismatch(f"supplied symmetrizer {list(d)} does not certify the matrix")
    return B, d


def to_json_obj(B: ExchangeMatrix, d: Sequence[int] | None = None) -> dict:
    return {
        "n": B.n,
        "entries": B.to_lists(),
        "symmetrizer": list(B.symmetrizer if d is None else d),
    }


def dumps_json(B: ExchangeMatrix, d: Sequence[int] | None = None) -> str:
    return json.dumps(to_json_obj(B, d))


def dumps_text(B: ExchangeMatrix) -> str:
    width = max(len(str(x)) for r in B.rows for x in r)
    body = "\n".join(" ".join(str(x).rjust(width) for x in r) for r in B.rows)
    return f"{B.n}\n{body}\n"
