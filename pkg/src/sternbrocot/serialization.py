"""JSON/JSONL and CSV encodings for rows, determinant lists and results."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable

from .rational import parse_fraction
from .tree import Row

__all__ = [
    "row_to_dict",
    "row_from_dict",
    "rows_to_jsonl",
    "rows_from_jsonl",
    "rows_to_csv",
    "rows_to_text",
    "detlists_to_csv",
    "dumps",
]


def dumps(obj) -> str:
    # compact and key-ordered so repeated runs are byte-identical
    return json.dumps(obj, separators=(",", ":"), sort_keys=False)


def row_to_dict(row: Row) -> dict:
    return {"depth": row.depth, "entries": [str(f) for f in row.entries],
            "reductions": list(row.reductions)}


def row_from_dict(obj: dict) -> Row:
    return Row(int(obj["depth"]), tuple(parse_fraction(s) for s in obj["entries"]),
               tuple(int(g) for g in obj["reductions"]))


def rows_to_jsonl(rows: Iterable[Row]) -> str:
    return "".join(dumps(row_to_dict(r)) + "\n" for r in rows)


def rows_from_jsonl(text: str) -> list[Row]:
    return [row_from_dict(json.loads(line)) for line in text.splitlines() if line.strip()]


def _csv(header, records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(records)
    return buf.getvalue()


def rows_to_csv(rows: Iterable[Row]) -> str:
    return _csv(("depth", "index", "num", "den"),
                ((r.depth, i, f.num, f.den) for r in rows for i, f in enumerate(r.entries)))


def rows_to_text(rows: Iterable[Row], show_reductions: bool = False) -> str:
    lines = []
    for r in rows:
        lines.append(" ".join(str(f) for f in r.entries))
        if show_reductions and r.depth > 0:
            lines.append("# reductions: " + " ".join(str(g) for g in r.reductions))
    return "".join(line + "\n" for line in lines)


def detlists_to_csv(detlists) -> str:
    return _csv(("depth", "pair_index", "determinant"),
                ((dl.depth, i, v) for dl in detlists for i, v in enumerate(dl.values)))
