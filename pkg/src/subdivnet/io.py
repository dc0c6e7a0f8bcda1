"""JSON network documents.

A document looks like::

    {"vertices": ["x", "y", "z"],
     "edges": [{"u": "x", "v": "y", "c": 1.0, "split": 0.3},
               {"u": "y", "v": "z", "c": 2.0}]}

``split`` is optional (default 0.5) and is measured from ``u``. Unknown
fields are rejected.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Mapping

from .errors import ParseError, SplitOutOfRangeError
from .graph import Network, build_network, canonical_pair
from .subdivision import STANDARD_SPLIT

__all__ = ["parse_network", "read_network", "write_network"]

_TOP_FIELDS = {"vertices", "edges"}
_EDGE_FIELDS = {"u", "v", "c", "split"}


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def parse_network(text: str) -> tuple[Network, dict[tuple[str, str], float]]:
    """Parse a document into a network and a full canonical split map.

    The split map has one entry per edge, keyed ``(min, max)`` with ``t``
    measured from ``min``, the form :func:`subdivnet.subdivision.subdivide`
    accepts.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    unknown = sorted(set(doc) - _TOP_FIELDS)
    if unknown:
        raise ParseError(f"unknown top-level field(s): {', '.join(unknown)}")
    for key in ("vertices", "edges"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
        if not isinstance(doc[key], list):
            raise ParseError(f"field {key!r} must be a list")

    vertices = doc["vertices"]
    for i, x in enumerate(vertices):
        if not isinstance(x, str):
            raise ParseError(f"vertices[{i}]: expected a string, got {x!r}")

    edges = []
    raw_splits = []
    for i, rec in enumerate(doc["edges"]):
        where = f"edges[{i}]"
        if not isinstance(rec, dict):
            raise ParseError(f"{where}: expected an object")
        unknown = sorted(set(rec) - _EDGE_FIELDS)
        if unknown:
            raise ParseError(f"{where}: unknown field(s): {', '.join(unknown)}")
        for key in ("u", "v", "c"):
            if key not in rec:
                raise ParseError(f"{where}: missing field {key!r}")
        if not isinstance(rec["u"], str) or not isinstance(rec["v"], str):
            raise ParseError(f"{where}: 'u' and 'v' must be strings")
        if not _is_number(rec["c"]):
            raise ParseError(f"{where}.c: expected a number, got {rec['c']!r}")
        t = rec.get("split", STANDARD_SPLIT)
        if not _is_number(t):
            raise ParseError(f"{where}.split: expected a number, got {t!r}")
        if not (math.isfinite(t) and 0.0 < t < 1.0):
            raise SplitOutOfRangeError(f"{where}.split must lie in (0, 1), got {t!r}")
        edges.append((rec["u"], rec["v"], rec["c"]))
        raw_splits.append((rec["u"], rec["v"], float(t)))

    net = build_network(vertices, edges)
    splits = {}
    for u, v, t in raw_splits:
        key = canonical_pair(u, v)
        splits[key] = t if key == (u, v) else 1.0 - t
    return net, splits


def read_network(path: str | Path) -> tuple[Network, dict[tuple[str, str], float]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_network(text)


def write_network(net: Network, splits: Mapping[tuple[str, str], float] | None = None) -> str:
    """Serialize ``net``; splits other than 0.5 are written per edge.

    ``splits`` uses the canonical form returned by :func:`parse_network`.
    """
    records = []
    for e in net.edges:
        rec = {"u": e.u, "v": e.v, "c": e.c}
        if splits is not None:
            t = splits[(e.u, e.v)]
            if t != STANDARD_SPLIT:
                rec["split"] = t
        records.append(rec)
    return json.dumps({"vertices": list(net.vertices), "edges": records}, indent=2) + "\n"
