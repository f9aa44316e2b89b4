"""Edge-list / attribute file parsing and result serialisation.

Formats (``#`` starts a comment, blank lines are skipped):

* edges: ``u v`` per line;
* keyword attributes: ``id token:weight token:weight ...``;
* geo attributes: ``id x y``.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Iterable, Iterator
from pathlib import Path

from .graph import AttributedGraph, GraphError, KeywordAttr, PointAttr, VertexAttr
from .search import KrCore

log = logging.getLogger(__name__)


class ParseError(ValueError):
    def __init__(self, path, lineno: int, msg: str):
        super().__init__(f"{path}:{lineno}: {msg}")
        self.path = path
        self.lineno = lineno


def _records(path) -> Iterator[tuple[int, list[str]]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if line:
                yield lineno, line.split()


def _ext_id(token: str):
    try:
        return int(token)
    except ValueError:
        return token


def _sort_key(x):
    return (0, x, "") if isinstance(x, int) else (1, 0, x)


def parse_edges(path) -> list[tuple[object, object]]:
    edges = []
    for lineno, parts in _records(path):
        if len(parts) != 2:
            raise ParseError(path, lineno, f"expected 2 vertex ids, got {len(parts)} fields")
        edges.append((_ext_id(parts[0]), _ext_id(parts[1])))
    return edges


def parse_attributes(path, mode: str) -> dict[object, VertexAttr]:
    if mode not in ("keywords", "geo"):
        raise ValueError(f"unknown attribute mode {mode!r}")
    attrs: dict[object, VertexAttr] = {}
    for lineno, parts in _records(path):
        vid = _ext_id(parts[0])
        if vid in attrs:
            raise ParseError(path, lineno, f"duplicate attributes for vertex {vid!r}")
        try:
            if mode == "geo":
                if len(parts) != 3:
                    raise ParseError(path, lineno, "geo attributes need 'id x y'")
                attrs[vid] = PointAttr(float(parts[1]), float(parts[2]))
            else:
                weights: dict[str, float] = {}
                for item in parts[1:]:
                    token, sep, w = item.rpartition(":")
                    if not sep or not token:
                        raise ParseError(path, lineno, f"bad keyword entry {item!r}, want token:weight")
                    weights[token] = weights.get(token, 0.0) + float(w)
                if not weights:
                    raise ParseError(path, lineno, f"vertex {vid!r} has no keywords")
                attrs[vid] = KeywordAttr(weights)
        except (ValueError, GraphError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(path, lineno, str(exc)) from None
    return attrs


def load_graph(graph_path, attr_path, attr_mode: str) -> AttributedGraph:
    """Build the graph, remapping external ids to ``0..n-1`` in sorted order."""
    edges = parse_edges(graph_path)
    attrs = parse_attributes(attr_path, attr_mode)
    missing = sorted({v for e in edges for v in e if v not in attrs}, key=_sort_key)
    if missing:
        shown = ", ".join(map(str, missing[:20])) + (" ..." if len(missing) > 20 else "")
        raise GraphError(f"{len(missing)} vertices have edges but no attributes: {shown}")
    labels = sorted(attrs, key=_sort_key)
    index = {v: i for i, v in enumerate(labels)}
    g = AttributedGraph(len(labels), [(index[u], index[v]) for u, v in edges],
                        [attrs[v] for v in labels], labels)
    if g.dropped_self_loops or g.dropped_duplicates:
        log.warning("dropped %d self-loops and %d duplicate edges", g.dropped_self_loops, g.dropped_duplicates)
    return g


def core_records(g: AttributedGraph, cores: Iterable[KrCore]) -> list[dict]:
    records = [{"vertices": sorted((g.labels[v] for v in c.vertices), key=_sort_key), "size": c.size}
               for c in cores]
    records.sort(key=lambda r: (-r["size"], [_sort_key(v) for v in r["vertices"]]))
    return records


def write_cores(path, g: AttributedGraph, cores: Iterable[KrCore]) -> None:
    lines = [json.dumps(r, separators=(",", ":")) for r in core_records(g, cores)]
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def read_cores(path) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]
