"""Reading and writing graphs in the line-oriented text format and as JSON.

Text format::

    # comment
    vertex <id> m=<float> [c=<float>]
    edge <id> <id> b=<float>

Floats are written with ``repr`` (shortest round-trip), so write/read is
bit-exact.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .graph import Graph


class GraphFormatError(ValueError):
    def __init__(self, message: str, source: str = "<string>", line: int | None = None):
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")
        self.source = source
        self.line = line


def _parse_float(text: str, key: str, source: str, line: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise GraphFormatError(f"bad value for {key}: {text!r}", source, line) from None


def _keyvals(tokens, allowed, source, line):
    out = {}
    for tok in tokens:
        key, sep, val = tok.partition("=")
        if not sep:
            raise GraphFormatError(f"expected key=value, got {tok!r}", source, line)
        if key not in allowed:
            raise GraphFormatError(f"unknown key {key!r}", source, line)
        if key in out:
            raise GraphFormatError(f"repeated key {key!r}", source, line)
        out[key] = _parse_float(val, key, source, line)
    return out


def parse_text(text: str, source: str = "<string>") -> Graph:
    labels: list[str] = []
    index: dict[str, int] = {}
    m: list[float] = []
    c: list[float] = []
    edges: dict[tuple[int, int], float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "vertex":
            if len(tokens) < 2:
                raise GraphFormatError("vertex needs an id", source, lineno)
            vid = tokens[1]
            if vid in index:
                raise GraphFormatError(f"duplicate vertex {vid!r}", source, lineno)
            kv = _keyvals(tokens[2:], {"m", "c"}, source, lineno)
            if "m" not in kv:
                raise GraphFormatError(f"vertex {vid!r} lacks m=", source, lineno)
            index[vid] = len(labels)
            labels.append(vid)
            m.append(kv["m"])
            c.append(kv.get("c", 0.0))
        elif kind == "edge":
            if len(tokens) < 3:
                raise GraphFormatError("edge needs two vertex ids", source, lineno)
            ends = []
            for vid in tokens[1:3]:
                if vid not in index:
                    raise GraphFormatError(f"edge names undeclared vertex {vid!r}", source, lineno)
                ends.append(index[vid])
            kv = _keyvals(tokens[3:], {"b"}, source, lineno)
            if "b" not in kv:
                raise GraphFormatError("edge lacks b=", source, lineno)
            key = (min(ends), max(ends))
            if key in edges:
                raise GraphFormatError(f"duplicate edge {tokens[1]} {tokens[2]}", source, lineno)
            edges[key] = kv["b"]
        else:
            raise GraphFormatError(f"unknown record {kind!r}", source, lineno)
    if not labels:
        raise GraphFormatError("no vertices", source)
    return Graph(m=np.array(m), c=np.array(c), edges=edges, labels=tuple(labels))


def format_text(graph: Graph) -> str:
    lines = []
    for lab, mx, cx in zip(graph.labels, graph.m, graph.c):
        lines.append(f"vertex {lab} m={float(mx)!r} c={float(cx)!r}")
    for (u, v), w in graph.edges.items():
        lines.append(f"edge {graph.labels[u]} {graph.labels[v]} b={w!r}")
    return "\n".join(lines) + "\n"


def parse_json(text: str, source: str = "<string>") -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON ({exc.msg})", source, exc.lineno) from None
    if not isinstance(data, dict) or set(data) - {"vertices", "edges"}:
        raise GraphFormatError("expected an object with 'vertices' and 'edges'", source)
    labels, m, c = [], [], []
    index: dict[str, int] = {}
    for k, rec in enumerate(data.get("vertices", [])):
        if not isinstance(rec, dict):
            raise GraphFormatError(f"vertex record {k} is not an object", source)
        unknown = set(rec) - {"id", "m", "c"}
        if unknown:
            raise GraphFormatError(f"unknown key {sorted(unknown)[0]!r} in vertex record {k}", source)
        if "id" not in rec or "m" not in rec:
            raise GraphFormatError(f"vertex record {k} needs 'id' and 'm'", source)
        vid = str(rec["id"])
        if vid in index:
            raise GraphFormatError(f"duplicate vertex {vid!r}", source)
        index[vid] = len(labels)
        labels.append(vid)
        m.append(float(rec["m"]))
        c.append(float(rec.get("c", 0.0)))
    edges: dict[tuple[int, int], float] = {}
    for k, rec in enumerate(data.get("edges", [])):
        if not isinstance(rec, dict):
            raise GraphFormatError(f"edge record {k} is not an object", source)
        unknown = set(rec) - {"u", "v", "b"}
        if unknown:
            raise GraphFormatError(f"unknown key {sorted(unknown)[0]!r} in edge record {k}", source)
        try:
            u, v = index[str(rec["u"])], index[str(rec["v"])]
        except KeyError as exc:
            raise GraphFormatError(f"edge record {k} names undeclared vertex {exc.args[0]!r}", source) from None
        if "b" not in rec:
            raise GraphFormatError(f"edge record {k} lacks 'b'", source)
        key = (min(u, v), max(u, v))
        if key in edges:
            raise GraphFormatError(f"duplicate edge in record {k}", source)
        edges[key] = float(rec["b"])
    if not labels:
        raise GraphFormatError("no vertices", source)
    return Graph(m=np.array(m), c=np.array(c), edges=edges, labels=tuple(labels))


def format_json(graph: Graph) -> str:
    data = {
        "vertices": [{"id": lab, "m": float(mx), "c": float(cx)}
                     for lab, mx, cx in zip(graph.labels, graph.m, graph.c)],
        "edges": [{"u": graph.labels[u], "v": graph.labels[v], "b": w}
                  for (u, v), w in graph.edges.items()],
    }
    return json.dumps(data, indent=1)


def read_graph(path) -> Graph:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise GraphFormatError(f"cannot read file ({exc.strerror})", str(path)) from None
    if path.suffix.lower() == ".json":
        return parse_json(text, str(path))
    return parse_text(text, str(path))


def write_graph(graph: Graph, path) -> None:
    path = Path(path)
    text = format_json(graph) if path.suffix.lower() == ".json" else format_text(graph)
    path.write_text(text)
