"""Reading and writing digraphs and attaching maps.

Two graph formats are accepted.  JSON::

    {"vertices": ["a", "b"], "edges": [["a", "b"]]}

and a line-oriented text format with ``v <name>`` and ``e <u> <v>`` lines
and ``#`` comments.  Vertex names are read as strings.  Repeated edges are
an error unless ``lenient`` is set, in which case they collapse.
"""

from __future__ import annotations

import json
import warnings

from .digraph import DiGraph, GraphError, GraphMap, label_str


class ParseError(GraphError):
    """Malformed input; the message names the offending line or field."""


def _name(v, where: str) -> str:
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise ParseError(f"{where}: vertex names must be strings or integers, got {v!r}")
    return str(v)


def _build(vertices: list, edges: list, lenient: bool, where: list) -> DiGraph:
    seen_v = set()
    for v, w in zip(vertices, where[:len(vertices)]):
        if v in seen_v:
            raise ParseError(f"{w}: duplicate vertex {v!r}")
        seen_v.add(v)
    seen_e = set()
    out = []
    for (u, v), w in zip(edges, where[len(vertices):]):
        for x in (u, v):
            if x not in seen_v:
                raise ParseError(f"{w}: unknown vertex {x!r}")
        if (u, v) in seen_e:
            if not lenient:
                raise ParseError(f"{w}: duplicate edge {u}->{v} (use --lenient to collapse)")
            continue
        seen_e.add((u, v))
        out.append((u, v))
    with warnings.catch_warnings():
        warnings.simplefilter("default")
        return DiGraph(vertices, out)


def graph_from_json(text: str, *, lenient: bool = False) -> DiGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}: invalid JSON ({e.msg})") from None
    return graph_from_obj(data, lenient=lenient)


def graph_from_obj(data, *, lenient: bool = False) -> DiGraph:
    if not isinstance(data, dict):
        raise ParseError("top level: expected an object with 'vertices' and 'edges'")
    extra = set(data) - {"vertices", "edges"}
    if extra:
        raise ParseError(f"top level: unknown field {sorted(extra)[0]!r}")
    vs = data.get("vertices")
    if not isinstance(vs, list):
        raise ParseError("field 'vertices': expected a list")
    es = data.get("edges", [])
    if not isinstance(es, list):
        raise ParseError("field 'edges': expected a list")
    vertices = [_name(v, f"vertices[{i}]") for i, v in enumerate(vs)]
    edges = []
    for i, e in enumerate(es):
        if not isinstance(e, list) or len(e) != 2:
            raise ParseError(f"edges[{i}]: expected a pair [u, v]")
        edges.append((_name(e[0], f"edges[{i}]"), _name(e[1], f"edges[{i}]")))
    where = [f"vertices[{i}]" for i in range(len(vertices))] + [f"edges[{i}]" for i in range(len(edges))]
    return _build(vertices, edges, lenient, where)


def graph_from_text(text: str, *, lenient: bool = False) -> DiGraph:
    vertices, edges, vw, ew = [], [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "v" and len(parts) == 2:
            vertices.append(parts[1])
            vw.append(f"line {lineno}")
        elif parts[0] == "e" and len(parts) == 3:
            edges.append((parts[1], parts[2]))
            ew.append(f"line {lineno}")
        else:
            raise ParseError(f"line {lineno}: expected 'v <name>' or 'e <u> <v>', got {raw.strip()!r}")
    return _build(vertices, edges, lenient, vw + ew)


def load_graph(text: str, *, lenient: bool = False) -> DiGraph:
    """Parse JSON if the text looks like JSON, otherwise the text format."""
    if text.lstrip().startswith("{"):
        return graph_from_json(text, lenient=lenient)
    return graph_from_text(text, lenient=lenient)


def graph_to_json(X: DiGraph, **kw) -> str:
    return json.dumps(X.to_dict(), **kw)


def graph_to_text(X: DiGraph) -> str:
    lines = [f"v {label_str(v)}" for v in X.vertices]
    lines += [f"e {label_str(u)} {label_str(v)}" for u, v in X.sorted_edges()]
    return "\n".join(lines) + "\n"


def stringify(X: DiGraph) -> DiGraph:
    """Relabel every vertex by its string form, as the parsers would read it."""
    return X.relabel({v: label_str(v) for v in X.vertices})


def map_from_json(text: str, A: DiGraph, B: DiGraph) -> GraphMap:
    """Parse ``{"map": {"a": "b", ...}}`` into a map ``A -> B``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}: invalid JSON ({e.msg})") from None
    if not isinstance(data, dict) or not isinstance(data.get("map"), dict):
        raise ParseError("field 'map': expected an object from source to target vertices")
    vm = {}
    for k, v in data["map"].items():
        vm[k] = _name(v, f"map[{k!r}]")
    missing = [a for a in A.vertices if a not in vm]
    if missing:
        raise ParseError(f"field 'map': no image for vertex {missing[0]!r}")
    unknown = [k for k in vm if k not in A]
    if unknown:
        raise ParseError(f"field 'map': {unknown[0]!r} is not a vertex of the subgraph")
    try:
        return GraphMap(A, B, vm)
    except GraphError as e:
        raise ParseError(f"field 'map': {e}") from None


def parse_subset(text: str, X: DiGraph) -> list:
    """Comma-separated vertex names; an empty string is the empty subset."""
    names = [t.strip() for t in text.split(",") if t.strip()] if text else []
    for n in names:
        if n not in X:
            raise ParseError(f"--subset: unknown vertex {n!r}")
    return names
