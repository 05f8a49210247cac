"""Text, JSON and DOT serialisation, plus the builtin pattern names used by
the command line (``K4``, ``Ck:5``, ``TTk:4``, ``Pk:3``, ``cyc-orient:5:10100``).

Text format::

    n m directed|undirected
    u v
    ...

Blank lines and lines starting with ``#`` are ignored.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .graphs import (
    Digraph,
    Graph,
    OrientedGraph,
    complete_digraph,
    complete_graph,
    cycle,
    cycle_orientation,
    directed_path,
    path_graph,
    petersen_graph,
    transitive_tournament,
)

AnyGraph = Union[Graph, Digraph]


class GraphFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _directed_type(n: int, arcs) -> Digraph:
    arcs = frozenset(arcs)
    if any((v, u) in arcs for u, v in arcs):
        return Digraph(n, arcs)
    return OrientedGraph(n, arcs)


def parse_text(text: str) -> AnyGraph:
    rows = [
        (i, line.split())
        for i, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not rows:
        raise GraphFormatError("empty input")
    lineno, header = rows[0]
    if len(header) != 3 or header[2] not in ("directed", "undirected"):
        raise GraphFormatError("header must be 'n m directed|undirected'", lineno)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphFormatError("n and m must be integers", lineno) from None
    pairs = []
    for lineno, tok in rows[1:]:
        if len(tok) != 2:
            raise GraphFormatError("edge line must be 'u v'", lineno)
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise GraphFormatError("edge endpoints must be integers", lineno) from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise GraphFormatError(f"bad edge ({u}, {v}) for n={n}", lineno)
        pairs.append((u, v))
    if len(pairs) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(pairs)}", rows[0][0])
    if header[2] == "undirected":
        return Graph(n, frozenset(pairs))
    return _directed_type(n, pairs)


def format_text(g: AnyGraph) -> str:
    if isinstance(g, Graph):
        lines = [f"{g.n} {g.m} undirected"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    else:
        lines = [f"{g.n} {g.m} directed"] + [f"{u} {v}" for u, v in g.sorted_arcs()]
    return "\n".join(lines) + "\n"


def to_dict(g: AnyGraph) -> dict:
    if isinstance(g, Graph):
        return {"n": g.n, "directed": False, "edges": [list(e) for e in g.sorted_edges()]}
    return {"n": g.n, "directed": True, "edges": [list(a) for a in g.sorted_arcs()]}


def from_dict(data: dict) -> AnyGraph:
    try:
        n = int(data["n"])
        edges = [tuple(int(x) for x in e) for e in data["edges"]]
        directed = bool(data["directed"])
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"malformed graph JSON: {exc}") from None
    return _directed_type(n, edges) if directed else Graph(n, frozenset(edges))


def to_json(g: AnyGraph) -> str:
    return json.dumps(to_dict(g))


def from_json(text: str) -> AnyGraph:
    try:
        return from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise GraphFormatError(exc.msg, exc.lineno) from None


def to_dot(g: AnyGraph, name: str = "G") -> str:
    if isinstance(g, Graph):
        head, sep, pairs = "graph", "--", g.sorted_edges()
    else:
        head, sep, pairs = "digraph", "->", g.sorted_arcs()
    body = [f"  {v};" for v in range(g.n)] + [f"  {u} {sep} {v};" for u, v in pairs]
    return f"{head} {name} {{\n" + "\n".join(body) + "\n}\n"


def load(path: str | Path) -> AnyGraph:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        return from_json(text)
    return parse_text(text)


def named(name: str) -> AnyGraph:
    """Resolve a builtin name such as ``K4``, ``C5``, ``Ck:5``, ``TTk:3``,
    ``Pk:2``, ``D3``, ``path:4``, ``petersen`` or ``cyc-orient:5:11010``."""
    head, *args = name.split(":")
    try:
        if head == "cyc-orient":
            k, bits = int(args[0]), args[1]
            return cycle_orientation(k, bits)
        if head == "TTk":
            return transitive_tournament(int(args[0]))
        if head == "Pk":
            return directed_path(int(args[0]))
        if head == "Ck":
            return cycle(int(args[0]))
        if head == "Kn":
            return complete_graph(int(args[0]))
        if head == "path":
            return path_graph(int(args[0]))
        if head == "arc":
            return directed_path(1)
        if head == "petersen":
            return petersen_graph()
        if not args and len(head) > 1 and head[1:].isdigit():
            size = int(head[1:])
            if head[0] == "K":
                return complete_graph(size)
            if head[0] == "C":
                return cycle(size)
            if head[0] == "D":
                return complete_digraph(size)
    except (IndexError, ValueError) as exc:
        raise GraphFormatError(f"bad builtin {name!r}: {exc}") from None
    raise GraphFormatError(f"unknown builtin {name!r}")


def resolve(ref: str) -> AnyGraph:
    """A builtin name, or a path to a text/JSON graph file."""
    if Path(ref).is_file():
        return load(ref)
    return named(ref)
