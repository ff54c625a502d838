"""Reading and writing graphs and matrices.

Graph text format: a header line `signed-graph v1 <n>` followed by one line
per edge, `<u> <v> <sign>` with vertices in 1..n and sign `-` for an odd
edge, `+` for an even one.  Edges are numbered 1..m in file order.

Record format: a JSON object {"n": int, "edges": [{"u", "v", "odd"}, ...]}.

Matrix text format: a header line `matrix v1 <n>` followed by n rows of n
floats.
"""

from __future__ import annotations

import json

import numpy as np

from .core import Edge, SignedGraph
from .errors import InputError

GRAPH_HEADER = "signed-graph v1"
MATRIX_HEADER = "matrix v1"


def parse_graph_text(text: str) -> SignedGraph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("empty graph file")
    head = lines[0].split()
    if head[:2] != GRAPH_HEADER.split() or len(head) != 3:
        raise InputError(f"bad header {lines[0]!r}, expected '{GRAPH_HEADER} <n>'")
    try:
        n = int(head[2])
    except ValueError:
        raise InputError(f"bad vertex count {head[2]!r}") from None
    if n < 0:
        raise InputError("negative vertex count")
    edges = []
    for i, ln in enumerate(lines[1:], start=1):
        parts = ln.split()
        if len(parts) != 3 or parts[2] not in "+-":
            raise InputError(f"bad edge line {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"bad edge line {ln!r}") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise InputError(f"edge {ln!r} out of range 1..{n}")
        edges.append(Edge(i, u, v, parts[2] == "-"))
    try:
        return SignedGraph(tuple(range(1, n + 1)), tuple(edges))
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from None


def graph_to_text(g: SignedGraph) -> str:
    index = {v: i + 1 for i, v in enumerate(sorted(g.vertices))}
    lines = [f"{GRAPH_HEADER} {g.n_vertices}"]
    for e in g.edges:
        sign = "-" if e.odd else "+"
        lines.append(f"{index[e.u]} {index[e.v]} {sign}")
    return "\n".join(lines) + "\n"


def parse_graph_records(obj) -> SignedGraph:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad JSON: {exc}") from None
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise InputError("graph record needs 'n' and 'edges'")
    n = obj["n"]
    if not isinstance(n, int) or n < 0:
        raise InputError("'n' must be a non-negative integer")
    edges = []
    for i, rec in enumerate(obj["edges"], start=1):
        try:
            u, v, odd = int(rec["u"]), int(rec["v"]), bool(rec["odd"])
        except (KeyError, TypeError, ValueError):
            raise InputError(f"bad edge record {rec!r}") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise InputError(f"edge record {rec!r} out of range 1..{n}")
        edges.append(Edge(i, u, v, odd))
    try:
        return SignedGraph(tuple(range(1, n + 1)), tuple(edges))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def graph_to_records(g: SignedGraph) -> dict:
    index = {v: i + 1 for i, v in enumerate(sorted(g.vertices))}
    return {
        "n": g.n_vertices,
        "edges": [{"u": index[e.u], "v": index[e.v], "odd": e.odd}
                  for e in g.edges],
    }


def graph_to_raw(g: SignedGraph) -> dict:
    """Exact serialization keeping vertex and edge ids (certificates must
    reproduce graphs verbatim, unlike the renumbering interchange format)."""
    return {
        "vertices": list(g.vertices),
        "edges": [[e.id, e.u, e.v, e.odd] for e in g.edges],
    }


def graph_from_raw(obj) -> SignedGraph:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or set(obj) != {"vertices", "edges"}:
        raise InputError("raw graph needs exactly 'vertices' and 'edges'")
    return SignedGraph.build(obj["vertices"], obj["edges"])


def parse_any(text: str, fmt: str = "auto") -> SignedGraph:
    if fmt == "text":
        return parse_graph_text(text)
    if fmt == "records":
        return parse_graph_records(text)
    if fmt == "auto":
        if text.lstrip().startswith("{"):
            return parse_graph_records(text)
        return parse_graph_text(text)
    raise InputError(f"unknown format {fmt!r}")


def load_graph(path: str, fmt: str = "auto") -> SignedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_any(text, fmt)


def graph_to_dot(g: SignedGraph, name: str = "G") -> str:
    """GraphViz rendering; odd edges are drawn bold."""
    index = {v: i + 1 for i, v in enumerate(sorted(g.vertices))}
    lines = [f"graph {name} {{"]
    for v in sorted(g.vertices):
        lines.append(f"  {index[v]};")
    for e in g.edges:
        attr = ' [style=bold]' if e.odd else ""
        lines.append(f"  {index[e.u]} -- {index[e.v]}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_matrix_text(text: str) -> np.ndarray:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("empty matrix file")
    head = lines[0].split()
    if head[:2] != MATRIX_HEADER.split() or len(head) != 3:
        raise InputError(f"bad header {lines[0]!r}, expected '{MATRIX_HEADER} <n>'")
    try:
        n = int(head[2])
    except ValueError:
        raise InputError(f"bad size {head[2]!r}") from None
    if len(lines) != n + 1:
        raise InputError(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != n:
            raise InputError(f"row {ln!r} does not have {n} entries")
        try:
            rows.append([float(x) for x in parts])
        except ValueError:
            raise InputError(f"bad number in row {ln!r}") from None
    return np.array(rows, dtype=float)


def matrix_to_text(a: np.ndarray) -> str:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError("matrix must be square")
    n = a.shape[0]
    lines = [f"{MATRIX_HEADER} {n}"]
    for row in a:
        lines.append(" ".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"
