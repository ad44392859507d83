"""Reading and writing graphs: canonical JSON and plain edge lists.

JSON::

    {"vertices": [0, 1, 2], "edges": [[0, 1], [1, 2]], "non_voting_edges": [[0, 2]]}

Edge list: one ``u w`` pair per line, ``#`` starts a comment, a line holding a
single integer declares a (possibly isolated) vertex.
"""

from __future__ import annotations

import json
from pathlib import Path

from .graph import Graph, GraphError, from_edges


class GraphFormatError(GraphError):
    pass


def _int(x, what):
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise GraphFormatError(f"{what} must be a nonnegative integer, got {x!r}")
    return x


def _pairs(data, key):
    out = []
    for e in data.get(key, []):
        if not isinstance(e, list) or len(e) != 2:
            raise GraphFormatError(f"{key} entries must be [u, w] pairs, got {e!r}")
        out.append((_int(e[0], "vertex id"), _int(e[1], "vertex id")))
    return out


def graph_from_json(data) -> Graph:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise GraphFormatError('graph JSON needs "vertices" and "edges"')
    vertices = [_int(v, "vertex id") for v in data["vertices"]]
    edges = _pairs(data, "edges")
    nv = _pairs(data, "non_voting_edges")
    declared = set(vertices)
    for u, w in edges + nv:
        if u not in declared or w not in declared:
            raise GraphFormatError(f"edge ({u}, {w}) uses an undeclared vertex")
    return _checked(from_edges, edges, vertices, nv)


def _checked(make, *args) -> Graph:
    try:
        return make(*args)
    except GraphFormatError:
        raise
    except GraphError as exc:
        raise GraphFormatError(str(exc)) from None


def graph_to_json(g: Graph) -> dict:
    """Canonical JSON document; extra constraints are written as non-voting edges."""
    out = {"vertices": sorted(g.roles),
           "edges": [list(e) for e in sorted(g.voting_edges)]}
    nv = sorted(g.same_color_pairs())
    if nv:
        out["non_voting_edges"] = [list(e) for e in nv]
    return out


def dumps(g: Graph) -> str:
    return json.dumps(graph_to_json(g))


def parse_edge_list(text: str) -> Graph:
    vertices, edges = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected integers, got {raw.strip()!r}") from None
        if len(nums) == 1:
            vertices.append(_int(nums[0], f"line {lineno}: vertex id"))
        elif len(nums) == 2:
            edges.append((_int(nums[0], f"line {lineno}: vertex id"),
                          _int(nums[1], f"line {lineno}: vertex id")))
        else:
            raise GraphFormatError(f"line {lineno}: expected 'u w' or a single vertex")
    return _checked(from_edges, edges, vertices)


def read_graph(path) -> Graph:
    """Load a graph file, JSON if it parses as a JSON object, else an edge list."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return graph_from_json(text)
    return parse_edge_list(text)
