"""Graph file formats: edge-list text and JSON."""

from __future__ import annotations

import json
from typing import TextIO, Union

from .graph import Graph, GraphError, from_edge_list


def read_edge_list(fp: Union[str, TextIO]) -> Graph:
    """Parse `u v [weight]` lines; `#` starts a comment.

    Vertex ids may be arbitrary strings; they are mapped to dense 0-based
    indices in first-appearance order, except that pure-integer inputs keep
    their numeric values (num_vertices = max index + 1).
    """
    if isinstance(fp, str):
        with open(fp) as f:
            return read_edge_list(f)
    tokens = []
    for lineno, line in enumerate(fp, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise GraphError(f"line {lineno}: expected 'u v [weight]'")
        w = None
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError as exc:
                raise GraphError(f"line {lineno}: bad weight {parts[2]!r}") from exc
        tokens.append((parts[0], parts[1], w))

    all_int = all(a.isdigit() and b.isdigit() for a, b, _ in tokens)
    if all_int:
        ids = {t: int(t) for t in {x for a, b, _ in tokens for x in (a, b)}}
        n = max(ids.values(), default=-1) + 1
    else:
        ids = {}
        for a, b, _ in tokens:
            for x in (a, b):
                if x not in ids:
                    ids[x] = len(ids)
        n = len(ids)
    pairs = [(ids[a], ids[b]) for a, b, _ in tokens]
    weights = {}
    for (a, b, w), (u, v) in zip(tokens, pairs):
        if w is not None:
            weights[(u, v)] = w
    return from_edge_list(pairs, n, weights or None)


def read_graph_json(fp: Union[str, TextIO]) -> Graph:
    """JSON format: {"num_vertices": n, "edges": [[u,v],...], "weights": {...}}."""
    if isinstance(fp, str):
        with open(fp) as f:
            return read_graph_json(f)
    data = json.load(fp)
    pairs = [tuple(e) for e in data["edges"]]
    weights = None
    if data.get("weights"):
        weights = {tuple(int(k) for k in key.split("-")): w
                   for key, w in data["weights"].items()}
    return from_edge_list(pairs, int(data["num_vertices"]), weights)


def write_graph_json(g: Graph, fp: Union[str, TextIO]) -> None:
    if isinstance(fp, str):
        with open(fp, "w") as f:
            write_graph_json(g, f)
            return
    data = {"num_vertices": g.num_vertices, "edges": [list(e) for e in g.edges]}
    if g.weights is not None:
        data["weights"] = {f"{u}-{v}": w
                           for (u, v), w in zip(g.edges, g.weights)}
    json.dump(data, fp)


def load_graph(path: str) -> Graph:
    """Dispatch on extension: .json uses the JSON schema, else edge-list text."""
    if path.endswith(".json"):
        return read_graph_json(path)
    return read_edge_list(path)
