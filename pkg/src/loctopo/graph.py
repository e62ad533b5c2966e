"""Immutable simple undirected graphs and vicinity-subgraph extraction."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

UNREACHABLE = -1  # sentinel for hop_distances; never a valid hop count


class GraphError(ValueError):
    """Raised on invalid graph input (self-loops, bad indices, bad weights)."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on dense vertex ids 0..n-1.

    Edges are stored canonically as sorted pairs (u < v). Weights, when
    present, are strictly positive reals; an absent weight map means unit
    weights everywhere.
    """

    num_vertices: int
    edges: tuple
    weights: Optional[tuple] = None  # parallel to edges
    _adj: tuple = field(init=False, repr=False, compare=False, default=())

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise GraphError(f"edge {e} out of range for n={self.num_vertices}")
            if u > v:
                raise GraphError(f"edge {e} not canonical (expected u < v)")
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
        if self.weights is not None:
            if len(self.weights) != len(self.edges):
                raise GraphError("weights length mismatch")
            for w in self.weights:
                if not w > 0:
                    raise GraphError(f"nonpositive edge weight {w}")
        adj = [[] for _ in range(self.num_vertices)]
        for idx, (u, v) in enumerate(self.edges):
            adj[u].append((v, idx))
            adj[v].append((u, idx))
        object.__setattr__(self, "_adj", tuple(tuple(a) for a in adj))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, u: int):
        return tuple(v for v, _ in self._adj[u])

    def incident(self, u: int):
        """(neighbor, edge index) pairs for u."""
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def weight(self, edge_index: int) -> float:
        return 1.0 if self.weights is None else self.weights[edge_index]

    def edge_index(self, u: int, v: int) -> Optional[int]:
        if u > v:
            u, v = v, u
        for w, idx in self._adj[u]:
            if w == v:
                return idx
        return None


def from_edge_list(pairs: Iterable, num_vertices: int,
                   weights: Optional[dict] = None) -> Graph:
    """Build a canonical simple graph, collapsing duplicate pairs.

    Self-loops and out-of-range indices are rejected. ``weights`` maps
    canonical pairs to positive reals; unlisted edges get weight 1.
    """
    canon = {}
    for u, v in pairs:
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if not (0 <= u < num_vertices and 0 <= v < num_vertices):
            raise GraphError(f"edge ({u},{v}) out of range for n={num_vertices}")
        e = (u, v) if u < v else (v, u)
        canon[e] = None
    edges = tuple(sorted(canon))
    wtup = None
    if weights:
        wmap = {}
        for (u, v), w in weights.items():
            e = (u, v) if u < v else (v, u)
            wmap[e] = float(w)
        wtup = tuple(wmap.get(e, 1.0) for e in edges)
    return Graph(num_vertices, edges, wtup)


def hop_distances(g: Graph, source: int) -> list:
    """BFS hop counts from source; UNREACHABLE marks other components."""
    if not 0 <= source < g.num_vertices:
        raise GraphError(f"source {source} out of range")
    dist = [UNREACHABLE] * g.num_vertices
    dist[source] = 0
    q = deque([source])
    while q:
        u = q.popleft()
        for v in g.neighbors(u):
            if dist[v] == UNREACHABLE:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def weighted_distances(g: Graph, source: int) -> list:
    """Dijkstra distances under edge weights; math.inf for unreachable."""
    import math

    if not 0 <= source < g.num_vertices:
        raise GraphError(f"source {source} out of range")
    dist = [math.inf] * g.num_vertices
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, idx in g.incident(u):
            nd = d + g.weight(idx)
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


@dataclass(frozen=True)
class VicinityGraph:
    """Induced subgraph around one or two root vertices.

    ``to_parent[i]`` is the parent vertex of local vertex i; ``roots`` are
    parent-side ids, always present in the image of ``to_parent``.
    """

    local: Graph
    to_parent: tuple
    roots: tuple

    def __post_init__(self):
        if len(set(self.to_parent)) != len(self.to_parent):
            raise GraphError("to_parent not injective")
        if len(self.to_parent) != self.local.num_vertices:
            raise GraphError("to_parent length mismatch")
        for r in self.roots:
            if r not in self.to_parent:
                raise GraphError(f"root {r} missing from subgraph")

    @property
    def root_locals(self) -> tuple:
        inv = {p: i for i, p in enumerate(self.to_parent)}
        return tuple(inv[r] for r in self.roots)


def _induce(g: Graph, vertices: list, roots: tuple) -> VicinityGraph:
    to_parent = tuple(sorted(vertices))
    inv = {p: i for i, p in enumerate(to_parent)}
    sub_edges = []
    sub_w = [] if g.weights is not None else None
    for idx, (u, v) in enumerate(g.edges):
        if u in inv and v in inv:
            a, b = inv[u], inv[v]
            sub_edges.append((a, b) if a < b else (b, a))
            if sub_w is not None:
                sub_w.append(g.weights[idx])
    order = sorted(range(len(sub_edges)), key=lambda i: sub_edges[i])
    edges = tuple(sub_edges[i] for i in order)
    wtup = tuple(sub_w[i] for i in order) if sub_w is not None else None
    return VicinityGraph(Graph(len(to_parent), edges, wtup), to_parent, roots)


def k_hop_vicinity(g: Graph, u: int, k: int) -> VicinityGraph:
    """Induced subgraph on all vertices within k hops of u."""
    if k < 0:
        raise GraphError("k must be >= 0")
    dist = hop_distances(g, u)
    verts = [v for v, d in enumerate(dist) if d != UNREACHABLE and d <= k]
    return _induce(g, verts, (u,))


def pair_vicinity(g: Graph, u: int, v: int, k: int) -> VicinityGraph:
    """Induced subgraph on the intersection of the two k-hop balls.

    Roots that fall outside the intersection (distance between them > k)
    are still inserted as isolated anchors so that pairwise filters stay
    well defined for negative link samples.
    """
    if u == v:
        raise GraphError("pair roots must be distinct")
    du, dv = hop_distances(g, u), hop_distances(g, v)
    verts = {w for w in range(g.num_vertices)
             if du[w] != UNREACHABLE and du[w] <= k
             and dv[w] != UNREACHABLE and dv[w] <= k}
    verts.update((u, v))  # anchor roots even when outside the intersection
    return _induce(g, sorted(verts), (u, v))


def connected_components(g: Graph) -> list:
    """Partition of vertices into components, each sorted, ordered by min."""
    seen = [False] * g.num_vertices
    blocks = []
    for s in range(g.num_vertices):
        if seen[s]:
            continue
        comp = []
        q = deque([s])
        seen[s] = True
        while q:
            x = q.popleft()
            comp.append(x)
            for y in g.neighbors(x):
                if not seen[y]:
                    seen[y] = True
                    q.append(y)
        blocks.append(sorted(comp))
    return blocks
