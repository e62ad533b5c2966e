"""Extended persistence diagrams of graph filtrations via union-find.

0D points come from two union-find sweeps (one per phase) plus one
essential point per component spanning (component min, component max).
1D extended points pair the cycle-creating ascending edge values with
descending edge values; they are computed by a spanning-forest exchange:
edges enter by decreasing descending value, and each cycle-closing edge
emits (largest ascending value on the cycle, its own descending value)
while the forest is kept ascending-minimal.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import NamedTuple

from .filters import Filtration
from .graph import Graph, connected_components

ORDINARY = "ordinary"
ESSENTIAL = "essential"

# Callbacks (filtration, diagram) invoked after every extended_pd call.
# The test suite registers a Betti-consistency checker here; the hook is a
# no-op in normal operation.
DIAGRAM_OBSERVERS = []


class PersistencePoint(NamedTuple):
    birth: float
    death: float
    dim: int
    kind: str


@dataclass(frozen=True)
class PersistenceDiagram:
    points: tuple

    def multiset(self) -> Counter:
        return Counter(self.points)

    def count(self, dim=None, kind=None) -> int:
        return sum(1 for p in self.points
                   if (dim is None or p.dim == dim)
                   and (kind is None or p.kind == kind))

    def count_at(self, birth, death, dim=1) -> int:
        return sum(1 for p in self.points
                   if p.dim == dim and p.birth == birth and p.death == death)

    def to_records(self):
        return [{"birth": p.birth, "death": p.death, "dim": p.dim,
                 "kind": p.kind} for p in self.points]


class _UnionFind:
    """Union-find tracking per-component birth value and root vertex id."""

    def __init__(self):
        self.parent = {}
        self.birth = {}

    def add(self, v, birth):
        self.parent[v] = v
        self.birth[v] = birth

    def find(self, v):
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a, b, elder_first):
        """Merge roots a, b; returns (surviving_root, dying_root).

        ``elder_first(x, y)`` is True when root x is at least as old as y;
        equal births fall back to the smaller vertex id.
        """
        if elder_first(a, b):
            s, l = a, b
        else:
            s, l = b, a
        self.parent[l] = s
        return s, l


def _finite_0d(order, edges, uf_births, edge_endpoints, ascending=True):
    """One union-find sweep over a phase; yields nonzero finite 0D points."""
    uf = _UnionFind()
    points = []
    if ascending:
        def elder_first(a, b):
            return (uf.birth[a], a) <= (uf.birth[b], b)
    else:
        def elder_first(a, b):
            return (-uf.birth[a], a) <= (-uf.birth[b], b)
    for value, dim, idx in order:
        if dim == 0:
            uf.add(idx, uf_births[idx])
        else:
            u, v = edge_endpoints[idx]
            ru, rv = uf.find(u), uf.find(v)
            if ru == rv:
                continue
            s, l = uf.union(ru, rv, elder_first)
            if uf.birth[l] != value:
                points.append(PersistencePoint(uf.birth[l], value, 0, ORDINARY))
    return points, uf


def _cycle_points(filt: Filtration):
    """1D extended points by the descending-order spanning-forest exchange."""
    vidx = filt._vindex
    n = len(filt.vertices)
    edges_local = [(vidx[u], vidx[v]) for u, v in filt.edges]
    order = sorted(range(len(edges_local)),
                   key=lambda j: (-filt.desc_e[j], j))
    adj = [dict() for _ in range(n)]  # forest: nbr -> edge id
    comp = _UnionFind()
    for i in range(n):
        comp.add(i, 0.0)
    points = []
    for j in order:
        u, v = edges_local[j]
        g = filt.desc_e[j]
        h = filt.asc_e[j]
        ru, rv = comp.find(u), comp.find(v)
        if ru != rv:
            comp.union(ru, rv, lambda a, b: a <= b)
            adj[u][v] = j
            adj[v][u] = j
            continue
        # cycle closed: walk the unique forest path u..v
        prev = {u: (None, None)}
        q = deque([u])
        while v not in prev:
            x = q.popleft()
            for y, eid in adj[x].items():
                if y not in prev:
                    prev[y] = (x, eid)
                    q.append(y)
        path_max, arg = -float("inf"), None
        node = v
        while prev[node][0] is not None:
            x, eid = prev[node]
            if filt.asc_e[eid] > path_max:
                path_max, arg = filt.asc_e[eid], eid
            node = x
        birth = max(h, path_max)
        points.append(PersistencePoint(birth, g, 1, ESSENTIAL))
        if h < path_max:
            # keep the forest minimal in ascending value
            a, b = edges_local[arg]
            del adj[a][b]
            del adj[b][a]
            adj[u][v] = j
            adj[v][u] = j
    return points


def extended_pd(filt: Filtration) -> PersistenceDiagram:
    """Full extended persistence diagram of a graph filtration.

    Zero-persistence finite 0D pairs are dropped (they carry no signal);
    essential 0D and all 1D points are kept, diagonal or not.
    """
    vidx = filt._vindex
    edges_local = [(vidx[u], vidx[v]) for u, v in filt.edges]
    asc_pts, asc_uf = _finite_0d(filt.ascending_order(), filt.edges,
                                 filt.asc_v, edges_local, ascending=True)
    desc_pts, _ = _finite_0d(filt.descending_order(), filt.edges,
                             filt.desc_v, edges_local, ascending=False)
    comps = {}
    for i in range(len(filt.vertices)):
        r = asc_uf.find(i)
        lo, hi = comps.get(r, (float("inf"), -float("inf")))
        comps[r] = (min(lo, filt.asc_v[i]), max(hi, filt.desc_v[i]))
    essential = [PersistencePoint(lo, hi, 0, ESSENTIAL)
                 for lo, hi in sorted(comps.values())]
    cycles = _cycle_points(filt)
    pts = tuple(sorted(asc_pts + desc_pts + essential + cycles))
    diagram = PersistenceDiagram(pts)
    for cb in DIAGRAM_OBSERVERS:
        cb(filt, diagram)
    return diagram


def ordinary_pd0(filt: Filtration) -> PersistenceDiagram:
    """0D diagram of the ascending phase only.

    Finite points follow the elder rule; each component additionally
    contributes one essential point (component min, component max) so that
    downstream vectorization never sees an infinite death.
    """
    vidx = filt._vindex
    edges_local = [(vidx[u], vidx[v]) for u, v in filt.edges]
    pts, uf = _finite_0d(filt.ascending_order(), filt.edges,
                         filt.asc_v, edges_local, ascending=True)
    comps = {}
    for i in range(len(filt.vertices)):
        r = uf.find(i)
        lo, hi = comps.get(r, (float("inf"), -float("inf")))
        comps[r] = (min(lo, filt.asc_v[i]), max(hi, filt.desc_v[i]))
    essential = [PersistencePoint(lo, hi, 0, ESSENTIAL)
                 for lo, hi in sorted(comps.values())]
    return PersistenceDiagram(tuple(sorted(pts + essential)))


def betti_numbers(g: Graph):
    """(beta0, beta1) = (#components, |E| - |V| + beta0)."""
    b0 = len(connected_components(g))
    return b0, g.num_edges - g.num_vertices + b0
