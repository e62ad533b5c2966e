"""Vertex filter functions and their extension to sorted filtrations.

A filtration carries two phases: an ascending (sublevel) simplex order and
a descending (superlevel) one. The edge value in each phase is set by the
edge mode:

``lower-star``
    ascending max / descending min (the classic extended-persistence pair)
``upper-star``
    ascending min / descending max (mirrored classic)
``relaxed-ascending``
    ties get +0.5 in both phases (symmetric relaxation)
``relaxed-descending``
    ascending ties +0.5, descending ties -0.5

Non-tied edges always take max in the ascending phase and min in the
descending phase of the relaxed modes. Whenever an edge value escapes the
interval spanned by its endpoints, vertex entry values are lifted so both
phases remain valid filtrations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, UNREACHABLE, VicinityGraph, hop_distances

EDGE_MODES = ("lower-star", "upper-star", "relaxed-ascending", "relaxed-descending")


class FilterError(ValueError):
    pass


@dataclass(frozen=True)
class VertexFilter:
    """Real filter values on the vertices of a (vicinity) graph.

    ``excluded`` lists vertices outside the filter domain (e.g. unreachable
    from a root); they are dropped from any filtration built on top.
    """

    graph: Graph
    values: dict
    normalized: bool = False
    excluded: tuple = ()

    def __post_init__(self):
        dom = set(self.values)
        expected = set(range(self.graph.num_vertices)) - set(self.excluded)
        if dom != expected:
            raise FilterError("filter domain does not match graph vertices")
        if self.normalized and self.values:
            lo, hi = min(self.values.values()), max(self.values.values())
            if lo < -1e-12 or hi > 1 + 1e-12:
                raise FilterError("normalized filter outside [0,1]")


def spd_filter(vg: VicinityGraph) -> VertexFilter:
    """Hop distance to the single root, inside the vicinity graph."""
    if len(vg.roots) != 1:
        raise FilterError("spd_filter needs exactly one root")
    (root,) = vg.root_locals
    dist = hop_distances(vg.local, root)
    assert all(d != UNREACHABLE for d in dist), "vicinity must be root-connected"
    return VertexFilter(vg.local, {v: float(d) for v, d in enumerate(dist)})


def _root_distances(vg: VicinityGraph, weights=None):
    """Distances to both roots inside the vicinity, hop or curvature-weighted."""
    if len(vg.roots) != 2:
        raise FilterError("pairwise filters need exactly two roots")
    r1, r2 = vg.root_locals
    if weights is None:
        d1 = [float(d) if d != UNREACHABLE else None for d in hop_distances(vg.local, r1)]
        d2 = [float(d) if d != UNREACHABLE else None for d in hop_distances(vg.local, r2)]
    else:
        import math
        from .graph import weighted_distances

        wlocal = tuple(
            weights.edge_weight(vg.to_parent[u], vg.to_parent[v])
            for u, v in vg.local.edges
        )
        wg = Graph(vg.local.num_vertices, vg.local.edges, wlocal or None)
        d1 = [d if math.isfinite(d) else None for d in weighted_distances(wg, r1)]
        d2 = [d if math.isfinite(d) else None for d in weighted_distances(wg, r2)]
    return d1, d2


def pairwise_sum_filter(vg: VicinityGraph, weights=None) -> VertexFilter:
    """f(i) = d(i, root1) + d(i, root2) inside the vicinity graph.

    With ``weights`` (a CurvatureWeights), distances use the shifted
    curvature metric; otherwise hop counts. Vertices unreachable from
    either root are excluded from the filter domain.
    """
    d1, d2 = _root_distances(vg, weights)
    values, excluded = {}, []
    for v in range(vg.local.num_vertices):
        if d1[v] is None or d2[v] is None:
            excluded.append(v)
        else:
            values[v] = d1[v] + d2[v]
    return VertexFilter(vg.local, values, excluded=tuple(excluded))


def tuple_distance_filter(vg: VicinityGraph) -> VertexFilter:
    """Injective real encoding of the hop-distance pair to the two roots.

    f(u) = 1 + min(d1,d2) + (d//2)*((d//2) + d%2 - 1) with d = d1 + d2.
    Distinct unordered distance pairs map to distinct reals.
    """
    d1, d2 = _root_distances(vg, None)
    values, excluded = {}, []
    for v in range(vg.local.num_vertices):
        if d1[v] is None or d2[v] is None:
            excluded.append(v)
            continue
        a, b = int(d1[v]), int(d2[v])
        d = a + b
        values[v] = float(1 + min(a, b) + (d // 2) * ((d // 2) + (d % 2) - 1))
    return VertexFilter(vg.local, values, excluded=tuple(excluded))


def normalize(f: VertexFilter) -> VertexFilter:
    """Affine map of [min, max] onto [0, 1]; constant filters map to zeros."""
    if not f.values:
        return VertexFilter(f.graph, {}, normalized=True, excluded=f.excluded)
    lo, hi = min(f.values.values()), max(f.values.values())
    if hi == lo:
        vals = {v: 0.0 for v in f.values}
    else:
        span = hi - lo
        vals = {v: (x - lo) / span for v, x in f.values.items()}
    return VertexFilter(f.graph, vals, normalized=True, excluded=f.excluded)


def _edge_value(fu, fv, rule):
    if rule == "max":
        return max(fu, fv)
    if rule == "min":
        return min(fu, fv)
    if rule == "relaxed+":
        return fu + 0.5 if fu == fv else max(fu, fv)
    if rule == "relaxed-":
        return fu - 0.5 if fu == fv else min(fu, fv)
    raise FilterError(f"unknown edge rule {rule}")


_MODE_RULES = {
    "lower-star": ("max", "min"),
    "upper-star": ("min", "max"),
    "relaxed-ascending": ("relaxed+", "relaxed+"),
    "relaxed-descending": ("relaxed+", "relaxed-"),
}


@dataclass(frozen=True)
class Filtration:
    """Ascending + descending simplex orders for one vertex filter.

    Vertices and edges restricted to the filter domain. ``asc_v``/``asc_e``
    and ``desc_v``/``desc_e`` are entry values per phase, already lifted so
    that in the ascending phase every edge follows its endpoints and in the
    descending phase it precedes them.
    """

    graph: Graph
    vertices: tuple          # domain vertices, sorted
    edges: tuple             # (u, v) pairs within the domain
    vertex_values: tuple     # raw filter values, parallel to vertices
    asc_v: tuple
    asc_e: tuple
    desc_v: tuple
    desc_e: tuple
    edge_mode: str
    _vindex: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "_vindex",
                           {v: i for i, v in enumerate(self.vertices)})
        for j, (u, v) in enumerate(self.edges):
            iu, iv = self._vindex[u], self._vindex[v]
            assert self.asc_e[j] >= max(self.asc_v[iu], self.asc_v[iv])
            assert self.desc_e[j] <= min(self.desc_v[iu], self.desc_v[iv])

    def vertex_value(self, v):
        return self.vertex_values[self._vindex[v]]

    def ascending_order(self):
        """Simplices as (value, dim, index) sorted for the ascending phase."""
        items = [(self.asc_v[i], 0, i) for i in range(len(self.vertices))]
        items += [(self.asc_e[j], 1, j) for j in range(len(self.edges))]
        items.sort()
        return items

    def descending_order(self):
        """Simplices sorted for the descending phase (nonincreasing value)."""
        items = [(self.desc_v[i], 0, i) for i in range(len(self.vertices))]
        items += [(self.desc_e[j], 1, j) for j in range(len(self.edges))]
        items.sort(key=lambda t: (-t[0], t[1], t[2]))
        return items


def extend_to_edges(f: VertexFilter, mode: str = "lower-star") -> Filtration:
    """Extend a vertex filter to a full ascending + descending filtration."""
    if mode not in _MODE_RULES:
        raise FilterError(f"unknown edge mode {mode!r}; expected one of {EDGE_MODES}")
    asc_rule, desc_rule = _MODE_RULES[mode]
    dom = sorted(f.values)
    vidx = {v: i for i, v in enumerate(dom)}
    edges = [(u, v) for (u, v) in f.graph.edges if u in vidx and v in vidx]
    vv = [f.values[v] for v in dom]
    asc_e = [_edge_value(f.values[u], f.values[v], asc_rule) for u, v in edges]
    desc_e = [_edge_value(f.values[u], f.values[v], desc_rule) for u, v in edges]
    # lift vertex entries so both phases stay valid simplicial filtrations
    asc_v = list(vv)
    desc_v = list(vv)
    for j, (u, v) in enumerate(edges):
        for w in (u, v):
            i = vidx[w]
            asc_v[i] = min(asc_v[i], asc_e[j])
            desc_v[i] = max(desc_v[i], desc_e[j])
    return Filtration(f.graph, tuple(dom), tuple(edges), tuple(vv),
                      tuple(asc_v), tuple(asc_e), tuple(desc_v), tuple(desc_e),
                      mode)
