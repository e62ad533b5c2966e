"""Expressiveness lab: counterexample generators and EPD signatures.

Named strongly regular counterexamples (4x4 Rook vs Shrikhande), the
parity-gadget CFI family, configuration-model random regular graphs, and
exact extended-persistence signatures used to separate graph pairs that
low-order color refinement cannot.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .filters import extend_to_edges, spd_filter, tuple_distance_filter
from .graph import Graph, GraphError, from_edge_list, k_hop_vicinity, pair_vicinity
from .persistence import extended_pd


class LabError(RuntimeError):
    pass


def figure2_example():
    """Small worked example: a 5-vertex graph with a fixed integer filter.

    Returns (graph, filter values dict). Its lower-star extended diagram
    has exactly four points, one per homological event.
    """
    g = from_edge_list([(0, 2), (1, 3), (0, 3), (0, 4), (3, 4)], 5)
    return g, {0: 1.0, 1: 2.0, 2: 2.0, 3: 3.0, 4: 3.0}


def rook_4x4() -> Graph:
    """Vertices (i, j) in 4x4; adjacent iff same row or same column."""
    def vid(i, j):
        return 4 * i + j
    edges = []
    for i, j in itertools.product(range(4), repeat=2):
        for jj in range(j + 1, 4):
            edges.append((vid(i, j), vid(i, jj)))
        for ii in range(i + 1, 4):
            edges.append((vid(i, j), vid(ii, j)))
    return from_edge_list(edges, 16)


def shrikhande() -> Graph:
    """Cayley graph of Z4 x Z4 with connection set {+-(1,0), +-(0,1), +-(1,1)}."""
    diffs = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)]

    def vid(i, j):
        return 4 * i + j
    edges = []
    for i, j in itertools.product(range(4), repeat=2):
        for di, dj in diffs:
            edges.append((vid(i, j), vid((i + di) % 4, (j + dj) % 4)))
    return from_edge_list(edges, 16)


@dataclass(frozen=True)
class CfiGraph:
    """A parity-gadget graph with its two designated root vertices."""

    graph: Graph
    roots: tuple       # designated root vertex ids, when defined
    labels: tuple      # labels[v] = (group a in 1..5, parity vector)
    ell: int


def cfi_graph(ell: int) -> CfiGraph:
    """Member ell of the parity family on 5 groups of 8 vertices.

    Group a holds the even-parity 4-bit vectors when a <= 5 - ell and the
    odd-parity ones otherwise. u_{a,v} ~ u_{a',v'} iff some m in 1..4 has
    a' = a + m (cyclically in 1..5) and v_m = v'_{5-m}. Members with
    different ell have equal degree sequences but need not be isomorphic.
    """
    if not 0 <= ell <= 5:
        raise LabError(f"ell must lie in 0..5, got {ell}")
    labels = []
    for a in range(1, 6):
        want_odd = a > 5 - ell
        for vec in itertools.product((0, 1), repeat=4):
            if sum(vec) % 2 == (1 if want_odd else 0):
                labels.append((a, vec))
    index = {lab: i for i, lab in enumerate(labels)}
    edges = []
    for (a, vec), i in index.items():
        for m in range(1, 5):
            a2 = (a + m - 1) % 5 + 1
            for (b, vec2), j in index.items():
                if b == a2 and vec[m - 1] == vec2[4 - m]:
                    edges.append((i, j))
    g = from_edge_list(edges, len(labels))
    roots = tuple(index[(a, (0, 0, 0, 0))] for a in (1, 2)
                  if (a, (0, 0, 0, 0)) in index)
    return CfiGraph(g, roots, tuple(labels), ell)


def random_regular(n: int, r: int, seed: int) -> Graph:
    """Uniform r-regular simple graph via the configuration model.

    Stubs are paired uniformly at random and the result is resampled
    until simple (no loops, no parallel edges), up to 10000 attempts.
    """
    if n * r % 2 != 0:
        raise LabError(f"n*r = {n * r} is odd; no {r}-regular graph on {n} vertices")
    if r >= n:
        raise LabError(f"degree {r} infeasible on {n} vertices")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), r)
    for _ in range(10000):
        perm = rng.permutation(stubs)
        pairs = perm.reshape(-1, 2)
        edges = set()
        simple = True
        for u, v in pairs:
            u, v = int(u), int(v)
            if u == v:
                simple = False
                break
            e = (u, v) if u < v else (v, u)
            if e in edges:
                simple = False
                break
            edges.add(e)
        if simple:
            return from_edge_list(sorted(edges), n)
    raise LabError(f"no simple pairing found in 10000 attempts (n={n}, r={r})")


def theorem4_K(n: int, r: int, eps: float) -> int:
    """Vicinity radius floor((1/2 + eps) * ln(2n) / ln(r - 1))."""
    if r < 3:
        raise LabError(f"degree must be at least 3, got {r}")
    return int(math.floor((0.5 + eps) * math.log(2 * n) / math.log(r - 1)))


@dataclass(frozen=True)
class EpdSignature:
    """Canonically sorted per-root diagrams; compared as exact multisets.

    Filter values of the spd and tuple-distance filters are integers or
    half-integers, which float64 represents exactly, so tuple equality is
    exact equality.
    """

    filter_kind: str
    k_hops: int
    edge_mode: str
    per_root: tuple   # sorted tuple of diagram point-tuples

    def __eq__(self, other):
        if not isinstance(other, EpdSignature):
            return NotImplemented
        return (self.filter_kind == other.filter_kind
                and self.k_hops == other.k_hops
                and self.edge_mode == other.edge_mode
                and self.per_root == other.per_root)

    def __hash__(self):
        return hash((self.filter_kind, self.k_hops, self.edge_mode, self.per_root))


_SIGNATURE_MODES = {"spd": "relaxed-descending",
                    "tuple-distance": "relaxed-ascending"}


def _root_diagram(g: Graph, root, filter_kind: str, k: int, mode: str):
    if filter_kind == "spd":
        vg = k_hop_vicinity(g, root, k)
        f = spd_filter(vg)
    else:
        u, v = root
        vg = pair_vicinity(g, u, v, k)
        f = tuple_distance_filter(vg)
    return extended_pd(extend_to_edges(f, mode))


def epd_signature(g: Graph, filter_kind: str = "spd", k_hops: int = 1,
                  roots=None, edge_mode: str = None) -> EpdSignature:
    """Graph-level multiset of per-root extended diagrams.

    spd runs one diagram per root vertex (default: every vertex) on its
    k-hop vicinity; tuple-distance runs one per root pair (default: every
    unordered vertex pair) on the joint vicinity. The default edge modes
    relax ties so that equal-value edges carry distinct half-integer
    entries in the relevant phase.
    """
    if filter_kind not in _SIGNATURE_MODES:
        raise LabError(f"unknown filter kind {filter_kind!r}")
    mode = edge_mode or _SIGNATURE_MODES[filter_kind]
    if roots is None:
        if filter_kind == "spd":
            roots = range(g.num_vertices)
        else:
            roots = itertools.combinations(range(g.num_vertices), 2)
    diagrams = [_root_diagram(g, r, filter_kind, k_hops, mode) for r in roots]
    per_root = tuple(sorted(d.points for d in diagrams))
    return EpdSignature(filter_kind, k_hops, mode, per_root)


def neighbor_subgraph(g: Graph, u: int) -> Graph:
    """Subgraph induced by the open neighborhood of u (u excluded)."""
    nbrs = sorted(g.neighbors(u))
    inv = {p: i for i, p in enumerate(nbrs)}
    edges = [(inv[a], inv[b]) for a, b in g.edges if a in inv and b in inv]
    return from_edge_list(edges, len(nbrs))
