"""Batch feature pipeline: vicinities to feature matrices, with caching.

One row per node (or node pair): vicinity extraction, filter evaluation,
normalization, extended persistence, vectorization. Diagram computation,
the expensive step, runs in a worker pool and is cached per
(graph hash, config hash, root); vectorization happens in the parent so
output bytes never depend on worker count or cache state.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import multiprocessing as mp
import os
from dataclasses import dataclass, field, replace

import numpy as np

from .curvature import CurvatureWeights, ollivier_ricci
from .filters import (FilterError, VertexFilter, extend_to_edges, normalize,
                      pairwise_sum_filter, spd_filter, tuple_distance_filter)
from .graph import Graph, VicinityGraph, k_hop_vicinity, pair_vicinity, weighted_distances
from .image import (PersistenceImageConfig, StructuralCounts, persistence_image,
                    structural_counts)
from .persistence import ESSENTIAL, ORDINARY, PersistenceDiagram, PersistencePoint, extended_pd
from .spectral import hks_filter

log = logging.getLogger("loctopo")

NODE_FILTERS = ("spd", "curvature-distance", "hks", "multi")
PAIR_FILTERS = ("pairwise-sum", "tuple-distance")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    task: str = "node-features"        # node-features | pair-features
    k: int = None                      # None = density-based default
    filter_name: str = "spd"           # see NODE_FILTERS / PAIR_FILTERS
    hks_t: float = 10.0
    edge_mode: str = "lower-star"
    alpha: float = 0.5                 # lazy-walk parameter for curvature
    pi: PersistenceImageConfig = PersistenceImageConfig()
    piplus: bool = False
    workers: int = 1
    cache_dir: str = None
    seed: int = 0

    def __post_init__(self):
        if self.task not in ("node-features", "pair-features"):
            raise ConfigError(f"unknown task {self.task!r}")
        base = self.filter_name.split(":")[0]
        allowed = NODE_FILTERS if self.task == "node-features" else PAIR_FILTERS
        if base not in allowed:
            raise ConfigError(
                f"filter {self.filter_name!r} not valid for {self.task} "
                f"(allowed: {', '.join(allowed)})")
        if self.k is not None and self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        if self.piplus and self.task != "node-features":
            raise ConfigError("PI+ structural counts need a single root")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")


def default_k(g: Graph) -> int:
    """k = 2 for sparse graphs (average degree < 10), else 1."""
    avg = 2.0 * g.num_edges / g.num_vertices if g.num_vertices else 0.0
    return 2 if avg < 10 else 1


def _filter_names(cfg: PipelineConfig):
    if cfg.filter_name == "multi":
        return ("hks:0.1", "hks:10", "curvature-distance")
    if cfg.filter_name == "hks":
        return (f"hks:{cfg.hks_t:g}",)
    return (cfg.filter_name,)


def _needs_curvature(cfg: PipelineConfig) -> bool:
    names = _filter_names(cfg)
    return ("curvature-distance" in names
            or cfg.filter_name == "pairwise-sum")


def _needs_hks(cfg: PipelineConfig):
    return tuple(float(n.split(":")[1]) for n in _filter_names(cfg)
                 if n.startswith("hks:"))


@dataclass
class _Precomp:
    curvature: CurvatureWeights = None
    hks: dict = field(default_factory=dict)   # t -> value list


def _precompute(g: Graph, cfg: PipelineConfig) -> _Precomp:
    pre = _Precomp()
    if _needs_curvature(cfg):
        pre.curvature = ollivier_ricci(g, alpha=cfg.alpha)
    for t in _needs_hks(cfg):
        vf = hks_filter(g, t)
        pre.hks[t] = [vf.values[i] for i in range(g.num_vertices)]
    return pre


def _curvature_distance_filter(vg: VicinityGraph, weights: CurvatureWeights) -> VertexFilter:
    """Weighted distance to the single root under the kappa + 1 metric."""
    (root,) = vg.root_locals
    wlocal = tuple(weights.edge_weight(vg.to_parent[u], vg.to_parent[v])
                   for u, v in vg.local.edges)
    wg = Graph(vg.local.num_vertices, vg.local.edges, wlocal or None)
    dist = weighted_distances(wg, root)
    assert all(math.isfinite(d) for d in dist), "vicinity must be root-connected"
    return VertexFilter(vg.local, {v: d for v, d in enumerate(dist)})


def _root_filters(g: Graph, root, cfg: PipelineConfig, pre: _Precomp):
    """(vicinity, list of vertex filters) for one root or root pair."""
    k = cfg.k if cfg.k is not None else default_k(g)
    if cfg.task == "node-features":
        vg = k_hop_vicinity(g, root, k)
    else:
        u, v = root
        vg = pair_vicinity(g, u, v, k)
    filters = []
    for name in _filter_names(cfg):
        if name == "spd":
            filters.append(spd_filter(vg))
        elif name == "curvature-distance":
            filters.append(_curvature_distance_filter(vg, pre.curvature))
        elif name.startswith("hks:"):
            vals = pre.hks[float(name.split(":")[1])]
            filters.append(VertexFilter(
                vg.local, {i: vals[p] for i, p in enumerate(vg.to_parent)}))
        elif name == "pairwise-sum":
            filters.append(pairwise_sum_filter(vg, pre.curvature))
        elif name == "tuple-distance":
            filters.append(tuple_distance_filter(vg))
        else:  # pragma: no cover
            raise ConfigError(f"unknown filter {name!r}")
    return vg, filters


def _root_diagrams(g: Graph, root, cfg: PipelineConfig, pre: _Precomp):
    """One diagram per sub-filter for a root; None marks a degenerate root."""
    try:
        _, filters = _root_filters(g, root, cfg, pre)
        return [extended_pd(extend_to_edges(normalize(f), cfg.edge_mode))
                for f in filters]
    except (FilterError, ValueError, AssertionError) as exc:
        log.warning("degenerate vicinity at root %s: %s", root, exc)
        return None


# ---------------------------------------------------------------------------
# worker pool plumbing

_WORKER_STATE = {}


def _init_worker(g, cfg, pre):
    _WORKER_STATE["args"] = (g, cfg, pre)


def _worker_task(root):
    g, cfg, pre = _WORKER_STATE["args"]
    ds = _root_diagrams(g, root, cfg, pre)
    if ds is None:
        return root, None
    return root, [d.to_records() for d in ds]


# ---------------------------------------------------------------------------
# diagram cache

def graph_hash(g: Graph) -> str:
    payload = json.dumps([g.num_vertices, list(g.edges),
                          list(g.weights) if g.weights else None])
    return hashlib.sha256(payload.encode()).hexdigest()


def config_hash(cfg: PipelineConfig) -> str:
    payload = json.dumps([cfg.task, cfg.k, cfg.filter_name, cfg.hks_t,
                          cfg.edge_mode, cfg.alpha])
    return hashlib.sha256(payload.encode()).hexdigest()


def _records_to_diagram(recs) -> PersistenceDiagram:
    pts = tuple(sorted(PersistencePoint(r["birth"], r["death"], r["dim"], r["kind"])
                       for r in recs))
    for p in pts:
        if p.dim not in (0, 1) or p.kind not in (ORDINARY, ESSENTIAL):
            raise ValueError(f"bad cached point {p}")
    return PersistenceDiagram(pts)


class DiagramCache:
    """File-per-root JSON store under (graph hash, config hash)."""

    def __init__(self, root_dir: str, g: Graph, cfg: PipelineConfig):
        sub = f"{graph_hash(g)[:16]}_{config_hash(cfg)[:16]}"
        self.dir = os.path.join(root_dir, sub)
        os.makedirs(self.dir, exist_ok=True)

    def _path(self, root):
        tag = f"{root[0]}-{root[1]}" if isinstance(root, tuple) else str(root)
        return os.path.join(self.dir, f"{tag}.json")

    def load(self, root):
        """List of diagrams, or the string "degenerate", or None on miss."""
        path = self._path(root)
        if not os.path.exists(path):
            return None
        try:
            with open(path) as fh:
                data = json.load(fh)
            if data == "degenerate":
                return "degenerate"
            return [_records_to_diagram(recs) for recs in data]
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("corrupt cache entry %s (%s); recomputing", path, exc)
            return None

    def store(self, root, diagrams):
        data = "degenerate" if diagrams is None else [d.to_records() for d in diagrams]
        with open(self._path(root), "w") as fh:
            json.dump(data, fh)


# ---------------------------------------------------------------------------
# feature assembly

@dataclass(frozen=True)
class FeatureMatrix:
    values: np.ndarray          # rows x features
    layout: tuple               # (name, length) segments
    ids: tuple                  # node id or (u, v) per row
    stats: dict

    @property
    def num_features(self):
        return self.values.shape[1]


def _layout(cfg: PipelineConfig, k: int):
    segs = [(f"pi[{name}]", cfg.pi.num_pixels) for name in _filter_names(cfg)]
    if cfg.piplus:
        segs += [("n_level", k + 1), ("n_intra", k + 1), ("n_cross", k)]
    return tuple(segs)


def _vectorize(g: Graph, root, diagrams, cfg: PipelineConfig, k: int):
    parts = [persistence_image(d, cfg.pi) for d in diagrams]
    if cfg.piplus:
        vg = k_hop_vicinity(g, root, k)
        c = structural_counts(vg, k)
        parts += [np.array(c.n_level, dtype=float),
                  np.array(c.n_intra, dtype=float),
                  np.array(c.n_cross, dtype=float)]
    return np.concatenate(parts)


def _compute_features(g: Graph, roots, cfg: PipelineConfig) -> FeatureMatrix:
    k = cfg.k if cfg.k is not None else default_k(g)
    cfg = replace(cfg, k=k)
    pre = _precompute(g, cfg)
    layout = _layout(cfg, k)
    width = sum(n for _, n in layout)

    cache = DiagramCache(cfg.cache_dir, g, cfg) if cfg.cache_dir else None
    per_root = {}
    pending = []
    hits = 0
    for root in dict.fromkeys(roots):
        got = cache.load(root) if cache else None
        if got is not None:
            per_root[root] = None if got == "degenerate" else got
            hits += 1
        else:
            pending.append(root)

    computed = len(pending)
    if pending:
        if cfg.workers == 1:
            results = [(r, _root_diagrams(g, r, cfg, pre)) for r in pending]
            results = [(r, None if ds is None else ds) for r, ds in results]
        else:
            ctx = mp.get_context("fork")
            with ctx.Pool(cfg.workers, initializer=_init_worker,
                          initargs=(g, cfg, pre)) as pool:
                raw = pool.map(_worker_task, pending, chunksize=16)
            results = [(r, None if recs is None
                        else [_records_to_diagram(rc) for rc in recs])
                       for r, recs in raw]
        for root, ds in results:
            per_root[root] = ds
            if cache:
                cache.store(root, ds)

    rows = np.zeros((len(roots), width))
    for i, root in enumerate(roots):
        ds = per_root[root]
        if ds is None:
            continue  # degenerate vicinity: zero row, already warned
        rows[i] = _vectorize(g, root, ds, cfg, k)
    stats = {"diagrams_computed": computed, "cache_hits": hits,
             "rows": len(roots), "k": k}
    return FeatureMatrix(rows, layout, tuple(roots), stats)


def node_features(g: Graph, cfg: PipelineConfig = None, nodes=None) -> FeatureMatrix:
    """Feature matrix with one row per node, ordered by node index."""
    cfg = cfg or PipelineConfig()
    if cfg.task != "node-features":
        raise ConfigError(f"node_features called with task {cfg.task!r}")
    roots = list(nodes) if nodes is not None else list(range(g.num_vertices))
    for u in roots:
        if not 0 <= u < g.num_vertices:
            raise ConfigError(f"node {u} out of range")
    return _compute_features(g, roots, cfg)


def pair_features(g: Graph, pairs, cfg: PipelineConfig = None) -> FeatureMatrix:
    """Feature matrix with one row per (u, v) pair, in input order."""
    cfg = cfg or PipelineConfig(task="pair-features", filter_name="pairwise-sum")
    if cfg.task != "pair-features":
        raise ConfigError(f"pair_features called with task {cfg.task!r}")
    roots = []
    for u, v in pairs:
        if not (0 <= u < g.num_vertices and 0 <= v < g.num_vertices) or u == v:
            raise ConfigError(f"invalid pair ({u}, {v})")
        roots.append((u, v))
    return _compute_features(g, roots, cfg)
