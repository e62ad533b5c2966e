"""Persistence images and structure-augmented PI+ vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import UNREACHABLE, VicinityGraph, hop_distances
from .persistence import PersistenceDiagram

SQRT2 = math.sqrt(2.0)


class VectorizationError(ValueError):
    pass


@dataclass(frozen=True)
class PersistenceImageConfig:
    resolution: tuple = (5, 5)
    sigma: float = 1.0
    grid_bounds: tuple = ((0.0, 1.0), (0.0, 1.0))  # (birth range, persistence range)

    def __post_init__(self):
        rows, cols = self.resolution
        if rows < 1 or cols < 1:
            raise VectorizationError("resolution must be at least 1x1")
        if self.sigma <= 0:
            raise VectorizationError("sigma must be positive")
        (x0, x1), (y0, y1) = self.grid_bounds
        if not (x1 > x0 and y1 > y0):
            raise VectorizationError("degenerate grid bounds")

    @property
    def num_pixels(self) -> int:
        return self.resolution[0] * self.resolution[1]


def weight_alpha(y: float) -> float:
    """Piece-wise linear weight: 0 below 0, identity on (0,1], 1 above."""
    if y <= 0:
        return 0.0
    if y <= 1:
        return y
    return 1.0


def _gauss_interval(lo, hi, mean, sigma):
    """Integral of the 1D Gaussian N(mean, sigma^2) over [lo, hi]."""
    a = (lo - mean) / (sigma * SQRT2)
    b = (hi - mean) / (sigma * SQRT2)
    return 0.5 * (math.erf(b) - math.erf(a))


def _transformed_points(d: PersistenceDiagram):
    """(x, y, alpha) per diagram point: swap 1D births/deaths so death >=
    birth, map (b, d) -> (b, d - b), weight by the persistence coordinate."""
    out = []
    for p in d.points:
        b, dth = p.birth, p.death
        if dth < b:  # 1D extended (and descending 0D) points get reversed
            b, dth = dth, b
        x, y = b, dth - b
        w = weight_alpha(y)
        if w > 0:
            out.append((x, y, w))
    return out


def persistence_image(d: PersistenceDiagram,
                      cfg: PersistenceImageConfig = PersistenceImageConfig()) -> np.ndarray:
    """Pixel integrals of the weighted Gaussian persistence surface.

    Expects diagrams built from normalized filters: coordinates must stay
    within [-1, 2] (relaxed edge values may exceed [0, 1] by up to 0.5).
    Pixels are exact Gaussian-rectangle integrals (products of 1D error-
    function integrals), row-major over the (birth, persistence) grid.
    """
    for p in d.points:
        if not (-1.0 <= p.birth <= 2.0 and -1.0 <= p.death <= 2.0):
            raise VectorizationError(
                f"diagram point {p} outside [-1,2]; normalize the filter first")
    rows, cols = cfg.resolution
    (x0, x1), (y0, y1) = cfg.grid_bounds
    xs = np.linspace(x0, x1, cols + 1)
    ys = np.linspace(y0, y1, rows + 1)
    img = np.zeros((rows, cols))
    for x, y, w in _transformed_points(d):
        col_ints = [_gauss_interval(xs[j], xs[j + 1], x, cfg.sigma)
                    for j in range(cols)]
        row_ints = [_gauss_interval(ys[i], ys[i + 1], y, cfg.sigma)
                    for i in range(rows)]
        img += w * np.outer(row_ints, col_ints)
    return img.reshape(-1)


@dataclass(frozen=True)
class StructuralCounts:
    """Per-hop-level node and edge counts of a single-root vicinity."""

    n_level: tuple   # n_j, j = 0..k
    n_intra: tuple   # edges within level j, j = 0..k
    n_cross: tuple   # edges level j -> j+1, j = 0..k-1
    k: int


def structural_counts(vg: VicinityGraph, k: int) -> StructuralCounts:
    if len(vg.roots) != 1:
        raise VectorizationError("structural_counts needs a single root")
    (root,) = vg.root_locals
    dist = hop_distances(vg.local, root)
    assert all(d != UNREACHABLE and d <= k for d in dist)
    n_level = [0] * (k + 1)
    for d in dist:
        n_level[d] += 1
    n_intra = [0] * (k + 1)
    n_cross = [0] * k if k > 0 else []
    for u, v in vg.local.edges:
        du, dv = dist[u], dist[v]
        if du == dv:
            n_intra[du] += 1
        else:
            lo = min(du, dv)
            assert abs(du - dv) == 1, "BFS levels differ by at most one"
            n_cross[lo] += 1
    return StructuralCounts(tuple(n_level), tuple(n_intra), tuple(n_cross), k)


@dataclass(frozen=True)
class FeatureVector:
    """Fixed-length feature values plus a named-segment layout."""

    values: np.ndarray
    layout: tuple = field(default=())  # (name, length) pairs

    def segment(self, name: str) -> np.ndarray:
        off = 0
        for seg, length in self.layout:
            if seg == name:
                return self.values[off:off + length]
            off += length
        raise KeyError(name)

    def __len__(self):
        return len(self.values)


def pi_vector(d: PersistenceDiagram, cfg=PersistenceImageConfig()) -> FeatureVector:
    img = persistence_image(d, cfg)
    return FeatureVector(img, (("pi", len(img)),))


def pi_plus(d: PersistenceDiagram, counts: StructuralCounts,
            cfg: PersistenceImageConfig = PersistenceImageConfig()) -> FeatureVector:
    """[PI; n_j; n_{j,j}; n_{j,j+1}] concatenated in that order."""
    img = persistence_image(d, cfg)
    values = np.concatenate([
        img,
        np.array(counts.n_level, dtype=float),
        np.array(counts.n_intra, dtype=float),
        np.array(counts.n_cross, dtype=float),
    ])
    layout = (("pi", len(img)),
              ("n_level", len(counts.n_level)),
              ("n_intra", len(counts.n_intra)),
              ("n_cross", len(counts.n_cross)))
    return FeatureVector(values, layout)
