import math
import random

import numpy as np
import pytest
from scipy.integrate import dblquad

from loctopo.graph import from_edge_list, hop_distances, k_hop_vicinity
from loctopo.image import (PersistenceImageConfig, VectorizationError,
                           persistence_image, pi_plus, structural_counts,
                           weight_alpha)
from loctopo.persistence import PersistenceDiagram, PersistencePoint


def _diag(*pts):
    return PersistenceDiagram(tuple(PersistencePoint(*p) for p in pts))


def test_weight_alpha_branches():
    assert weight_alpha(-0.5) == 0.0
    assert weight_alpha(0.25) == 0.25
    assert weight_alpha(7.0) == 1.0
    assert weight_alpha(0.0) == 0.0 and weight_alpha(1.0) == 1.0


def test_empty_diagram_zero_image():
    img = persistence_image(_diag())
    assert img.shape == (25,) and not img.any()


def test_zero_persistence_point_zero_image():
    img = persistence_image(_diag((0.3, 0.3, 0, "ordinary")))
    assert not img.any()


def test_single_point_matches_quadrature_oracle():
    cfg = PersistenceImageConfig()
    d = _diag((0.0, 1.0, 0, "ordinary"))   # transformed to (0, 1), weight 1
    img = persistence_image(d, cfg).reshape(5, 5)
    xs = np.linspace(0, 1, 6)
    sigma = cfg.sigma

    def density(y, x):
        return math.exp(-((x - 0.0) ** 2 + (y - 1.0) ** 2) / (2 * sigma ** 2)) \
            / (2 * math.pi * sigma ** 2)

    for i in range(5):
        for j in range(5):
            ref, err = dblquad(density, xs[j], xs[j + 1],
                               lambda _: xs[i], lambda _: xs[i + 1],
                               epsabs=1e-10)
            assert abs(img[i, j] - ref) <= 1e-6


def test_swap_of_1d_points():
    # 1D extended point recorded as (birth=0.8, death=0.2): swapped to
    # (0.2, 0.8), persistence 0.6 -- identical to a 0D point (0.2, 0.8)
    a = persistence_image(_diag((0.8, 0.2, 1, "essential")))
    b = persistence_image(_diag((0.2, 0.8, 0, "ordinary")))
    assert np.allclose(a, b, atol=0)


def test_mass_monotone_and_permutation_invariant():
    rng = random.Random(4)
    pts = []
    prev = 0.0
    for _ in range(8):
        b = rng.random()
        d = min(1.0, b + rng.random() * 0.5 + 1e-3)
        pts.append((b, d, 0, "ordinary"))
        img = persistence_image(_diag(*pts))
        assert img.sum() >= prev - 1e-12
        prev = img.sum()
    # permutation invariance up to float summation order (diagrams from
    # the engine are always canonically sorted, so output determinism
    # does not rely on this)
    rng.shuffle(pts)
    assert np.allclose(persistence_image(_diag(*pts)),
                       persistence_image(_diag(*sorted(pts))),
                       rtol=1e-12, atol=0)


def test_rejects_unnormalized():
    with pytest.raises(VectorizationError):
        persistence_image(_diag((0.0, 5.0, 0, "ordinary")))


def test_stability_smoke():
    rng = random.Random(8)
    base = [(rng.random() * 0.5, 0.5 + rng.random() * 0.5, 0, "ordinary")
            for _ in range(6)]
    img0 = persistence_image(_diag(*base))
    delta = 0.01
    pert = [(b + delta, d + delta, dim, kind) for b, d, dim, kind in base]
    img1 = persistence_image(_diag(*pert))
    assert np.abs(img1 - img0).sum() <= 50 * delta  # loose empirical constant


def test_structural_counts_named():
    star = from_edge_list([(0, i) for i in range(1, 5)], 5)
    c = structural_counts(k_hop_vicinity(star, 0, 1), 1)
    assert (c.n_level, c.n_intra, c.n_cross) == ((1, 4), (0, 0), (4,))
    tri = from_edge_list([(0, 1), (0, 2), (1, 2)], 3)
    c = structural_counts(k_hop_vicinity(tri, 0, 1), 1)
    assert (c.n_level, c.n_intra, c.n_cross) == ((1, 2), (0, 1), (2,))


def test_structural_counts_brute_force():
    rng = random.Random(21)
    for _ in range(100):
        n = rng.randint(2, 15)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.4]
        g = from_edge_list(pairs, n)
        root = rng.randrange(n)
        k = rng.randint(1, 3)
        vg = k_hop_vicinity(g, root, k)
        c = structural_counts(vg, k)
        dist = hop_distances(vg.local, vg.root_locals[0])
        for j in range(k + 1):
            assert c.n_level[j] == sum(1 for d in dist if d == j)
            assert c.n_intra[j] == sum(
                1 for u, v in vg.local.edges if dist[u] == dist[v] == j)
        for j in range(k):
            assert c.n_cross[j] == sum(
                1 for u, v in vg.local.edges
                if {dist[u], dist[v]} == {j, j + 1})
        assert sum(c.n_level) == vg.local.num_vertices
        assert sum(c.n_intra) + sum(c.n_cross) == vg.local.num_edges


def test_pi_plus_layout_lengths():
    star = from_edge_list([(0, i) for i in range(1, 5)], 5)
    c1 = structural_counts(k_hop_vicinity(star, 0, 1), 1)
    v1 = pi_plus(_diag(), c1)
    assert len(v1) == 30
    assert np.array_equal(v1.values, [0.0] * 25 + [1, 4, 0, 0, 4])
    assert list(v1.segment("n_level")) == [1, 4]
    path = from_edge_list([(0, 1), (1, 2)], 3)
    c2 = structural_counts(k_hop_vicinity(path, 0, 2), 2)
    assert len(pi_plus(_diag(), c2)) == 33


def test_pi_plus_segment_decoding():
    tri = from_edge_list([(0, 1), (0, 2), (1, 2)], 3)
    c = structural_counts(k_hop_vicinity(tri, 0, 1), 1)
    v = pi_plus(_diag((0.0, 1.0, 0, "ordinary")), c)
    assert list(v.segment("n_intra")) == [0, 1]
    assert list(v.segment("n_cross")) == [2]
    assert len(v.segment("pi")) == 25
    with pytest.raises(KeyError):
        v.segment("nope")


def test_config_validation():
    with pytest.raises(VectorizationError):
        PersistenceImageConfig(resolution=(0, 5))
    with pytest.raises(VectorizationError):
        PersistenceImageConfig(sigma=0.0)
    with pytest.raises(VectorizationError):
        PersistenceImageConfig(grid_bounds=((0, 0), (0, 1)))
