import random
from collections import Counter

import pytest

from loctopo.graph import from_edge_list
from loctopo.lab import (LabError, cfi_graph, epd_signature, figure2_example,
                         neighbor_subgraph, random_regular, rook_4x4,
                         shrikhande, theorem4_K)
from loctopo.persistence import betti_numbers


def test_counterexample_generators():
    r, s = rook_4x4(), shrikhande()
    for g in (r, s):
        assert g.num_vertices == 16 and g.num_edges == 48
        assert all(g.degree(v) == 6 for v in range(16))
    assert all(betti_numbers(neighbor_subgraph(r, v))[1] == 2 for v in range(16))
    assert all(betti_numbers(neighbor_subgraph(s, v))[1] == 1 for v in range(16))


def test_figure2_graph_shape():
    g, vals = figure2_example()
    assert g.num_vertices == 5 and g.num_edges == 5
    assert sorted(vals.values()) == [1.0, 2.0, 2.0, 3.0, 3.0]


def test_cfi_family():
    for ell in range(6):
        c = cfi_graph(ell)
        assert c.graph.num_vertices == 40
    g0, g1 = cfi_graph(0), cfi_graph(1)
    assert Counter(g0.graph.degree(v) for v in range(40)) == \
        Counter(g1.graph.degree(v) for v in range(40))
    assert len(g0.roots) == 2 and len(g1.roots) == 2
    for c in (g0, g1):
        for r, a in zip(c.roots, (1, 2)):
            assert c.labels[r] == (a, (0, 0, 0, 0))
    with pytest.raises(LabError):
        cfi_graph(7)


def test_random_regular_properties():
    g = random_regular(4, 3, seed=0)
    assert g.num_edges == 6  # K4 is the only simple 3-regular graph on 4 nodes
    g = random_regular(50, 3, seed=1)
    assert g.num_edges == 75
    assert all(g.degree(v) == 3 for v in range(50))
    for seed in range(20):
        h = random_regular(12, 3, seed=seed)
        assert all(h.degree(v) == 3 for v in range(12))
    assert random_regular(50, 3, seed=1) == random_regular(50, 3, seed=1)
    with pytest.raises(LabError):
        random_regular(5, 3, seed=0)  # odd stub count
    with pytest.raises(LabError):
        random_regular(4, 5, seed=0)


def test_theorem4_K_values():
    assert theorem4_K(50, 3, 0.1) == 3
    assert theorem4_K(50, 4, 0.1) == 2
    prev = 0
    for n in (10, 50, 200, 1000, 5000):
        k = theorem4_K(n, 3, 0.1)
        assert k >= prev
        prev = k
    with pytest.raises(LabError):
        theorem4_K(50, 2, 0.1)


def test_signature_k3_vs_p3():
    k3 = from_edge_list([(0, 1), (0, 2), (1, 2)], 3)
    p3 = from_edge_list([(0, 1), (1, 2)], 3)
    assert epd_signature(k3, "spd", 1) != epd_signature(p3, "spd", 1)


def test_signature_isomorphism_invariance():
    rng = random.Random(17)
    g = random_regular(14, 3, seed=3)
    perm = list(range(14))
    rng.shuffle(perm)
    g2 = from_edge_list([(perm[u], perm[v]) for u, v in g.edges], 14)
    assert epd_signature(g, "spd", 2) == epd_signature(g2, "spd", 2)
    assert epd_signature(g, "tuple-distance", 1) == \
        epd_signature(g2, "tuple-distance", 1)


def test_signature_separates_counterexamples():
    sig_r = epd_signature(rook_4x4(), "spd", 1)
    sig_s = epd_signature(shrikhande(), "spd", 1)
    assert sig_r != sig_s


def test_signature_bad_filter():
    with pytest.raises(LabError):
        epd_signature(rook_4x4(), "hks", 1)
