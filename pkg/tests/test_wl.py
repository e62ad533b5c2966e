import random

import pytest

from loctopo.graph import from_edge_list
from loctopo.lab import cfi_graph, rook_4x4, shrikhande
from loctopo.wl import (ColorInterner, WlBudgetError, wl_distinguishes,
                        wl_refine)


def _two_triangles():
    return from_edge_list([(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)], 6)


def _c6():
    return from_edge_list([(i, (i + 1) % 6) for i in range(6)], 6)


def test_wl1_fails_on_regular_pair():
    # both 2-regular: degree refinement stabilizes immediately
    assert not wl_distinguishes(_two_triangles(), _c6(), 1)


def test_wl3_separates_triangles_from_c6():
    # the oblivious order-2 variant is exactly as strong as color
    # refinement, so separation first appears at order 3
    assert not wl_distinguishes(_two_triangles(), _c6(), 2)
    assert wl_distinguishes(_two_triangles(), _c6(), 3)


def test_wl_blind_on_strongly_regular_pair():
    assert not wl_distinguishes(rook_4x4(), shrikhande(), 1)
    assert not wl_distinguishes(rook_4x4(), shrikhande(), 2)


def test_wl1_blind_on_cfi_pair():
    assert not wl_distinguishes(cfi_graph(0).graph, cfi_graph(1).graph, 1)


def test_isomorphism_invariance():
    rng = random.Random(13)
    for _ in range(5):
        n = rng.randint(3, 8)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.5]
        g = from_edge_list(pairs, n)
        perm = list(range(n))
        rng.shuffle(perm)
        g2 = from_edge_list([(perm[u], perm[v]) for u, v in g.edges], n)
        for k in (1, 2, 3):
            assert not wl_distinguishes(g, g2, k)


def test_wl_monotone_in_k():
    # on this corpus: whatever k distinguishes, k+1 distinguishes too
    corpus = [(_two_triangles(), _c6()),
              (rook_4x4(), shrikhande()),
              (from_edge_list([(0, 1), (1, 2)], 3),
               from_edge_list([(0, 1), (0, 2)], 3))]
    for g1, g2 in corpus:
        prev = False
        for k in (1, 2):
            cur = wl_distinguishes(g1, g2, k)
            assert cur or not prev
            prev = cur


def test_histogram_sizes():
    g = _c6()
    c1 = wl_refine(g, 1)
    assert sum(c1.histogram.values()) == 6
    c2 = wl_refine(g, 2)
    assert sum(c2.histogram.values()) == 36


def test_budget_guard():
    g = rook_4x4()
    with pytest.raises(WlBudgetError, match="4096"):
        wl_refine(g, 3, budget=1000)


def test_init_labels_k1_only():
    g = _c6()
    c = wl_refine(g, 1, init=[0, 1, 0, 1, 0, 1])
    assert len(c.histogram) >= 2
    with pytest.raises(ValueError):
        wl_refine(g, 2, init=[0] * 6)


def test_shared_interner_comparability():
    interner = ColorInterner()
    a = wl_refine(_c6(), 1, interner=interner)
    b = wl_refine(_c6(), 1, interner=interner)
    assert a.histogram == b.histogram
