"""Weisfeiler-Lehman color refinement, orders 1 through 3.

k = 1 is classic vertex refinement. k >= 2 is the oblivious variant on
all |V|^k ordered tuples (repeats allowed): the i-th neighborhood of a
tuple is the multiset of colors obtained by substituting every vertex
into position i. Colors are interned through a collision-free dictionary
(canonical content to integer id), so two refinements run through the
same interner produce directly comparable histograms.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .graph import Graph


class WlBudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class WlColoring:
    k: int
    histogram: Counter
    iterations_run: int


class ColorInterner:
    """Injective map from canonical color content to small integer ids."""

    def __init__(self):
        self._table = {}

    def intern(self, key) -> int:
        got = self._table.get(key)
        if got is None:
            got = len(self._table)
            self._table[key] = got
        return got


_GLOBAL_INTERNER = ColorInterner()


def _partition_signature(colors):
    """Color assignment up to renaming: first-occurrence class indices."""
    seen = {}
    out = []
    for c in colors:
        if c not in seen:
            seen[c] = len(seen)
        out.append(seen[c])
    return tuple(out)


def _initial_colors_1(g: Graph, init, interner):
    if init is None:
        init = [0] * g.num_vertices
    return [interner.intern(("wl1-init", lab)) for lab in init]


def _initial_colors_k(g: Graph, k: int, interner):
    """Ordered isomorphism type of each tuple: equality pattern plus the
    induced adjacency pattern, both in tuple position order."""
    colors = {}
    for tup in itertools.product(range(g.num_vertices), repeat=k):
        eq = tuple(tup[i] == tup[j] for i in range(k) for j in range(i + 1, k))
        adj = tuple(g.edge_index(tup[i], tup[j]) is not None
                    if tup[i] != tup[j] else False
                    for i in range(k) for j in range(i + 1, k))
        colors[tup] = interner.intern(("wlk-init", k, eq, adj))
    return colors


def _refine_1(g, colors, interner, round_no):
    new = []
    for v in range(g.num_vertices):
        nbr = tuple(sorted(colors[u] for u in g.neighbors(v)))
        new.append(interner.intern(("wl1", round_no, colors[v], nbr)))
    return new


def _refine_k(g, k, colors, interner, round_no):
    n = g.num_vertices
    new = {}
    for tup, c in colors.items():
        parts = []
        for i in range(k):
            ms = sorted(colors[tup[:i] + (w,) + tup[i + 1:]] for w in range(n))
            parts.append(tuple(ms))
        new[tup] = interner.intern(("wlk", round_no, c, tuple(parts)))
    return new


def wl_refine(g: Graph, k: int = 1, init=None, budget: int = 200_000,
              interner: ColorInterner = None) -> WlColoring:
    """Refine to a stable coloring and return the stable color histogram.

    Histograms from two calls are comparable when both calls share an
    interner (the module-global one by default) within one process.
    """
    if k not in (1, 2, 3):
        raise ValueError(f"k must be 1, 2 or 3, got {k}")
    size = g.num_vertices ** k
    if size > budget:
        raise WlBudgetError(
            f"|V|^k = {size} tuples exceed budget {budget}; "
            f"raise budget to at least {size} to run")
    if interner is None:
        interner = _GLOBAL_INTERNER

    if k == 1:
        colors = _initial_colors_1(g, init, interner)
        sig = _partition_signature(colors)
        rounds = 0
        while True:
            rounds += 1
            colors = _refine_1(g, colors, interner, rounds)
            new_sig = _partition_signature(colors)
            if new_sig == sig:
                break
            sig = new_sig
        return WlColoring(1, Counter(colors), rounds)

    if init is not None:
        raise ValueError("init labels are only supported for k = 1")
    colors = _initial_colors_k(g, k, interner)
    keys = sorted(colors)
    sig = _partition_signature(colors[t] for t in keys)
    rounds = 0
    while True:
        rounds += 1
        colors = _refine_k(g, k, colors, interner, rounds)
        new_sig = _partition_signature(colors[t] for t in keys)
        if new_sig == sig:
            break
        sig = new_sig
    return WlColoring(k, Counter(colors.values()), rounds)


def wl_distinguishes(g1: Graph, g2: Graph, k: int = 1,
                     budget: int = 200_000) -> bool:
    """True when the stable k-WL histograms of the two graphs differ."""
    interner = ColorInterner()
    c1 = wl_refine(g1, k, budget=budget, interner=interner)
    c2 = wl_refine(g2, k, budget=budget, interner=interner)
    return c1.histogram != c2.histogram
