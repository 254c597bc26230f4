"""Exact minimum feedback arc set for small digraphs.

Uses the ordering formulation: the minimum FAS size equals the minimum, over
all vertex orderings, of the number of edges pointing backwards.  The subset
DP runs layer by layer over subset size with numpy; the permutation brute
force is a deliberately separate second route.
"""
from __future__ import annotations

from itertools import permutations

import numpy as np

from .digraph import Digraph

DEFAULT_GUARD = 24


class TooLarge(ValueError):
    def __init__(self, n, guard):
        super().__init__(f"n={n} exceeds the exact-solver limit {guard}")
        self.n = n
        self.guard = guard


def _popcount(x: np.ndarray) -> np.ndarray:
    return np.bitwise_count(x)


def dp_table(g: Digraph, guard: int = DEFAULT_GUARD) -> tuple[np.ndarray, np.ndarray]:
    """``cost[S]`` = fewest backward edges over orderings of S and
    ``last[S]`` = the smallest vertex that can be placed last achieving it.

    Placing v last in S costs |E({v}, S - {v})|: its edges into earlier
    vertices point backwards.
    """
    n = g.n
    if n > guard:
        raise TooLarge(n, guard)
    size = 1 << n
    subsets = np.arange(size, dtype=np.int64)
    pop = _popcount(subsets)
    out_mask = np.zeros(n, dtype=np.int64)
    for u, w in g.edges:
        out_mask[u] |= 1 << w
    cost = np.zeros(size, dtype=np.int32)
    last = np.full(size, -1, dtype=np.int8)
    for c in range(1, n + 1):
        layer = subsets[pop == c]
        best = np.full(layer.shape, np.iinfo(np.int32).max, dtype=np.int32)
        arg = np.full(layer.shape, -1, dtype=np.int8)
        for v in range(n):
            bit = np.int64(1) << v
            has = (layer & bit) != 0
            rest = layer[has] & ~bit
            cand = cost[rest] + _popcount(rest & out_mask[v]).astype(np.int32)
            idx = np.nonzero(has)[0]
            better = cand < best[idx]
            best[idx[better]] = cand[better]
            arg[idx[better]] = v
        cost[layer] = best
        last[layer] = arg
    return cost, last


def exact_fas_size(g: Digraph, guard: int = DEFAULT_GUARD) -> int:
    if g.n == 0:
        return 0
    cost, _ = dp_table(g, guard)
    return int(cost[-1])


def exact_fas_edges(g: Digraph, guard: int = DEFAULT_GUARD) -> list[tuple[int, int]]:
    """A minimum FAS (dense ids), recovered by backtracking the DP."""
    if g.n == 0:
        return []
    _, last = dp_table(g, guard)
    s = (1 << g.n) - 1
    removed = []
    while s:
        v = int(last[s])
        s &= ~(1 << v)
        removed.extend((v, w) for w in g.out_adj[v] if s >> w & 1)
    return sorted(removed)


def brute_force_check(g: Digraph, guard: int = 8) -> int:
    """Minimum backward edges over all n! orderings."""
    if g.n > guard:
        raise TooLarge(g.n, guard)
    best = len(g.edges)
    for order in permutations(range(g.n)):
        pos = {v: i for i, v in enumerate(order)}
        back = sum(1 for u, w in g.edges if pos[u] > pos[w])
        best = min(best, back)
    return best
