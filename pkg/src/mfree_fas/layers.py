"""BFS distance classes N_i^+(v) / N_i^-(v) and the layer-based counts used
to choose a split: cross-layer edge counts (numerators) and the
missing-edge sums that bound the split's missing pairs (denominators)."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .digraph import Digraph, VertexOutOfRange, bfs_distances, edges_between, missing_between


class Side(str, Enum):
    OUT = "out"
    IN = "in"


class KOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class LayerDecomposition:
    root: int
    direction: Side
    depth_cap: int
    layers: tuple[tuple[int, ...], ...]

    def layer(self, i: int) -> tuple[int, ...]:
        if 0 <= i < len(self.layers):
            return self.layers[i]
        return ()

    def union(self, lo: int, hi: int) -> list[int]:
        return sorted(v for i in range(lo, hi + 1) for v in self.layer(i))


def _layers(g: Digraph, v: int, depth_cap: int, direction: Side) -> LayerDecomposition:
    if not 0 <= v < g.n:
        raise VertexOutOfRange(v, g.n)
    if depth_cap < 1:
        raise ValueError("depth_cap must be >= 1")
    dist = bfs_distances(g, v, reverse=direction is Side.IN, depth_cap=depth_cap)
    buckets: list[list[int]] = [[] for _ in range(depth_cap + 1)]
    for u, d in dist.items():
        buckets[d].append(u)
    return LayerDecomposition(v, direction, depth_cap, tuple(tuple(sorted(b)) for b in buckets))


def out_layers(g: Digraph, v: int, depth_cap: int) -> LayerDecomposition:
    return _layers(g, v, depth_cap, Side.OUT)


def in_layers(g: Digraph, v: int, depth_cap: int) -> LayerDecomposition:
    return _layers(g, v, depth_cap, Side.IN)


def _check_k(k: int, m: int | None):
    if k < 1 or (m is not None and k > m - 3):
        raise KOutOfRange(f"k={k} outside [1, {'m-3' if m is None else m - 3}]")


def p_layer(g: Digraph, v: int, k: int, m: int | None = None) -> int:
    """|E(N_{k+1}^+(v), N_{k+2}^+(v))|."""
    _check_k(k, m)
    lay = out_layers(g, v, k + 2)
    return edges_between(g, lay.layer(k + 1), lay.layer(k + 2))[0]


def rprime_layer(g: Digraph, v: int, k: int, m: int | None = None) -> int:
    """|E(N_{k+2}^-(v), N_{k+1}^-(v))|."""
    _check_k(k, m)
    lay = in_layers(g, v, k + 2)
    return edges_between(g, lay.layer(k + 2), lay.layer(k + 1))[0]


def _surrogate(g: Digraph, v: int, k: int, m: int, direction: Side) -> int:
    _check_k(k, m)
    own = _layers(g, v, m - 1, direction)
    other = _layers(g, v, 1, Side.IN if direction is Side.OUT else Side.OUT)
    first_other = other.layer(1)
    total = sum(missing_between(g, own.layer(1), own.layer(i)) for i in range(k + 2, m))
    total += sum(missing_between(g, own.layer(i), first_other) for i in range(2, k + 2))
    return total


def s_surrogate(g: Digraph, v: int, k: int, m: int) -> int:
    """Sum_{i=k+2}^{m-1} |Ē(N_1^+, N_i^+)| + Sum_{i=2}^{k+1} |Ē(N_i^+, N_1^-)|."""
    return _surrogate(g, v, k, m, Side.OUT)


def t_surrogate(g: Digraph, v: int, k: int, m: int) -> int:
    """Mirror of :func:`s_surrogate` on in-layers."""
    return _surrogate(g, v, k, m, Side.IN)


def side_profile(g: Digraph, v: int, m: int, side: Side) -> tuple[list[int], list[int]]:
    """Numerators and surrogate denominators for every k in [1, m-3] at once.

    Equivalent to calling :func:`p_layer` / :func:`s_surrogate` (or the
    in-side pair) for each k, but with one BFS and one edge pass.  Index 0
    of the returned lists is k=1.  Assumes ``g`` is m-free, so N_1 on the
    opposite side never meets the own-side layers 1..m-1.
    """
    reverse = side is Side.IN
    dist = bfs_distances(g, v, reverse=reverse, depth_cap=m - 1)
    opp = g.out_adj[v] if reverse else g.in_adj[v]
    # classes 0..m-1 are own-side layers, class m is the opposite N_1
    far = m
    cls = dict(dist)
    for u in opp:
        cls.setdefault(u, far)
    size = [0] * (m + 1)
    for c in cls.values():
        size[c] += 1
    cnt = [[0] * (m + 1) for _ in range(m + 1)]
    for a, ca in cls.items():
        for b in g.out_adj[a]:
            cb = cls.get(b)
            if cb is not None:
                cnt[ca][cb] += 1

    def missing(i, j):
        return size[i] * size[j] - cnt[i][j] - cnt[j][i]

    nums, dens = [], []
    for k in range(1, m - 2):
        # own-direction edges run from layer k+1 to k+2
        nums.append(cnt[k + 2][k + 1] if reverse else cnt[k + 1][k + 2])
        den = sum(missing(1, i) for i in range(k + 2, m))
        den += sum(missing(i, far) for i in range(2, k + 2))
        dens.append(den)
    return nums, dens
