"""Simple digraphs over dense vertex ids, plus the counting primitives
(missing pairs, cross edges), acyclicity, girth and trimming."""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    pass


class LoopEdge(GraphError):
    def __init__(self, u):
        super().__init__(f"loop edge at vertex {u}")
        self.u = u


class DuplicateEdge(GraphError):
    def __init__(self, u, v):
        super().__init__(f"duplicate edge ({u}, {v})")
        self.edge = (u, v)


class VertexOutOfRange(GraphError):
    def __init__(self, v, n):
        super().__init__(f"vertex {v} out of range [0, {n})")
        self.v = v
        self.n = n


class OverlappingSets(GraphError):
    pass


@dataclass(frozen=True)
class CycleWitness:
    vertices: tuple[int, ...]

    def __len__(self):
        return len(self.vertices)

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def is_valid(self, g: "Digraph") -> bool:
        vs = self.vertices
        if len(vs) < 2 or len(set(vs)) != len(vs):
            return False
        return all(g.has_edge(u, v) for u, v in self.edges())


@dataclass(frozen=True, eq=False)
class Digraph:
    """Immutable loop-free digraph on vertices ``0..n-1``.

    ``labels[i]`` is the external id of dense vertex ``i``; induced subgraphs
    keep composing labels so results can always be reported in the ids of
    the original input.
    """

    n: int
    edges: frozenset[Edge]
    out_adj: tuple[tuple[int, ...], ...] = field(repr=False)
    in_adj: tuple[tuple[int, ...], ...] = field(repr=False)
    labels: tuple[Hashable, ...] = field(repr=False)
    _out_sets: tuple[frozenset[int], ...] = field(repr=False, compare=False)

    @classmethod
    def build(cls, n: int, edge_list: Iterable[Sequence[int]],
              labels: Sequence[Hashable] | None = None) -> "Digraph":
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        seen: set[Edge] = set()
        for e in edge_list:
            u, v = int(e[0]), int(e[1])
            for x in (u, v):
                if not 0 <= x < n:
                    raise VertexOutOfRange(x, n)
            if u == v:
                raise LoopEdge(u)
            if (u, v) in seen:
                raise DuplicateEdge(u, v)
            seen.add((u, v))
        if labels is None:
            labels = tuple(range(n))
        else:
            labels = tuple(labels)
            if len(labels) != n:
                raise GraphError(f"expected {n} labels, got {len(labels)}")
        return cls._from_edge_set(n, frozenset(seen), labels)

    @classmethod
    def _from_edge_set(cls, n, edges, labels):
        outs = [[] for _ in range(n)]
        ins = [[] for _ in range(n)]
        for u, v in edges:
            outs[u].append(v)
            ins[v].append(u)
        out_adj = tuple(tuple(sorted(a)) for a in outs)
        in_adj = tuple(tuple(sorted(a)) for a in ins)
        return cls(n, edges, out_adj, in_adj, tuple(labels),
                   tuple(frozenset(a) for a in out_adj))

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return (self.n, self.edges, self.labels) == (other.n, other.edges, other.labels)

    def __hash__(self):
        return hash((self.n, self.edges, self.labels))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._out_sets[u]

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._out_sets[u] or u in self._out_sets[v]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def labelled_edges(self, edges: Iterable[Edge] | None = None) -> list[tuple]:
        """Edges translated to external labels, sorted."""
        if edges is None:
            edges = self.edges
        lab = self.labels
        return sorted((lab[u], lab[v]) for u, v in edges)

    def index_of(self) -> dict[Hashable, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def remove_edges(self, removed: Iterable[Edge]) -> "Digraph":
        return Digraph._from_edge_set(self.n, self.edges - frozenset(removed), self.labels)


def _check_set(g: Digraph, vs: Iterable[int]) -> list[int]:
    out = sorted(set(vs))
    for v in out:
        if not 0 <= v < g.n:
            raise VertexOutOfRange(v, g.n)
    return out


def gamma(g: Digraph) -> int:
    """Number of unordered vertex pairs with no edge in either direction."""
    adjacent_pairs = {(min(u, v), max(u, v)) for u, v in g.edges}
    return g.n * (g.n - 1) // 2 - len(adjacent_pairs)


def edges_between(g: Digraph, a: Iterable[int], b: Iterable[int]) -> tuple[int, set[Edge]]:
    """E(A, B): edges leaving A and entering B."""
    a, b = set(_check_set(g, a)), set(_check_set(g, b))
    if a & b:
        raise OverlappingSets(f"sets share vertices {sorted(a & b)}")
    found = {(u, w) for u in a for w in g.out_adj[u] if w in b}
    return len(found), found


def missing_between(g: Digraph, a: Iterable[int], b: Iterable[int]) -> int:
    """|Ē(A, B)|: pairs (x, y) in A x B with no edge either way.

    Without antiparallel pairs this is |A||B| - |E(A,B)| - |E(B,A)|; counting
    pairs directly keeps it exact when a 2-cycle crosses the cut.
    """
    a, b = set(_check_set(g, a)), set(_check_set(g, b))
    if a & b:
        raise OverlappingSets(f"sets share vertices {sorted(a & b)}")
    touching = {(x, y) for x in a for y in g.out_adj[x] if y in b}
    touching |= {(x, y) for y in b for x in g.out_adj[y] if x in a}
    return len(a) * len(b) - len(touching)


def is_acyclic(g: Digraph) -> tuple[bool, list[int] | CycleWitness]:
    """Return ``(True, topological order)`` or ``(False, cycle)``.

    Kahn's algorithm with a smallest-id-first queue, so the order is
    deterministic.
    """
    indeg = [len(a) for a in g.in_adj]
    heap = [v for v in range(g.n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for w in g.out_adj[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) == g.n:
        return True, order
    return False, _find_cycle(g, {v for v in range(g.n) if indeg[v] > 0})


def _find_cycle(g: Digraph, remaining: set[int]) -> CycleWitness:
    # every vertex left by Kahn has an in-neighbour inside `remaining`;
    # walk backwards until a vertex repeats
    v = min(remaining)
    pos: dict[int, int] = {}
    walk = []
    while v not in pos:
        pos[v] = len(walk)
        walk.append(v)
        v = next(u for u in g.in_adj[v] if u in remaining)
    cyc = walk[pos[v]:]
    cyc.reverse()
    return CycleWitness(tuple(cyc))


def bfs_distances(g: Digraph, source: int, reverse: bool = False,
                  depth_cap: int | None = None) -> dict[int, int]:
    adj = g.in_adj if reverse else g.out_adj
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        d = dist[u]
        if depth_cap is not None and d >= depth_cap:
            continue
        for w in adj[u]:
            if w not in dist:
                dist[w] = d + 1
                queue.append(w)
    return dist


def shortest_cycle_through(g: Digraph, s: int, limit: int | None = None) -> CycleWitness | None:
    """A shortest directed cycle containing ``s`` (ties broken by BFS order)."""
    depth = None if limit is None else limit - 1
    parent = {s: -1}
    dist = {s: 0}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if s in g._out_sets[u]:
            path = []
            while u != -1:
                path.append(u)
                u = parent[u]
            return CycleWitness(tuple(reversed(path)))
        if depth is not None and dist[u] >= depth:
            continue
        for w in g.out_adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
    return None


def girth(g: Digraph, limit: int | None = None) -> tuple[int, CycleWitness] | None:
    """Length and witness of a shortest directed cycle, or None if acyclic.

    With ``limit`` set, only cycles of length <= limit are searched for.
    The witness is the first shortest cycle found scanning vertices in id
    order.
    """
    best: CycleWitness | None = None
    for s in range(g.n):
        cap = limit if best is None else (len(best) - 1 if limit is None else min(limit, len(best) - 1))
        if cap is not None and cap < 2:
            break
        c = shortest_cycle_through(g, s, cap)
        if c is not None and (best is None or len(c) < len(best)):
            best = c
    if best is None:
        return None
    return len(best), best


def check_m_free(g: Digraph, m: int) -> CycleWitness | None:
    """None when ``g`` has no directed cycle of length <= m, else a witness."""
    if m < 2:
        raise ValueError("m must be at least 2")
    found = girth(g, limit=m)
    return None if found is None else found[1]


def induced(g: Digraph, s: Iterable[int]) -> Digraph:
    verts = _check_set(g, s)
    index = {v: i for i, v in enumerate(verts)}
    edges = frozenset((index[u], index[w]) for u in verts for w in g.out_adj[u] if w in index)
    return Digraph._from_edge_set(len(verts), edges, tuple(g.labels[v] for v in verts))


def trim(g: Digraph) -> tuple[Digraph, list[int]]:
    """Strip vertices with no in-edges or no out-edges until none remain.

    Removal is FIFO, seeded with the initially removable vertices in
    ascending order; vertices that become removable are appended in
    ascending order. ``removed`` holds dense ids of ``g``.
    """
    indeg = [len(a) for a in g.in_adj]
    outdeg = [len(a) for a in g.out_adj]
    gone = [False] * g.n
    queued = [False] * g.n
    queue = deque()
    for v in range(g.n):
        if indeg[v] == 0 or outdeg[v] == 0:
            queue.append(v)
            queued[v] = True
    removed = []
    while queue:
        v = queue.popleft()
        gone[v] = True
        removed.append(v)
        fresh = []
        for w in g.out_adj[v]:
            if not gone[w]:
                indeg[w] -= 1
                if indeg[w] == 0 and not queued[w]:
                    fresh.append(w)
        for u in g.in_adj[v]:
            if not gone[u]:
                outdeg[u] -= 1
                if outdeg[u] == 0 and not queued[u]:
                    fresh.append(u)
        for w in sorted(set(fresh)):
            queued[w] = True
            queue.append(w)
    if not removed:
        return g, []
    return induced(g, [v for v in range(g.n) if not gone[v]]), removed
