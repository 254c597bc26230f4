"""Shortest induced directed paths and the triple statistics built on them.

This is the brute-force side: everything here enumerates paths
explicitly and is meant for graphs of a dozen or so vertices.  The solver
never calls into this module; tests use it to check the layer formulas.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .digraph import CycleWitness, Digraph, bfs_distances, check_m_free, missing_between
from .layers import KOutOfRange, Side, in_layers, out_layers

FAMILIES = ("p", "q", "r", "pp", "qp", "rp")


class NotMFree(ValueError):
    def __init__(self, witness: CycleWitness, m: int):
        super().__init__(f"graph has a directed cycle of length {len(witness)} <= {m}: {list(witness.vertices)}")
        self.witness = witness
        self.m = m


class NoAdmissibleRatio(RuntimeError):
    pass


@dataclass(frozen=True)
class ExactRatio:
    """Non-negative fraction compared by integer cross-multiplication.

    A zero numerator orders as 0 whatever the denominator; a positive
    numerator over 0 orders as +infinity.
    """

    numerator: int
    denominator: int

    def _key(self):
        if self.numerator == 0:
            return 0, 1
        if self.denominator == 0:
            return 1, 0
        return self.numerator, self.denominator

    def __lt__(self, other: "ExactRatio") -> bool:
        a, b = self._key()
        c, d = other._key()
        if b == 0:
            return False
        if d == 0:
            return True
        return a * d < c * b

    def __le__(self, other: "ExactRatio") -> bool:
        return not other < self

    def same_value(self, other: "ExactRatio") -> bool:
        return not self < other and not other < self

    def at_most(self, num: int, den: int) -> bool:
        """self <= num/den (den > 0)."""
        return self <= ExactRatio(num, den)

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"


def enumerate_sips(g: Digraph, max_len: int) -> list[tuple[int, ...]]:
    """All shortest induced directed paths of length 1..max_len,
    lexicographically sorted.

    Extension is pruned by the distance condition: the j-th vertex must sit
    at distance exactly j from the origin, and its only edge to earlier path
    vertices is the one from its predecessor.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    found: list[tuple[int, ...]] = []
    for origin in range(g.n):
        dist = bfs_distances(g, origin, depth_cap=max_len)
        path = [origin]
        on_path = {origin}

        def extend():
            j = len(path)
            tail = path[-1]
            for w in g.out_adj[tail]:
                if dist.get(w) != j or w in on_path:
                    continue
                if g.has_edge(w, tail) or any(g.adjacent(w, x) for x in path[:-1]):
                    continue
                path.append(w)
                on_path.add(w)
                found.append(tuple(path))
                if j < max_len:
                    extend()
                path.pop()
                on_path.discard(w)

        extend()
    found.sort()
    return found


@dataclass
class TripleStats:
    """Per-vertex counts of the six triple families, for k in 1..m-3.

    ``counts[family][k - 1][v]``; families are named p, q, r and pp, qp, rp
    for the primed ones.
    """

    m: int
    n: int
    counts: dict[str, list[list[int]]] = field(repr=False)

    def get(self, family: str, k: int, v: int) -> int:
        if not 1 <= k <= self.m - 3:
            raise KOutOfRange(f"k={k} outside [1, {self.m - 3}]")
        return self.counts[family][k - 1][v]

    def total(self, family: str, k: int) -> int:
        return sum(self.counts[family][k - 1])

    @property
    def ks(self) -> range:
        return range(1, self.m - 2)


def triple_stats(g: Digraph, m: int, paths: list[tuple[int, ...]] | None = None) -> TripleStats:
    """Count distinct triples over shortest induced paths of length k+2.

    A path (v0, ..., v_{k+2}) gives the triple (v0, v_{k+1}, v_{k+2}) to the
    unprimed family and (v0, v1, v_{k+2}) to the primed one; a triple counts
    once however many interior paths realise it.
    """
    if m < 4:
        raise ValueError("m must be at least 4")
    witness = check_m_free(g, m)
    if witness is not None:
        raise NotMFree(witness, m)
    if paths is None:
        paths = enumerate_sips(g, m - 1)
    counts = {f: [[0] * g.n for _ in range(m - 3)] for f in FAMILIES}
    for k in range(1, m - 2):
        plain: set[tuple[int, int, int]] = set()
        primed: set[tuple[int, int, int]] = set()
        for p in paths:
            if len(p) == k + 3:
                plain.add((p[0], p[k + 1], p[k + 2]))
                primed.add((p[0], p[1], p[k + 2]))
        for x, y, z in plain:
            counts["p"][k - 1][x] += 1
            counts["q"][k - 1][y] += 1
            counts["r"][k - 1][z] += 1
        for x, y, z in primed:
            counts["pp"][k - 1][x] += 1
            counts["qp"][k - 1][y] += 1
            counts["rp"][k - 1][z] += 1
    return TripleStats(m, g.n, counts)


def s_exact(stats: TripleStats, v: int, k: int) -> int:
    stats.get("pp", k, v)  # range check
    top = stats.m - 3
    return (sum(stats.get("pp", i, v) for i in range(k, top + 1))
            + sum(stats.get("qp", i, v) for i in range(1, k + 1)))


def t_exact(stats: TripleStats, v: int, k: int) -> int:
    stats.get("r", k, v)
    top = stats.m - 3
    return (sum(stats.get("r", i, v) for i in range(k, top + 1))
            + sum(stats.get("q", i, v) for i in range(1, k + 1)))


@dataclass(frozen=True)
class RatioEntry:
    ratio: ExactRatio
    v: int
    k: int
    side: Side

    def sort_key(self):
        return self.ratio, self.side is Side.IN, self.v, self.k


def _min_entry(entries):
    best = None
    for e in entries:
        if best is None or e.ratio < best.ratio or (
                e.ratio.same_value(best.ratio) and e.sort_key()[1:] < best.sort_key()[1:]):
            best = e
    return best


def exact_ratios(stats: TripleStats) -> list[RatioEntry]:
    """Every alpha_k(v) and beta_k(v) with a positive denominator."""
    out = []
    for v in range(stats.n):
        for k in stats.ks:
            s = s_exact(stats, v, k)
            if s > 0:
                out.append(RatioEntry(ExactRatio(stats.get("p", k, v), s), v, k, Side.OUT))
            t = t_exact(stats, v, k)
            if t > 0:
                out.append(RatioEntry(ExactRatio(stats.get("rp", k, v), t), v, k, Side.IN))
    return out


def min_alpha_beta(g: Digraph, m: int, stats: TripleStats | None = None) -> RatioEntry:
    """Smallest admissible exact ratio, ties broken by (out before in, v, k)."""
    if stats is None:
        stats = triple_stats(g, m)
    best = _min_entry(exact_ratios(stats))
    if best is None:
        raise NoAdmissibleRatio("every s_k(v) and t_k(v) is zero; graph is acyclic or untrimmed")
    return best


@dataclass(frozen=True)
class Violation:
    check: str
    detail: str
    v: int | None = None
    k: int | None = None
    lhs: int | None = None
    rhs: int | None = None

    def __str__(self):
        loc = "" if self.v is None else f" at v={self.v}, k={self.k}"
        return f"{self.check}{loc}: {self.detail}"


def check_path_distances(g: Digraph, path: tuple[int, ...]) -> list[Violation]:
    """Every pair i < j on the path must be at distance j - i, measured both
    from v_i forwards and from v_j backwards."""
    fwd = [bfs_distances(g, a) for a in path]
    back = [bfs_distances(g, b, reverse=True) for b in path]
    bad = []
    for i, a in enumerate(path):
        for j in range(i + 1, len(path)):
            b = path[j]
            if fwd[i].get(b) != j - i:
                bad.append(Violation("path-distance", f"out-dist({a},{b})={fwd[i].get(b)}, expected {j - i}"))
            if back[j].get(a) != j - i:
                bad.append(Violation("path-distance", f"in-dist({b},{a})={back[j].get(a)}, expected {j - i}"))
    return bad


def check_position_totals(stats: TripleStats) -> list[Violation]:
    bad = []
    for k in stats.ks:
        for fams in (("p", "q", "r"), ("pp", "qp", "rp")):
            sums = [stats.total(f, k) for f in fams]
            if len(set(sums)) != 1:
                bad.append(Violation("triple-sums", f"{fams} sums {sums}", k=k))
    return bad


def check_layer_bounds(g: Digraph, stats: TripleStats) -> list[Violation]:
    """Both layer equalities and the four missing-edge upper bounds."""
    m = stats.m
    bad = []
    for v in range(g.n):
        out = out_layers(g, v, m - 1)
        inn = in_layers(g, v, m - 1)
        for k in stats.ks:
            def eq(name, got, want):
                if got != want:
                    bad.append(Violation(f"{name}-equality", f"{got} != {want}", v, k, got, want))

            def le(name, got, bound):
                if got > bound:
                    bad.append(Violation(f"{name}-bound", f"{got} > {bound}", v, k, got, bound))

            p_rhs = sum(1 for a in out.layer(k + 1) for b in g.out_adj[a] if b in set(out.layer(k + 2)))
            rp_rhs = sum(1 for a in inn.layer(k + 2) for b in g.out_adj[a] if b in set(inn.layer(k + 1)))
            eq("p", stats.get("p", k, v), p_rhs)
            eq("r'", stats.get("rp", k, v), rp_rhs)
            le("q", stats.get("q", k, v), missing_between(g, inn.layer(k + 1), out.layer(1)))
            le("r", stats.get("r", k, v), missing_between(g, inn.layer(1), inn.layer(k + 2)))
            le("p'", stats.get("pp", k, v), missing_between(g, out.layer(1), out.layer(k + 2)))
            le("q'", stats.get("qp", k, v), missing_between(g, out.layer(k + 1), inn.layer(1)))
    return bad
