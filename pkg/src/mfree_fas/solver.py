"""Recursive feedback-arc-set construction for m-free digraphs.

Each level either stops (acyclic), strips vertices that cannot lie on a
cycle, or splits the vertex set along BFS layers around a chosen root and
deletes the edges crossing the split in one direction.  Every split is
chosen so that (m-2) * |cut| <= missing pairs across the split, which adds
up to (m-2) * |X| <= gamma(G) over the whole recursion.  The recursion
tree is kept as a certificate and can be replayed by
:func:`verify_certificate` without trusting anything computed here.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Hashable, Union

from .digraph import (Digraph, bfs_distances, check_m_free, edges_between, gamma, induced,
                      is_acyclic, missing_between, trim)
from .layers import Side, side_profile
from .pathstats import ExactRatio, NotMFree


class UnsupportedM(ValueError):
    pass


class NoAdmissibleCandidate(RuntimeError):
    pass


class InternalBoundViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class Candidate:
    v: Hashable
    k: int
    side: Side
    numerator: int
    denominator: int

    @property
    def ratio(self) -> ExactRatio:
        return ExactRatio(self.numerator, self.denominator)

    def sort_key(self):
        return self.side is Side.IN, self.v, self.k

    def beats(self, other: "Candidate") -> bool:
        if self.ratio < other.ratio:
            return True
        if other.ratio < self.ratio:
            return False
        return self.sort_key() < other.sort_key()


@dataclass
class BaseNode:
    vertices: list


@dataclass
class TrimNode:
    removed: list
    child: "TraceNode"


@dataclass
class SplitNode:
    candidate: Candidate
    v1: list
    v2: list
    x3: list
    missing: int
    gamma: int
    gamma_1: int
    gamma_2: int
    children: list = field(default_factory=list)


TraceNode = Union[BaseNode, TrimNode, SplitNode]


@dataclass
class FasResult:
    edges: list
    trace: TraceNode
    m: int
    gamma_input: int

    @property
    def size(self) -> int:
        return len(self.edges)


def select_candidate(g: Digraph, m: int, jobs: int = 1) -> Candidate:
    """Admissible (v, k, side) with the smallest numerator/denominator.

    Admissible means (m-2) * numerator <= denominator; a zero numerator is
    always admissible and ranks as ratio 0.  Ties go out-side first, then
    smallest v, then smallest k.  ``v`` is a dense id of ``g``.
    """

    def score(v):
        out = []
        for side in (Side.OUT, Side.IN):
            nums, dens = side_profile(g, v, m, side)
            for k, (num, den) in enumerate(zip(nums, dens), start=1):
                if (m - 2) * num <= den:
                    out.append(Candidate(v, k, side, num, den))
        return out

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            per_vertex = list(pool.map(score, range(g.n)))
    else:
        per_vertex = [score(v) for v in range(g.n)]
    best = None
    for cands in per_vertex:
        for c in cands:
            if best is None or c.beats(best):
                best = c
    if best is None:
        raise NoAdmissibleCandidate("no admissible split; input is not trimmed, cyclic and m-free")
    return best


def split(g: Digraph, c: Candidate, m: int | None = None) -> tuple[list[int], list[int], set]:
    """Partition around ``c``: V1 = layers 1..k+1 on the candidate's side."""
    dist = bfs_distances(g, c.v, reverse=c.side is Side.IN, depth_cap=c.k + 1)
    v1 = sorted(u for u, d in dist.items() if d >= 1)
    in_v1 = set(v1)
    v2 = [u for u in range(g.n) if u not in in_v1]
    if c.side is Side.OUT:
        _, x3 = edges_between(g, v1, v2)
    else:
        _, x3 = edges_between(g, v2, v1)
    return v1, v2, x3


def _solve(g: Digraph, m: int, jobs: int) -> tuple[set, TraceNode]:
    if is_acyclic(g)[0]:
        return set(), BaseNode(list(g.labels))
    trimmed, removed = trim(g)
    if removed:
        x, child = _solve(trimmed, m, jobs)
        return x, TrimNode([g.labels[v] for v in removed], child)

    c = select_candidate(g, m, jobs)
    v1, v2, x3 = split(g, c, m)
    missing = missing_between(g, v1, v2)
    if len(x3) != c.numerator or (m - 2) * len(x3) > missing:
        raise InternalBoundViolation(
            f"split at v={g.labels[c.v]}, k={c.k}, {c.side.value}: |X3|={len(x3)}, "
            f"numerator={c.numerator}, missing={missing}")
    g1, g2 = induced(g, v1), induced(g, v2)
    x1, t1 = _solve(g1, m, jobs)
    x2, t2 = _solve(g2, m, jobs)
    lab = g.labels
    x3_lab = {(lab[a], lab[b]) for a, b in x3}
    node = SplitNode(
        candidate=replace(c, v=lab[c.v]),
        v1=[lab[u] for u in v1],
        v2=[lab[u] for u in v2],
        x3=sorted(x3_lab),
        missing=missing,
        gamma=gamma(g),
        gamma_1=gamma(g1),
        gamma_2=gamma(g2),
        children=[t1, t2],
    )
    return x1 | x2 | x3_lab, node


def solve(g: Digraph, m: int, jobs: int = 1) -> FasResult:
    """Feedback arc set X with (m-2)|X| <= gamma(g) for an m-free ``g``.

    Edges of X and all trace entries use ``g.labels``.
    """
    if m < 4:
        raise UnsupportedM(f"m={m}: need m >= 4")
    witness = check_m_free(g, m)
    if witness is not None:
        raise NotMFree(witness, m)
    x, trace = _solve(g, m, jobs)
    result = FasResult(sorted(x), trace, m, gamma(g))
    if (m - 2) * result.size > result.gamma_input:
        raise InternalBoundViolation(f"(m-2)|X|={(m - 2) * result.size} > gamma={result.gamma_input}")
    return result


def verify_certificate(g: Digraph, m: int, result: FasResult) -> list[str]:
    """Replay ``result.trace`` against ``g``; return violations (empty = ok).

    Layers, cut edges and missing-pair counts are recomputed from the graph
    with plain BFS and edge counting; nothing recorded in the trace is
    trusted except as a claim to be checked.
    """
    problems: list[str] = []
    index = g.index_of()
    collected: set = set()

    def sub(labels):
        return induced(g, [index[x] for x in labels])

    def walk(node, h: Digraph, where: str):
        if isinstance(node, BaseNode):
            if sorted(node.vertices) != sorted(h.labels):
                problems.append(f"{where}: base vertex set differs from subproblem")
            if not is_acyclic(h)[0]:
                problems.append(f"{where}: base case is not acyclic")
            return
        if isinstance(node, TrimNode):
            local = h.index_of()
            alive = set(range(h.n))
            for x in node.removed:
                u = local.get(x)
                if u is None or u not in alive:
                    problems.append(f"{where}: trimmed vertex {x} not present")
                    continue
                has_in = any(w in alive for w in h.in_adj[u])
                has_out = any(w in alive for w in h.out_adj[u])
                if has_in and has_out:
                    problems.append(f"{where}: trimmed vertex {x} has both in- and out-edges")
                alive.discard(u)
            walk(node.child, induced(h, sorted(alive)), where + "/trim")
            return
        if not isinstance(node, SplitNode):
            problems.append(f"{where}: unknown node {type(node).__name__}")
            return

        c = node.candidate
        local = h.index_of()
        if c.v not in local:
            problems.append(f"{where}: candidate vertex {c.v} not in subproblem")
            return
        if not 1 <= c.k <= m - 3:
            problems.append(f"{where}: k={c.k} outside [1, m-3]")
        v = local[c.v]
        dist = bfs_distances(h, v, reverse=c.side is Side.IN, depth_cap=c.k + 1)
        want_v1 = sorted(h.labels[u] for u, d in dist.items() if d >= 1)
        want_v2 = sorted(set(h.labels) - set(want_v1))
        if sorted(node.v1) != want_v1:
            problems.append(f"{where}: V₁ does not match layers 1..k+1 of the candidate")
        if sorted(node.v2) != want_v2:
            problems.append(f"{where}: V₂ is not the complement of V₁")
        a = [local[x] for x in want_v1]
        b = [local[x] for x in want_v2]
        if c.side is Side.OUT:
            cut = edges_between(h, a, b)[1]
            label = "X₃ ≠ E(V₁,V₂)"
        else:
            cut = edges_between(h, b, a)[1]
            label = "X₃ ≠ E(V₂,V₁)"
        cut_lab = sorted((h.labels[x], h.labels[y]) for x, y in cut)
        if sorted(map(tuple, node.x3)) != cut_lab:
            problems.append(f"{where}: {label}")
        missing = missing_between(h, a, b)
        if node.missing != missing:
            problems.append(f"{where}: recorded |Ē(V₁,V₂)|={node.missing}, actual {missing}")
        if (m - 2) * len(node.x3) > missing:
            problems.append(f"{where}: (m-2)|X₃| = {(m - 2) * len(node.x3)} > |Ē(V₁,V₂)| = {missing}")
        if node.gamma != node.gamma_1 + node.gamma_2 + node.missing:
            problems.append(f"{where}: γ(G) ≠ γ(G₁)+γ(G₂)+|Ē(V₁,V₂)| "
                            f"({node.gamma} ≠ {node.gamma_1}+{node.gamma_2}+{node.missing})")
        h1, h2 = sub(want_v1), sub(want_v2)
        for name, rec, act in (("γ(G)", node.gamma, gamma(h)), ("γ(G₁)", node.gamma_1, gamma(h1)),
                               ("γ(G₂)", node.gamma_2, gamma(h2))):
            if rec != act:
                problems.append(f"{where}: recorded {name}={rec}, actual {act}")
        collected.update(map(tuple, node.x3))
        if len(node.children) != 2:
            problems.append(f"{where}: split must have two children")
            return
        walk(node.children[0], h1, where + "/1")
        walk(node.children[1], h2, where + "/2")

    walk(result.trace, g, "root")

    x = {tuple(e) for e in result.edges}
    if x != collected:
        problems.append("X is not the union of the X₃ sets in the trace")
    if not x <= {(g.labels[u], g.labels[w]) for u, w in g.edges}:
        problems.append("X contains edges not in G")
    remaining = g.remove_edges((index[a], index[b]) for a, b in x if a in index and b in index)
    if not is_acyclic(remaining)[0]:
        problems.append("G - X has a directed cycle")
    gam = gamma(g)
    if result.gamma_input != gam:
        problems.append(f"recorded γ(G)={result.gamma_input}, actual {gam}")
    if (m - 2) * len(x) > gam:
        problems.append(f"(m-2)|X| = {(m - 2) * len(x)} > γ(G) = {gam}")
    return problems
