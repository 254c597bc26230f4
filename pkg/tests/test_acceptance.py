"""End-to-end acceptance checks over seeded corpora.

Each test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion.  All comparisons are exact integer or
rational arithmetic, so every tolerance is zero.
"""
import copy
import time
from collections import Counter
from fractions import Fraction

import pytest

from mfree_fas import Digraph, gamma, is_acyclic, trim
from mfree_fas.cli import main
from mfree_fas.exact import brute_force_check, exact_fas_size
from mfree_fas.generators import corpus, gen_cycle
from mfree_fas.layers import Side, p_layer, rprime_layer, side_profile
from mfree_fas.pathstats import (ExactRatio, check_path_distances, check_position_totals, check_layer_bounds,
                                 enumerate_sips, exact_ratios, min_alpha_beta, triple_stats)
from mfree_fas.report import render_edge_list
from mfree_fas.solver import BaseNode, Candidate, SplitNode, solve, verify_certificate

from conftest import ACCEPTANCE_NOTES

CORPUS_SIZE = 240
TIME_BUDGET_S = 60.0
SMALL_N = 14
TINY_N = 8


def crit(num, title):
    return pytest.mark.criterion(num, title)


@pytest.fixture(scope="module")
def main_corpus():
    specs = corpus(CORPUS_SIZE, seed=2024, n_min=8, n_max=40, ms=(4, 5, 6))
    return [(s, s.build()) for s in specs]


@pytest.fixture(scope="module")
def solved(main_corpus):
    t0 = time.perf_counter()
    results = [solve(g, s.m) for s, g in main_corpus]
    elapsed = time.perf_counter() - t0
    return results, elapsed


@pytest.fixture(scope="module")
def small_corpus(main_corpus):
    """Every main-corpus graph with n <= 14 plus a dedicated n in [8, 14] corpus."""
    extra = [(s, s.build()) for s in corpus(120, seed=7, n_min=8, n_max=SMALL_N)]
    return [(s, g) for s, g in main_corpus if g.n <= SMALL_N] + extra


@pytest.fixture(scope="module")
def small_stats(small_corpus):
    return [(s, g, triple_stats(g, s.m)) for s, g in small_corpus]


@pytest.fixture(scope="module")
def tiny_corpus(small_corpus):
    extra = [(s, s.build()) for s in corpus(60, seed=11, n_min=5, n_max=TINY_N)]
    return [(s, g) for s, g in small_corpus if g.n <= TINY_N] + extra


# 1 ------------------------------------------------------------------------

C1 = "approximation bound (m-2)|X| <= gamma(G), G-X acyclic, corpus >= 200 in < 60 s"


@crit(1, C1)
def test_corpus_shape(main_corpus):
    assert len(main_corpus) >= 200
    assert {s.model for s, _ in main_corpus} == {"cycle", "circulant", "blowup", "er_repair"}
    assert {s.m for s, _ in main_corpus} == {4, 5, 6}
    assert all(8 <= g.n <= 40 for _, g in main_corpus)


@crit(1, C1)
def test_bound_and_acyclic(main_corpus, solved):
    results, _ = solved
    bad = []
    for (s, g), r in zip(main_corpus, results):
        if (s.m - 2) * r.size > gamma(g) or not is_acyclic(g.remove_edges(r.edges))[0]:
            bad.append(s.describe())
    assert bad == []


@crit(1, C1)
def test_runtime(solved):
    _, elapsed = solved
    ACCEPTANCE_NOTES.append(f"corpus of {CORPUS_SIZE} solved in {elapsed:.2f} s")
    assert elapsed < TIME_BUDGET_S


# 2 ------------------------------------------------------------------------

C2 = "certificate replays on every run; three tamperings detected"


@crit(2, C2)
def test_certificates(main_corpus, solved):
    results, _ = solved
    failures = {s.describe(): p for (s, g), r in zip(main_corpus, results)
                if (p := verify_certificate(g, s.m, r))}
    assert failures == {}


def _first_split(node):
    while not isinstance(node, SplitNode):
        node = node.child
    return node


@pytest.fixture(scope="module")
def tamper_target(main_corpus, solved):
    for (s, g), r in zip(main_corpus, solved[0]):
        if r.size >= 2:
            return s, g, r
    raise AssertionError("corpus has no run with |X| >= 2")


@crit(2, C2)
def test_tamper_x3(tamper_target):
    s, g, r = tamper_target
    r = copy.deepcopy(r)
    node = next(n for n in _splits(r.trace) if n.x3)
    node.x3 = node.x3[1:]
    assert any("X₃ ≠" in p for p in verify_certificate(g, s.m, r))


@crit(2, C2)
def test_tamper_gamma(tamper_target):
    s, g, r = tamper_target
    r = copy.deepcopy(r)
    _first_split(r.trace).gamma_2 += 1
    assert any("γ(G) ≠ γ(G₁)+γ(G₂)+|Ē(V₁,V₂)|" in p for p in verify_certificate(g, s.m, r))


@crit(2, C2)
def test_tamper_fas(tamper_target):
    s, g, r = tamper_target
    r = copy.deepcopy(r)
    r.edges = r.edges[:-1]
    problems = verify_certificate(g, s.m, r)
    assert "X is not the union of the X₃ sets in the trace" in problems


def _splits(node):
    if isinstance(node, SplitNode):
        yield node
        for ch in node.children:
            yield from _splits(ch)
    elif not isinstance(node, BaseNode):
        yield from _splits(node.child)


@crit(2, C2)
def test_split_invariants_everywhere(main_corpus, solved):
    for (s, g), r in zip(main_corpus, solved[0]):
        for node in _splits(r.trace):
            assert (s.m - 2) * len(node.x3) <= node.missing
            assert node.gamma == node.gamma_1 + node.gamma_2 + node.missing


# 3 ------------------------------------------------------------------------

C3 = "enumerated p, r' equal layer counts; four missing-edge bounds hold (n <= 14)"


@crit(3, C3)
def test_layer_equalities(small_stats):
    mismatches = 0
    for s, g, st in small_stats:
        for k in st.ks:
            for v in range(g.n):
                mismatches += st.get("p", k, v) != p_layer(g, v, k, s.m)
                mismatches += st.get("rp", k, v) != rprime_layer(g, v, k, s.m)
    assert mismatches == 0


@crit(3, C3)
def test_missing_edge_bounds(small_stats):
    violations = [v for _, g, st in small_stats for v in check_layer_bounds(g, st)]
    assert violations == []


# 4 ------------------------------------------------------------------------

C4 = "triple counts have equal totals across positions (n <= 14)"


@crit(4, C4)
def test_position_totals(small_stats):
    for _, _, st in small_stats:
        assert check_position_totals(st) == []
        for k in st.ks:
            assert st.total("p", k) == st.total("q", k) == st.total("r", k)
            assert st.total("pp", k) == st.total("qp", k) == st.total("rp", k)


# 5 ------------------------------------------------------------------------

C5 = "trimmed cyclic graphs have an admissible exact ratio; surrogate min <= exact min"


def _surrogate_min(g, m):
    best = None
    for v in range(g.n):
        for side in (Side.OUT, Side.IN):
            nums, dens = side_profile(g, v, m, side)
            for num, den in zip(nums, dens):
                r = ExactRatio(num, den)
                if best is None or r < best:
                    best = r
    return best


@crit(5, C5)
def test_ratio_guarantee(small_corpus):
    checked = 0
    for s, g in small_corpus:
        h, _ = trim(g)
        if h.n == 0:
            continue
        st = triple_stats(h, s.m)
        best = min_alpha_beta(h, s.m, st)
        assert (s.m - 2) * best.ratio.numerator <= best.ratio.denominator
        assert all(best.ratio <= e.ratio for e in exact_ratios(st))
        assert _surrogate_min(h, s.m) <= best.ratio
        checked += 1
    assert checked > 0


# 6 ------------------------------------------------------------------------

C6 = "DP equals brute force (n <= 8); exact optimum <= |X| (n <= 14)"


@crit(6, C6)
def test_dp_vs_brute(tiny_corpus):
    assert len(tiny_corpus) >= 50
    assert [exact_fas_size(g) for _, g in tiny_corpus] == [brute_force_check(g) for _, g in tiny_corpus]


@crit(6, C6)
def test_exact_below_solver(small_corpus):
    ratios = Counter()
    for s, g in small_corpus:
        size = solve(g, s.m).size
        beta = exact_fas_size(g)
        assert beta <= size
        if beta:
            ratios[Fraction(size, beta)] += 1
    dist = ", ".join(f"{r}: {c}" for r, c in sorted(ratios.items()))
    ACCEPTANCE_NOTES.append(f"|X|/beta over {sum(ratios.values())} cyclic n<=14 graphs: {dist}")


# 7 ------------------------------------------------------------------------

C7 = "six-cycle worked trace; byte-identical reports across runs and --jobs"


@crit(7, C7)
def test_worked_example():
    g = gen_cycle(6)
    r = solve(g, 4)
    t = r.trace
    assert t.candidate == Candidate(0, 1, Side.OUT, 1, 2)
    assert t.v1 == [1, 2] and t.x3 == [(2, 3)]
    assert (t.gamma_1, t.gamma_2, t.missing, t.gamma) == (0, 3, 6, 9)
    assert r.edges == [(2, 3)]


def _report_bytes(tmp_path, g, m, jobs, tag):
    inp = tmp_path / f"in_{tag}.txt"
    inp.write_text(render_edge_list(g))
    out = tmp_path / f"out_{tag}.json"
    assert main(["solve", "--input", str(inp), "--m", str(m), "--output", str(out),
                 "--jobs", str(jobs)]) == 0
    return out.read_bytes()


@crit(7, C7)
def test_reports_byte_identical(tmp_path, main_corpus):
    cases = [(gen_cycle(6), 4)] + [(g, s.m) for s, g in main_corpus[:24]]
    for i, (g, m) in enumerate(cases):
        a = _report_bytes(tmp_path, g, m, 1, f"{i}a")
        b = _report_bytes(tmp_path, g, m, 1, f"{i}b")
        c = _report_bytes(tmp_path, g, m, 4, f"{i}c")
        assert a == b == c


# 8 ------------------------------------------------------------------------

C8 = "every enumerated shortest induced path has exact layer distances (n <= 14)"


@crit(8, C8)
def test_enumerated_paths(small_corpus):
    count = 0
    for s, g in small_corpus:
        for path in enumerate_sips(g, s.m - 1):
            assert check_path_distances(g, path) == []
            count += 1
    assert count > 0


@crit(8, C8)
def test_non_shortest_path_rejected():
    g = Digraph.build(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 3)])
    assert check_path_distances(g, (0, 1, 2, 3, 4))
