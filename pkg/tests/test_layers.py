import pytest
from hypothesis import given, strategies as st

from mfree_fas import Digraph, VertexOutOfRange, trim
from mfree_fas.layers import (KOutOfRange, Side, in_layers, out_layers, p_layer, rprime_layer,
                              s_surrogate, side_profile, t_surrogate)

from conftest import all_pairs_dist, digraphs, mfree_digraphs

# sink at 5: in-layers {4}, {2,3}, {0,1}
SIX_DAG = Digraph.build(6, [(0, 2), (1, 2), (2, 4), (3, 4), (4, 5), (1, 3), (0, 3)])


def brute_layer(d, v, i, direction):
    n = len(d)
    if direction is Side.OUT:
        return sorted(u for u in range(n) if d[v][u] == i)
    return sorted(u for u in range(n) if d[u][v] == i)


def brute_missing(g, a, b):
    return sum(1 for x in a for y in b if not g.adjacent(x, y))


def brute_edges(g, a, b):
    return sum(1 for x in a for y in b if g.has_edge(x, y))


def brute_s(g, d, v, k, m, side):
    own = lambda i: brute_layer(d, v, i, side)
    opp = brute_layer(d, v, 1, Side.IN if side is Side.OUT else Side.OUT)
    total = sum(brute_missing(g, own(1), own(i)) for i in range(k + 2, m))
    return total + sum(brute_missing(g, own(i), opp) for i in range(2, k + 2))


class TestLayers:
    def test_c6_out(self, c6):
        assert out_layers(c6, 0, 5).layers == ((0,), (1,), (2,), (3,), (4,), (5,))

    def test_c6_in(self, c6):
        assert in_layers(c6, 0, 2).layers == ((0,), (5,), (4,))

    def test_star(self):
        g = Digraph.build(3, [(0, 1), (0, 2)])
        assert out_layers(g, 0, 3).layers == ((0,), (1, 2), (), ())

    def test_bad_root(self, c6):
        with pytest.raises(VertexOutOfRange):
            out_layers(c6, 6, 2)

    @given(digraphs(max_n=9), st.data())
    def test_against_all_pairs(self, g, data):
        if g.n == 0:
            return
        v = data.draw(st.integers(0, g.n - 1))
        cap = data.draw(st.integers(1, 6))
        d = all_pairs_dist(g)
        for side, lay in ((Side.OUT, out_layers(g, v, cap)), (Side.IN, in_layers(g, v, cap))):
            for i in range(cap + 1):
                assert list(lay.layer(i)) == brute_layer(d, v, i, side)
            seen = [u for layer in lay.layers for u in layer]
            assert len(seen) == len(set(seen))


class TestNumerators:
    def test_c6(self, c6):
        assert p_layer(c6, 0, 1, 4) == 1
        assert rprime_layer(c6, 0, 1, 4) == 1

    def test_edgeless(self):
        g = Digraph.build(4, [])
        assert p_layer(g, 2, 1) == 0
        assert rprime_layer(g, 0, 1) == 0

    def test_two_c6_confined(self):
        edges = [(i, (i + 1) % 6) for i in range(6)] + [(6 + i, 6 + (i + 1) % 6) for i in range(6)]
        assert p_layer(Digraph.build(12, edges), 0, 1, 4) == 1

    def test_dag_sink(self):
        d = all_pairs_dist(SIX_DAG)
        expected = brute_edges(SIX_DAG, brute_layer(d, 5, 3, Side.IN), brute_layer(d, 5, 2, Side.IN))
        assert expected == 4
        assert rprime_layer(SIX_DAG, 5, 1) == 4

    def test_k_range(self, c6):
        with pytest.raises(KOutOfRange):
            p_layer(c6, 0, 0)
        with pytest.raises(KOutOfRange):
            rprime_layer(c6, 0, 2, 4)
        with pytest.raises(KOutOfRange):
            s_surrogate(c6, 0, 2, 4)


class TestSurrogates:
    def test_c6(self, c6):
        assert s_surrogate(c6, 0, 1, 4) == 2
        assert t_surrogate(c6, 0, 1, 4) == 2

    def test_c7(self, c7):
        assert s_surrogate(c7, 0, 1, 4) == 2
        assert t_surrogate(c7, 0, 1, 4) == 2

    def test_no_missing(self):
        # N_3^+ and N_1^- are empty, so every summand vanishes
        g = Digraph.build(3, [(0, 1), (1, 2)])
        d = all_pairs_dist(g)
        assert s_surrogate(g, 0, 1, 4) == brute_s(g, d, 0, 1, 4, Side.OUT) == 0

    def test_edge_free_cross_classes(self):
        # v=0 with N1+={1}, N2+={2}, N3+={3}, N1-={4}; no edges among {1,3} or {2,4}
        g = Digraph.build(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        assert s_surrogate(g, 0, 1, 4) == 2
        assert t_surrogate(g, 0, 1, 4) == 2


@given(mfree_digraphs(max_n=12))
def test_profile_matches_single_calls(gm):
    g, m = gm
    g, _ = trim(g)
    d = all_pairs_dist(g)
    for v in range(g.n):
        nums, dens = side_profile(g, v, m, Side.OUT)
        inums, idens = side_profile(g, v, m, Side.IN)
        for k in range(1, m - 2):
            assert nums[k - 1] == p_layer(g, v, k, m)
            assert dens[k - 1] == s_surrogate(g, v, k, m) == brute_s(g, d, v, k, m, Side.OUT)
            assert inums[k - 1] == rprime_layer(g, v, k, m)
            assert idens[k - 1] == t_surrogate(g, v, k, m) == brute_s(g, d, v, k, m, Side.IN)


@given(mfree_digraphs(max_n=12))
def test_first_in_layer_avoids_out_layers(gm):
    g, m = gm
    g, _ = trim(g)
    for v in range(g.n):
        reach = set(out_layers(g, v, m - 1).union(1, m - 1))
        assert not reach & set(in_layers(g, v, 1).layer(1))
