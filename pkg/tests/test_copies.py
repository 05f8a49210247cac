from __future__ import annotations

import math
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from oriented_ramsey.copies import (
    automorphism_count,
    contains_copy,
    contains_isometric_copy,
    count_copies,
    count_copies_backtrack,
    count_copies_subsets,
    emb,
    emb_extension,
    find_copy,
    find_isometric_copy,
    find_monotone_embedding,
    is_copy_map,
    is_isometric_map,
    is_isomorphic,
    ordered_contains,
)
from oriented_ramsey.graphs import (
    Digraph,
    Graph,
    OrderedGraph,
    OrientedGraph,
    complete_digraph,
    complete_graph,
    cycle_orientation,
    directed_path,
    girth,
    orientations,
    path_graph,
    transitive_tournament,
)
from strategies import graphs, oriented_graphs

ARC = directed_path(1)
P2 = directed_path(2)
P3 = directed_path(3)
TT3 = transitive_tournament(3)
CYCLIC = OrientedGraph(3, frozenset({(0, 1), (1, 2), (2, 0)}))
C4S = [cycle_orientation(4, b) for b in ("1010", "1100", "1110")]
SMALL_PATTERNS = [ARC, P2, P3, TT3, *C4S]


class TestCounting:
    @pytest.mark.parametrize("pattern, expected", [(ARC, 6), (TT3, 6), (P2, 6)])
    def test_d3(self, pattern, expected):
        d3 = complete_digraph(3)
        assert count_copies(d3, pattern) == expected
        assert oracles.count_copies(d3.arcs, pattern.arcs) == expected

    def test_methods_agree_on_d4(self):
        d4 = complete_digraph(4)
        for pat in SMALL_PATTERNS:
            assert count_copies_backtrack(d4, pat) == count_copies_subsets(d4, pat)

    @given(oriented_graphs(max_n=5), st.sampled_from([ARC, P2, TT3, C4S[1]]))
    def test_backtrack_matches_subset_oracle(self, host, pattern):
        if host.m > 12:
            return
        expected = oracles.count_copies(host.arcs, pattern.arcs)
        assert count_copies_backtrack(host, pattern) == expected
        assert count_copies_subsets(host, pattern) == expected

    def test_rejects_arcless_pattern(self):
        with pytest.raises(ValueError):
            count_copies(complete_digraph(3), OrientedGraph(2))

    def test_automorphisms(self):
        assert automorphism_count(TT3) == 1
        assert automorphism_count(cycle_orientation(4, "1010")) == 4
        assert automorphism_count(CYCLIC) == 3


class TestEmb:
    def test_values(self):
        assert emb(ARC) == 2
        assert emb(TT3) == 6
        assert emb(P2) == 6

    @pytest.mark.parametrize("pattern", SMALL_PATTERNS, ids=lambda p: str(sorted(p.arcs)))
    def test_dual_counting(self, pattern):
        for n in range(pattern.n, 7):
            assert count_copies(complete_digraph(n), pattern) == math.comb(n, pattern.n) * emb(pattern)

    def test_extension_single_arc(self):
        assert emb_extension(ARC, {(0, 1)}) == 1

    def test_extension_tt3_full(self):
        assert emb_extension(TT3, TT3.arcs) == 1

    def test_extension_tt3_one_arc(self):
        # copies of TT3 on {0, 1, 2} containing the arc 0 -> 1: the third vertex
        # is a source, a sink or in the middle, and each choice is one copy
        on3 = [c for c in combinations(sorted(complete_digraph(3).arcs), 3)
               if (0, 1) in c and oracles.arcs_isomorphic(frozenset(c), TT3.arcs)]
        assert len(on3) == 3
        assert emb_extension(TT3, {(0, 1)}) == 3

    @pytest.mark.parametrize("pattern", SMALL_PATTERNS, ids=lambda p: str(sorted(p.arcs)))
    def test_extension_independent_of_completion(self, pattern):
        J = {(5, 2)}
        values = {emb_extension(pattern, J, S) for S in
                  [range(0, pattern.n - 2), range(10, 8 + pattern.n), [7, 9, 11, 13][: pattern.n - 2]]}
        assert len(values) == 1

    def test_extension_too_many_vertices(self):
        assert emb_extension(ARC, {(0, 1), (2, 3)}) == 0


class TestContainment:
    def test_examples(self):
        phi = find_copy(TT3, P2)
        assert phi is not None and is_copy_map(TT3, P2, phi)
        assert not contains_copy(CYCLIC, TT3)
        assert not contains_copy(P2, TT3)

    @given(oriented_graphs(max_n=5), st.sampled_from([P2, TT3, C4S[0], C4S[2]]))
    def test_matches_permutation_oracle(self, host, pattern):
        assert contains_copy(host, pattern) == oracles.has_copy(host.arcs, host.n, pattern.arcs, pattern.n)


class TestIsometric:
    def test_tt3_has_no_isometric_path(self):
        assert contains_copy(TT3, P2)
        assert not contains_isometric_copy(TT3, P2)

    def test_identity_is_isometric(self):
        h = cycle_orientation(5, "10100")
        phi = find_isometric_copy(h, h)
        assert phi is not None and is_isometric_map(h, h, phi)

    @given(oriented_graphs(max_n=6), st.sampled_from([P2, P3, C4S[1], cycle_orientation(5, "11100")]))
    def test_matches_permutation_oracle(self, host, pattern):
        got = contains_isometric_copy(host, pattern)
        assert got == oracles.has_isometric_copy(host.n, host.arcs, pattern.n, pattern.arcs)
        if got:
            assert contains_copy(host, pattern)

    def test_high_girth_makes_cycle_copies_isometric(self):
        pattern = cycle_orientation(5, "10100")
        checked = 0
        for edges in combinations(list(combinations(range(5), 2)), 5):
            g = Graph(5, frozenset(edges))
            if girth(g) < 5:
                continue
            for o in orientations(g):
                checked += 1
                assert contains_copy(o, pattern) == contains_isometric_copy(o, pattern)
        assert checked == 12 * 32  # twelve labelled 5-cycles


class TestOrdered:
    def test_complete_host(self):
        host = OrderedGraph.natural(complete_graph(3))
        edge = Graph(2, frozenset({(0, 1)}))
        assert ordered_contains(host, OrderedGraph(edge, (0, 1)))
        assert ordered_contains(host, OrderedGraph(edge, (1, 0)))

    def test_path_host(self):
        host = OrderedGraph.natural(path_graph(3))
        pattern = OrderedGraph.natural(Graph(2, frozenset({(0, 1)})))
        phi = find_monotone_embedding(host, pattern)
        assert phi is not None and host.graph.has_edge(phi[0], phi[1])
        assert phi[0] < phi[1]

    def test_non_edge_between_extremes(self):
        host = OrderedGraph.natural(path_graph(3))
        # pattern: vertices a < m < b with the single edge {a, b}
        pattern = OrderedGraph.natural(Graph(3, frozenset({(0, 2)})))
        assert not ordered_contains(host, pattern)

    def test_pattern_larger_than_host(self):
        assert not ordered_contains(OrderedGraph.natural(complete_graph(2)),
                                    OrderedGraph.natural(path_graph(3)))

    @given(graphs(max_n=6))
    def test_identity_order(self, g):
        assert ordered_contains(OrderedGraph.natural(g), OrderedGraph.natural(g))

    @settings(max_examples=80)
    @given(graphs(min_n=1, max_n=6), st.data())
    def test_matches_oracle(self, g, data):
        order = tuple(data.draw(st.permutations(range(g.n))))
        pn = data.draw(st.integers(1, 4))
        pattern = data.draw(graphs(min_n=pn, max_n=pn))
        porder = tuple(data.draw(st.permutations(range(pn))))
        host, pat = OrderedGraph(g, order), OrderedGraph(pattern, porder)
        phi = find_monotone_embedding(host, pat)
        assert (phi is not None) == oracles.monotone_contains(g.edges, order, pattern.edges, porder)
        if phi is not None:
            assert all(g.has_edge(phi[u], phi[v]) for u, v in pattern.edges)
            ranks = [host.rank[phi[v]] for v in porder]
            assert ranks == sorted(ranks)


def test_isomorphism_helper():
    assert is_isomorphic(P2, Digraph(3, frozenset({(2, 0), (0, 1)})))
    assert not is_isomorphic(P2, Digraph(3, frozenset({(0, 1), (0, 2)})))
