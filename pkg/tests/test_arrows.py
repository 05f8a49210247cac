from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oriented_ramsey.arrows import (
    TwoColoring,
    arrows,
    arrows_brute_force,
    arrows_isometric,
    arrows_ordered,
    arrows_ordered_brute_force,
    classical_arrows,
    classical_ramsey_number,
    oriented_ramsey_number,
    tournaments_all_contain,
)
from oriented_ramsey.copies import contains_copy, contains_isometric_copy
from oriented_ramsey.graphs import (
    CyclicDigraphError,
    Graph,
    OrderedGraph,
    OrientedGraph,
    complete_graph,
    cycle,
    cycle_orientation,
    directed_path,
    path_graph,
    transitive_tournament,
    underlying_graph,
)
from oriented_ramsey.search import BudgetExceeded
from strategies import graphs

ARC = directed_path(1)
P2 = directed_path(2)
TT3 = transitive_tournament(3)
C4 = cycle_orientation(4, "1100")


class TestArrows:
    def test_edge_arrows_arc(self):
        assert arrows(complete_graph(2), ARC).verdict

    def test_c5_and_p2(self):
        # alternating orientations of an odd cycle are impossible
        assert arrows(cycle(5), P2).verdict
        v = arrows(cycle(4), P2)
        assert not v.verdict and not contains_copy(v.certificate, P2)

    @settings(max_examples=40)
    @given(graphs(max_n=6), st.sampled_from([P2, TT3, directed_path(3), C4]))
    def test_agrees_with_brute_force(self, g, pattern):
        if g.m > 11:
            return
        v = arrows(g, pattern)
        assert v.verdict == arrows_brute_force(g, pattern)
        if not v.verdict:
            assert underlying_graph(v.certificate) == g
            assert not contains_copy(v.certificate, pattern)

    @settings(max_examples=40)
    @given(graphs(max_n=6), st.sampled_from([P2, directed_path(3), C4]))
    def test_isometric_agrees_with_brute_force(self, g, pattern):
        if g.m > 11:
            return
        v = arrows_isometric(g, pattern)
        assert v.verdict == arrows_brute_force(g, pattern, isometric=True)
        if not v.verdict:
            assert not contains_isometric_copy(v.certificate, pattern)
        if v.verdict:
            assert arrows(g, pattern).verdict

    def test_isometric_examples(self):
        assert not arrows_isometric(complete_graph(3), P2).verdict
        assert arrows_isometric(complete_graph(2), ARC).verdict

    @given(graphs(max_n=6), st.data())
    def test_monotone_under_adding_edges(self, g, data):
        missing = [e for e in combinations(range(g.n), 2) if e not in g.edges]
        if not missing or g.m > 10:
            return
        bigger = Graph(g.n, g.edges | {data.draw(st.sampled_from(missing))})
        if arrows(g, P2).verdict:
            assert arrows(bigger, P2).verdict

    def test_cyclic_pattern_rejected(self):
        with pytest.raises(CyclicDigraphError):
            arrows(complete_graph(3), OrientedGraph(3, frozenset({(0, 1), (1, 2), (2, 0)})))

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            arrows(complete_graph(7), transitive_tournament(4), node_budget=5)


class TestOrientedRamsey:
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_paths(self, k):
        assert oriented_ramsey_number(directed_path(k), 8).value == k + 1

    def test_tt3(self):
        r = oriented_ramsey_number(TT3, 6)
        assert r.value == 4
        assert r.witness.n == 3 and not contains_copy(r.witness, TT3)

    def test_not_found(self):
        r = oriented_ramsey_number(transitive_tournament(4), 5)
        assert r.value is None and r.to_dict()["value"] == "not-found"

    def test_consistent_with_class_decision(self):
        for n in range(1, 6):
            assert tournaments_all_contain(n, TT3) == (n >= 4)

    def test_arrowing_with_k_n(self):
        assert arrows(complete_graph(4), TT3).verdict
        assert not arrows(complete_graph(3), TT3).verdict


class TestClassical:
    def test_k5_triangle_certificate(self):
        v = classical_arrows(complete_graph(5), cycle(3))
        assert not v.verdict
        col: TwoColoring = v.certificate
        assert col.covers(complete_graph(5))
        for color in ("red", "blue"):
            g = col.graph(color)
            assert g.m == 5
            assert not any(all(g.has_edge(a, b) for a, b in combinations(t, 2))
                           for t in combinations(range(5), 3))

    def test_r_c3(self):
        assert classical_ramsey_number(cycle(3), 7).value == 6

    def test_single_edge(self):
        assert classical_arrows(complete_graph(2), complete_graph(2)).verdict

    def test_r_p3(self):
        # a red/blue path on three vertices is forced in K_3: two edges share a colour
        assert classical_ramsey_number(path_graph(3), 5).value == 3

    def test_cap(self):
        with pytest.raises(BudgetExceeded):
            classical_arrows(complete_graph(7), cycle(3))


class TestOrdered:
    EDGE = OrderedGraph.natural(complete_graph(2))

    def test_trivial(self):
        assert arrows_ordered(2, self.EDGE).verdict
        assert not arrows_ordered(2, OrderedGraph.natural(path_graph(3))).verdict

    @pytest.mark.parametrize("order", [(0, 1, 2), (1, 0, 2), (0, 2, 1)])
    @pytest.mark.parametrize("N", [3, 4, 5])
    def test_agrees_with_brute_force(self, order, N):
        pattern = OrderedGraph(path_graph(3), order)
        assert arrows_ordered(N, pattern).verdict == arrows_ordered_brute_force(N, pattern)

    def test_monotone_path_on_three(self):
        # red 01, blue 12 and either colour on 02 avoids a monochromatic monotone P2
        assert not arrows_ordered(3, OrderedGraph.natural(path_graph(3))).verdict


@pytest.mark.parametrize("pattern", [P2, TT3, directed_path(3), C4], ids=["P2", "TT3", "P3", "C4"])
def test_three_ways_to_decide_complete_hosts(pattern):
    for n in range(1, 6):
        via_search = arrows(complete_graph(n), pattern).verdict
        via_classes = tournaments_all_contain(n, pattern)
        via_all = arrows_brute_force(complete_graph(n), pattern)
        assert via_search == via_classes == via_all


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_chromatic_number_forces_long_paths(k):
    # chi(G) >= k + 1 gives a path on k + 1 vertices in every orientation
    assert arrows(complete_graph(k + 1), directed_path(k)).verdict
    if k <= 2:
        for length in (3, 5, 7):
            assert arrows(cycle(length), directed_path(k)).verdict
