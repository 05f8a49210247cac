"""Arrow relations and exact Ramsey-type numbers at desk scale.

``G -> H`` (oriented): every orientation of ``G`` contains a copy of ``H``.
Decisions are made by :func:`oriented_ramsey.search.find_labelling`, so a
negative verdict always carries a copy-free orientation (or colouring) as a
certificate and a positive verdict is an exhausted search.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable

from . import io
from .copies import (
    contains_copy,
    contains_isometric_copy,
    distance_rings,
    is_isomorphic,
    isometric_pair_mask,
    iter_embeddings,
    make_plan,
    ordered_contains,
)
from .graphs import (
    CyclicDigraphError,
    Digraph,
    Graph,
    OrderedGraph,
    OrientedGraph,
    complete_graph,
    is_acyclic,
    orientations,
    underlying_graph,
)
from .search import (
    DEFAULT_COPY_BUDGET,
    DEFAULT_NODE_BUDGET,
    BudgetExceeded,
    find_labelling,
)
from .tournaments import TOURNAMENT_CAP, TournamentCapExceeded, enumerate_tournaments, grow

#: Largest host edge count for exhaustive 2-colouring searches.
COLORING_EDGE_CAP = 18
ORDERED_EDGE_CAP = 28

RED, BLUE = "red", "blue"


@dataclass
class Verdict:
    relation: str
    verdict: bool
    certificate: Any = None
    nodes_explored: int = 0
    budget: int = DEFAULT_NODE_BUDGET
    host: Any = None
    pattern: Any = None

    def __bool__(self) -> bool:
        return self.verdict

    def to_dict(self) -> dict:
        cert = self.certificate
        if isinstance(cert, (Graph, Digraph)):
            cert = io.to_dict(cert)
        elif isinstance(cert, TwoColoring):
            cert = cert.to_dict()
        return {
            "relation": self.relation,
            "host": _describe(self.host),
            "pattern": _describe(self.pattern),
            "verdict": self.verdict,
            "certificate": cert,
            "nodes_explored": self.nodes_explored,
            "budget": self.budget,
        }


def _describe(obj: Any) -> Any:
    if isinstance(obj, (Graph, Digraph)):
        return io.to_dict(obj)
    if isinstance(obj, OrderedGraph):
        return {"graph": io.to_dict(obj.graph), "order": list(obj.order)}
    return obj


@dataclass(frozen=True)
class TwoColoring:
    """Red/blue colouring of the edges of a graph on ``n`` vertices."""

    n: int
    red: frozenset = field(default_factory=frozenset)
    blue: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        norm = lambda es: frozenset((u, v) if u < v else (v, u) for u, v in es)  # noqa: E731
        object.__setattr__(self, "red", norm(self.red))
        object.__setattr__(self, "blue", norm(self.blue))
        if self.red & self.blue:
            raise ValueError("an edge cannot be both red and blue")

    def color(self, u: int, v: int) -> str:
        e = (u, v) if u < v else (v, u)
        if e in self.red:
            return RED
        if e in self.blue:
            return BLUE
        raise KeyError(e)

    def graph(self, color: str) -> Graph:
        return Graph(self.n, self.red if color == RED else self.blue)

    def covers(self, g: Graph) -> bool:
        return g.edges == self.red | self.blue

    def to_dict(self) -> dict:
        return {"n": self.n, "red": sorted(map(list, self.red)), "blue": sorted(map(list, self.blue))}


def _require_acyclic(pattern: Digraph) -> None:
    if not is_acyclic(pattern):
        raise CyclicDigraphError("pattern must be acyclic")


def _bidirected(g: Graph) -> Digraph:
    return Digraph(g.n, frozenset(g.edges) | frozenset((v, u) for u, v in g.edges))


def _orientation_copies(
    host: Graph, pattern: Digraph, isometric: bool, copy_budget: int
) -> tuple[list[tuple[int, int]], list[list[tuple[int, int]]]]:
    """Host edges, and every copy of ``pattern`` in the bidirected host as a
    list of ``(edge, direction)``; direction 0 means ``u -> v`` for ``u < v``."""
    edges = host.sorted_edges()
    index = {e: i for i, e in enumerate(edges)}
    both = _bidirected(host)
    pair_mask = isometric_pair_mask(pattern, distance_rings(host)) if isometric else None
    arcs = pattern.sorted_arcs()
    seen = set()
    copies = []
    for phi in iter_embeddings(make_plan(pattern.out_adj, pattern.in_adj), both.out_adj, both.in_adj, pair_mask=pair_mask):
        lits = frozenset(
            (index[(phi[u], phi[v])], 0) if phi[u] < phi[v] else (index[(phi[v], phi[u])], 1)
            for u, v in arcs
        )
        if lits not in seen:
            seen.add(lits)
            copies.append(sorted(lits))
            if len(copies) > copy_budget:
                raise BudgetExceeded("copy", len(copies), copy_budget)
    return edges, copies


def _orient(n: int, edges: list[tuple[int, int]], labels: Iterable[int]) -> OrientedGraph:
    return OrientedGraph(
        n, frozenset((u, v) if lab == 0 else (v, u) for (u, v), lab in zip(edges, labels))
    )


def _decide_orientations(
    relation: str, host: Graph, pattern: Digraph, isometric: bool, node_budget: int, copy_budget: int
) -> Verdict:
    _require_acyclic(pattern)
    connected = underlying_graph(pattern).is_connected()
    # a connected pattern lives inside one component, so components are independent
    parts = host.components() if connected else [list(range(host.n))]
    symmetric = is_isomorphic(pattern, pattern.reverse())
    cert_arcs: set[tuple[int, int]] = set()
    nodes = 0
    for part in parts:
        sub = host.induced(part)
        if sub.m == 0:
            continue
        if sub.n < pattern.n or sub.m < pattern.m:
            labels = [0] * sub.m
            edges = sub.sorted_edges()
        else:
            edges, copies = _orientation_copies(sub, pattern, isometric, copy_budget)
            res = find_labelling(len(edges), copies, node_budget - nodes, fix_first=symmetric)
            nodes += res.nodes
            if res.labels is None:
                return Verdict(relation, True, None, nodes, node_budget, host, pattern)
            labels = res.labels
        for u, v in _orient(sub.n, edges, labels).arcs:
            cert_arcs.add((part[u], part[v]))
    cert = OrientedGraph(host.n, frozenset(cert_arcs))
    return Verdict(relation, False, cert, nodes, node_budget, host, pattern)


def arrows(
    host: Graph,
    pattern: Digraph,
    node_budget: int = DEFAULT_NODE_BUDGET,
    copy_budget: int = DEFAULT_COPY_BUDGET,
) -> Verdict:
    """Does every orientation of ``host`` contain a copy of the acyclic ``pattern``?

    When not, ``certificate`` is a pattern-free orientation of ``host``.
    """
    return _decide_orientations("arrows", host, pattern, False, node_budget, copy_budget)


def arrows_isometric(
    host: Graph,
    pattern: Digraph,
    node_budget: int = DEFAULT_NODE_BUDGET,
    copy_budget: int = DEFAULT_COPY_BUDGET,
) -> Verdict:
    """Does every orientation of ``host`` contain an isometric copy of ``pattern``?"""
    return _decide_orientations("arrows-iso", host, pattern, True, node_budget, copy_budget)


def arrows_brute_force(host: Graph, pattern: Digraph, isometric: bool = False) -> bool:
    """Reference decision over all ``2^m`` orientations."""
    test = contains_isometric_copy if isometric else contains_copy
    return all(test(o, pattern) for o in orientations(host))


# -- oriented Ramsey numbers ----------------------------------------------------


@dataclass
class RamseyResult:
    """Least ``n <= n_max`` with the arrow property, or ``value=None``.

    ``witness`` is a largest pattern-free object found (a tournament on
    ``value - 1`` vertices, or a colouring of ``K_(value-1)``).
    """

    value: int | None
    n_max: int
    witness: Any = None
    checked: int = 0

    def to_dict(self, key: str = "value") -> dict:
        w = self.witness
        if isinstance(w, (Graph, Digraph)):
            w = io.to_dict(w)
        elif isinstance(w, TwoColoring):
            w = w.to_dict()
        return {key: self.value if self.value is not None else "not-found", "n_max": self.n_max,
                "witness": w, "checked": self.checked}


def oriented_ramsey_number(
    pattern: Digraph, n_max: int, cap: int = TOURNAMENT_CAP
) -> RamseyResult:
    """Least ``n`` with ``K_n -> pattern``.

    Arrowing is preserved by adding edges, so the least order of an arrowing
    graph is attained by ``K_n``, whose orientations are the tournaments.
    Containing the pattern is inherited by supertournaments, so only
    pattern-free classes are grown; the first empty level is the answer.
    """
    _require_acyclic(pattern)
    if pattern.m == 0:
        return RamseyResult(pattern.n, n_max, None, 0)
    reps = [OrientedGraph(0, frozenset())]
    witness = reps[0]
    checked = 0
    for n in range(1, n_max + 1):
        if n > cap:
            raise TournamentCapExceeded(f"tournament enumeration capped at n={cap}, got {n}")
        reps = grow(reps, keep=lambda t: not contains_copy(t, pattern))
        checked += len(reps)
        if not reps:
            return RamseyResult(n, n_max, witness, checked)
        witness = reps[0]
    return RamseyResult(None, n_max, witness, checked)


def tournaments_all_contain(n: int, pattern: Digraph, cap: int = TOURNAMENT_CAP) -> bool:
    """``K_n -> pattern`` decided over one tournament per isomorphism class."""
    return all(contains_copy(t, pattern) for t in enumerate_tournaments(n, cap))


# -- classical and ordered 2-colourings ----------------------------------------


def _graph_copies(host: Graph, pattern: Graph) -> list[list[int]]:
    """Edge-index sets of the copies of ``pattern`` in ``host``."""
    index = {e: i for i, e in enumerate(host.sorted_edges())}
    both = _bidirected(host)
    p = _bidirected(pattern)
    pedges = pattern.sorted_edges()
    seen = set()
    for phi in iter_embeddings(make_plan(p.out_adj, p.in_adj), both.out_adj, both.in_adj):
        img = frozenset(index[(min(phi[u], phi[v]), max(phi[u], phi[v]))] for u, v in pedges)
        seen.add(img)
    return [sorted(s) for s in seen]


def _coloring_from_labels(n: int, edges: list[tuple[int, int]], labels: list[int]) -> TwoColoring:
    return TwoColoring(
        n,
        frozenset(e for e, lab in zip(edges, labels) if lab == 0),
        frozenset(e for e, lab in zip(edges, labels) if lab == 1),
    )


def _monochromatic_search(
    relation: str, n: int, edges, edge_copies, node_budget: int, host, pattern
) -> Verdict:
    copies = [[(e, c) for e in copy] for copy in edge_copies for c in (0, 1)]
    res = find_labelling(len(edges), copies, node_budget, fix_first=True)
    if res.labels is None:
        return Verdict(relation, True, None, res.nodes, node_budget, host, pattern)
    return Verdict(relation, False, _coloring_from_labels(n, edges, res.labels), res.nodes,
                   node_budget, host, pattern)


def classical_arrows(
    host: Graph,
    pattern: Graph,
    edge_cap: int = COLORING_EDGE_CAP,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> Verdict:
    """Does every red/blue colouring of ``host`` have a monochromatic ``pattern``?

    When not, ``certificate`` is a colouring without one.
    """
    if host.m > edge_cap:
        raise BudgetExceeded("host edge", host.m, edge_cap)
    return _monochromatic_search("classical-arrows", host.n, host.sorted_edges(),
                                 _graph_copies(host, pattern), node_budget, host, pattern)


def classical_ramsey_number(
    pattern: Graph, n_max: int, edge_cap: int = COLORING_EDGE_CAP
) -> RamseyResult:
    witness = None
    for n in range(max(pattern.n, 1), n_max + 1):
        v = classical_arrows(complete_graph(n), pattern, edge_cap)
        if v.verdict:
            return RamseyResult(n, n_max, witness, n)
        witness = v.certificate
    return RamseyResult(None, n_max, witness, n_max)


def monochromatic_coloring_has_copy(coloring: TwoColoring, pattern: Graph) -> bool:
    for color in (RED, BLUE):
        if contains_copy(_bidirected(coloring.graph(color)), _bidirected(pattern)):
            return True
    return False


def arrows_ordered(
    N: int,
    pattern: OrderedGraph,
    edge_cap: int = ORDERED_EDGE_CAP,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> Verdict:
    """Does every colouring of the naturally ordered ``K_N`` contain a
    monochromatic monotone copy of ``pattern``?"""
    host = complete_graph(N)
    if host.m > edge_cap:
        raise BudgetExceeded("host edge", host.m, edge_cap)
    index = {e: i for i, e in enumerate(host.sorted_edges())}
    prank = pattern.rank
    pedges = pattern.graph.sorted_edges()
    seen = set()
    for combo in combinations(range(N), pattern.n):
        img = frozenset(
            index[tuple(sorted((combo[prank[u]], combo[prank[v]])))] for u, v in pedges
        )
        seen.add(img)
    edge_copies = [sorted(s) for s in seen]
    return _monochromatic_search("arrows-ordered", N, host.sorted_edges(), edge_copies,
                                 node_budget, N, pattern)


def arrows_ordered_brute_force(N: int, pattern: OrderedGraph) -> bool:
    """Reference decision over all ``2^C(N,2)`` colourings."""
    edges = complete_graph(N).sorted_edges()
    for bits in range(1 << len(edges)):
        red = Graph(N, frozenset(e for i, e in enumerate(edges) if bits >> i & 1))
        blue = Graph(N, frozenset(e for i, e in enumerate(edges) if not bits >> i & 1))
        if not (ordered_contains(OrderedGraph.natural(red), pattern)
                or ordered_contains(OrderedGraph.natural(blue), pattern)):
            return False
    return True


__all__ = [
    "RamseyResult",
    "TwoColoring",
    "Verdict",
    "arrows",
    "arrows_brute_force",
    "arrows_isometric",
    "arrows_ordered",
    "arrows_ordered_brute_force",
    "classical_arrows",
    "classical_ramsey_number",
    "oriented_ramsey_number",
    "tournaments_all_contain",
]
