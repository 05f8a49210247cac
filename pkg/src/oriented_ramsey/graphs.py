"""Graph, digraph and ordered-graph types plus the structural queries used
throughout the package.

Vertices are always the dense labels ``0..n-1``.  Adjacency is kept as one
Python ``int`` bit row per vertex, so the search kernels can intersect
candidate sets with a single ``&``.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

#: Distance between vertices in different components.
INF = math.inf

#: Largest graph accepted by :func:`chromatic_number`.
CHROMATIC_CAP = 24


class CyclicDigraphError(ValueError):
    """Raised when an operation needs an acyclic digraph and gets a cycle."""


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        raise ValueError(f"vertex {v} out of range for n={n}")


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph.  Edges are stored as ``(u, v)`` with ``u < v``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for u, v in self.edges:
            _check_vertex(self.n, u)
            _check_vertex(self.n, v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(norm))

    @cached_property
    def adj(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return tuple(rows)

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled in the order given."""
        index = {v: i for i, v in enumerate(vertices)}
        return Graph(
            len(vertices),
            frozenset((index[u], index[v]) for u, v in self.edges if u in index and v in index),
        )

    def add_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, self.edges | frozenset(extra))

    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in iter_bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(list(iter_bits(comp)))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1


@dataclass(frozen=True)
class Digraph:
    """Loopless digraph; anti-parallel arc pairs are allowed."""

    n: int
    arcs: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        for u, v in arcs:
            _check_vertex(self.n, u)
            _check_vertex(self.n, v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
        object.__setattr__(self, "arcs", arcs)

    @cached_property
    def out_adj(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for u, v in self.arcs:
            rows[u] |= 1 << v
        return tuple(rows)

    @cached_property
    def in_adj(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for u, v in self.arcs:
            rows[v] |= 1 << u
        return tuple(rows)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_adj[u] >> v & 1)

    def reverse(self):
        return type(self)(self.n, frozenset((v, u) for u, v in self.arcs))

    def relabel(self, perm: Sequence[int]):
        """Return the digraph with vertex ``v`` renamed ``perm[v]``."""
        return type(self)(self.n, frozenset((perm[u], perm[v]) for u, v in self.arcs))

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not (self.out_adj[v] | self.in_adj[v])]


@dataclass(frozen=True)
class OrientedGraph(Digraph):
    """Digraph without loops or anti-parallel pairs."""

    def __post_init__(self) -> None:
        super().__post_init__()
        for u, v in self.arcs:
            if (v, u) in self.arcs:
                raise ValueError(f"anti-parallel arcs between {u} and {v}")


@dataclass(frozen=True)
class OrderedGraph:
    """A graph with a total vertex order.

    ``order`` lists the vertices from smallest to largest.
    """

    graph: Graph
    order: tuple[int, ...]

    def __post_init__(self) -> None:
        order = tuple(self.order)
        if sorted(order) != list(range(self.graph.n)):
            raise ValueError("order must be a permutation of the vertex labels")
        object.__setattr__(self, "order", order)

    @cached_property
    def rank(self) -> tuple[int, ...]:
        r = [0] * len(self.order)
        for i, v in enumerate(self.order):
            r[v] = i
        return tuple(r)

    @property
    def n(self) -> int:
        return self.graph.n

    @classmethod
    def natural(cls, graph: Graph) -> "OrderedGraph":
        return cls(graph, tuple(range(graph.n)))


# -- structural queries -------------------------------------------------------


def underlying_graph(d: Digraph) -> Graph:
    return Graph(d.n, frozenset(d.arcs))


def topological_order(d: Digraph) -> list[int] | None:
    """Kahn's algorithm, smallest available label first; ``None`` on a cycle."""
    indeg = [row.bit_count() for row in d.in_adj]
    ready = [v for v in range(d.n) if indeg[v] == 0]
    ready.sort(reverse=True)
    order = []
    while ready:
        v = ready.pop()
        order.append(v)
        for w in iter_bits(d.out_adj[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
                ready.sort(reverse=True)
    return order if len(order) == d.n else None


def is_acyclic(d: Digraph) -> bool:
    return topological_order(d) is not None


def is_tournament(d: Digraph) -> bool:
    return isinstance(d, OrientedGraph) and d.m == d.n * (d.n - 1) // 2


def distances_from(g: Graph, source: int) -> list[float]:
    dist: list[float] = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in iter_bits(g.adj[v]):
            if dist[w] is INF:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def distance_matrix(g: Graph) -> list[list[float]]:
    """All-pairs hop distances by BFS; unreachable pairs hold :data:`INF`."""
    return [distances_from(g, s) for s in range(g.n)]


def girth(g: Graph) -> float:
    """Length of a shortest cycle, or :data:`INF` for forests.

    BFS from every vertex; a non-tree edge ``(v, w)`` closes a cycle of length
    at most ``dist[v] + dist[w] + 1`` and the minimum over all roots is exact.
    """
    best = INF
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            if 2 * dist[v] >= best:
                break
            for w in iter_bits(g.adj[v]):
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def _colorable(adj: Sequence[int], n: int, k: int) -> bool:
    colors = [-1] * n
    order = sorted(range(n), key=lambda v: -adj[v].bit_count())

    def pick() -> int:
        # DSATUR: most distinctly coloured neighbours, then highest degree
        best, best_key = -1, None
        for v in order:
            if colors[v] >= 0:
                continue
            sat = len({colors[w] for w in iter_bits(adj[v]) if colors[w] >= 0})
            key = (sat, adj[v].bit_count())
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def solve(colored: int, used: int) -> bool:
        if colored == n:
            return True
        v = pick()
        forbidden = {colors[w] for w in iter_bits(adj[v]) if colors[w] >= 0}
        # a fresh colour is interchangeable with any other unused one
        for c in range(min(k, used + 1)):
            if c in forbidden:
                continue
            colors[v] = c
            if solve(colored + 1, max(used, c + 1)):
                return True
            colors[v] = -1
        return False

    return solve(0, 0)


def chromatic_number(g: Graph, cap: int = CHROMATIC_CAP) -> int:
    """Exact chromatic number by iterated k-colourability (DSATUR backtracking)."""
    if g.n > cap:
        raise ValueError(f"exact chromatic number capped at {cap} vertices, got {g.n}")
    if g.n == 0:
        return 0
    if g.m == 0:
        return 1
    k = 2
    while not _colorable(g.adj, g.n, k):
        k += 1
    return k


def longest_directed_path(d: Digraph) -> int:
    """Vertex count of a longest directed path of an acyclic digraph."""
    order = topological_order(d)
    if order is None:
        raise CyclicDigraphError("longest path is only computed for acyclic digraphs")
    longest = [1] * d.n
    for v in reversed(order):
        for w in iter_bits(d.out_adj[v]):
            longest[v] = max(longest[v], longest[w] + 1)
    return max(longest, default=0)


def longest_simple_path(d: Digraph, cap: int = 12) -> int:
    """Vertex count of a longest directed simple path, by exhaustive search.

    Works on cyclic digraphs too, so it is limited to ``n <= cap``.
    """
    if d.n > cap:
        raise ValueError(f"exhaustive longest path capped at n={cap}")
    best = min(d.n, 1)

    def extend(v: int, used: int, length: int) -> None:
        nonlocal best
        best = max(best, length)
        for w in iter_bits(d.out_adj[v] & ~used):
            extend(w, used | 1 << w, length + 1)

    for s in range(d.n):
        extend(s, 1 << s, 1)
    return best


def orientations(g: Graph) -> Iterator[OrientedGraph]:
    """All ``2^m`` orientations of ``g``."""
    edges = g.sorted_edges()
    for bits in range(1 << len(edges)):
        yield OrientedGraph(
            g.n,
            frozenset((u, v) if bits >> i & 1 == 0 else (v, u) for i, (u, v) in enumerate(edges)),
        )


# -- generators ---------------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def cycle(k: int) -> Graph:
    if k < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(k, frozenset((i, (i + 1) % k) for i in range(k)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, frozenset(outer + spokes + inner))


def directed_path(k: int) -> OrientedGraph:
    """Directed path with ``k`` arcs on vertices ``0..k``."""
    if k < 0:
        raise ValueError("path length must be non-negative")
    return OrientedGraph(k + 1, frozenset((i, i + 1) for i in range(k)))


def transitive_tournament(k: int) -> OrientedGraph:
    return OrientedGraph(k, frozenset(combinations(range(k), 2)))


def complete_digraph(n: int) -> Digraph:
    return Digraph(n, frozenset((u, v) for u in range(n) for v in range(n) if u != v))


def cycle_orientation(k: int, pattern: Sequence[int] | str, acyclic: bool = True) -> OrientedGraph:
    """Orient the cycle ``0-1-...-(k-1)-0``.

    ``pattern[i] == 1`` orients the i-th edge forward, ``i -> i+1 (mod k)``;
    ``0`` orients it backward.  With ``acyclic`` set, the two constant
    patterns (the directed cycles) are rejected.
    """
    if k < 3:
        raise ValueError("cycles need at least 3 vertices")
    bits = [int(b) for b in pattern]
    if len(bits) != k or any(b not in (0, 1) for b in bits):
        raise ValueError(f"pattern must be {k} bits")
    if acyclic and len(set(bits)) == 1:
        raise CyclicDigraphError("constant pattern orients the cycle cyclically")
    arcs = [(i, (i + 1) % k) if b else ((i + 1) % k, i) for i, b in enumerate(bits)]
    return OrientedGraph(k, frozenset(arcs))
