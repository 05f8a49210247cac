"""Oriented, isometric and ordered copies.

A *copy* of a pattern in a host digraph is a set of host arcs which, together
with the vertices they touch, forms a digraph isomorphic to the pattern.
Copies are counted as arc subsets; a backtracking search produces labelled
embeddings and the count is corrected by the pattern's automorphism count.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Iterator, Sequence

from .graphs import (
    INF,
    Digraph,
    Graph,
    OrderedGraph,
    complete_digraph,
    distance_matrix,
    iter_bits,
    underlying_graph,
)

PairMask = Callable[[int, int, int], int]

#: ``count_copies(method="auto")`` enumerates arc subsets below this many candidates.
SUBSET_THRESHOLD = 2000


@dataclass(frozen=True)
class MatchPlan:
    """Order in which pattern vertices are matched, with the arc constraints
    each vertex has towards the vertices matched before it."""

    order: tuple[int, ...]
    preds: tuple[tuple[int, ...], ...]
    succs: tuple[tuple[int, ...], ...]
    earlier: tuple[tuple[int, ...], ...]


def make_plan(p_out: Sequence[int], p_in: Sequence[int], first: Sequence[int] = ()) -> MatchPlan:
    """Match ``first`` in the given order, then repeatedly the vertex with the
    most already-matched neighbours (ties: higher degree, lower label)."""
    n = len(p_out)
    nbr = [p_out[v] | p_in[v] for v in range(n)]
    deg = [p_out[v].bit_count() + p_in[v].bit_count() for v in range(n)]
    order = list(first)
    placed = 0
    for v in order:
        placed |= 1 << v
    while len(order) < n:
        best = max(
            (v for v in range(n) if not placed >> v & 1),
            key=lambda v: ((nbr[v] & placed).bit_count(), deg[v], -v),
        )
        order.append(best)
        placed |= 1 << best
    preds, succs, earlier = [], [], []
    for i, x in enumerate(order):
        before = order[:i]
        preds.append(tuple(a for a in before if p_out[a] >> x & 1))
        succs.append(tuple(a for a in before if p_out[x] >> a & 1))
        earlier.append(tuple(before))
    return MatchPlan(tuple(order), tuple(preds), tuple(succs), tuple(earlier))


def iter_embeddings(
    plan: MatchPlan,
    host_out: Sequence[int],
    host_in: Sequence[int],
    fixed: Sequence[int] = (),
    pair_mask: PairMask | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield injective vertex maps (indexed by pattern vertex) sending every
    pattern arc onto a host arc.

    ``fixed[i]`` pins ``plan.order[i]``.  ``pair_mask(x, y, image_of_y)``, if
    given, further restricts the image of ``x`` relative to each earlier ``y``.
    """
    h = len(plan.order)
    full = (1 << len(host_out)) - 1
    phi = [-1] * h
    nfixed = len(fixed)

    def extend(i: int, used: int) -> Iterator[tuple[int, ...]]:
        if i == h:
            yield tuple(phi)
            return
        x = plan.order[i]
        mask = full & ~used
        if i < nfixed:
            mask &= 1 << fixed[i]
        for a in plan.preds[i]:
            mask &= host_out[phi[a]]
        for a in plan.succs[i]:
            mask &= host_in[phi[a]]
        if pair_mask is not None:
            for y in plan.earlier[i]:
                if not mask:
                    break
                mask &= pair_mask(x, y, phi[y])
        while mask:
            low = mask & -mask
            v = low.bit_length() - 1
            phi[x] = v
            yield from extend(i + 1, used | low)
            mask ^= low
        phi[x] = -1

    return extend(0, 0)


def _plan(pattern: Digraph, first: Sequence[int] = ()) -> MatchPlan:
    return make_plan(pattern.out_adj, pattern.in_adj, first)


def _require_arcs(pattern: Digraph) -> None:
    if pattern.m == 0:
        raise ValueError("pattern needs at least one arc")
    if pattern.isolated_vertices():
        raise ValueError("copies are arc sets; pattern must not have isolated vertices")


def automorphism_count(pattern: Digraph) -> int:
    return sum(1 for _ in iter_embeddings(_plan(pattern), pattern.out_adj, pattern.in_adj))


def count_embeddings(host: Digraph, pattern: Digraph) -> int:
    return sum(1 for _ in iter_embeddings(_plan(pattern), host.out_adj, host.in_adj))


def is_isomorphic(a: Digraph, b: Digraph) -> bool:
    if a.n != b.n or a.m != b.m:
        return False
    if sorted(r.bit_count() for r in a.out_adj) != sorted(r.bit_count() for r in b.out_adj):
        return False
    return next(iter_embeddings(_plan(b), a.out_adj, a.in_adj), None) is not None


def arc_set_digraph(arcs: Iterable[tuple[int, int]]) -> Digraph:
    """The digraph formed by ``arcs`` on the vertices they touch, relabelled
    to ``0..k-1`` in increasing label order."""
    arcs = list(arcs)
    verts = sorted({x for a in arcs for x in a})
    index = {v: i for i, v in enumerate(verts)}
    return Digraph(len(verts), frozenset((index[u], index[v]) for u, v in arcs))


def iter_copies(host: Digraph, pattern: Digraph) -> Iterator[frozenset]:
    """Each copy of ``pattern`` in ``host``, once, as a frozenset of host arcs."""
    _require_arcs(pattern)
    seen = set()
    arcs = pattern.sorted_arcs()
    for phi in iter_embeddings(_plan(pattern), host.out_adj, host.in_adj):
        image = frozenset((phi[u], phi[v]) for u, v in arcs)
        if image not in seen:
            seen.add(image)
            yield image


def count_copies_backtrack(host: Digraph, pattern: Digraph) -> int:
    _require_arcs(pattern)
    total = count_embeddings(host, pattern)
    aut = automorphism_count(pattern)
    assert total % aut == 0
    return total // aut


def count_copies_subsets(host: Digraph, pattern: Digraph) -> int:
    """Test every ``l``-subset of host arcs for isomorphism with the pattern."""
    _require_arcs(pattern)
    return sum(
        1
        for subset in combinations(host.sorted_arcs(), pattern.m)
        if is_isomorphic(arc_set_digraph(subset), pattern)
    )


def count_copies(host: Digraph, pattern: Digraph, method: str = "auto") -> int:
    """Number of arc subsets of ``host`` forming a copy of ``pattern``.

    ``method`` is ``"backtrack"``, ``"subsets"`` or ``"auto"`` (subset
    enumeration when there are at most :data:`SUBSET_THRESHOLD` candidates).
    """
    if method == "auto":
        method = "subsets" if comb(host.m, max(pattern.m, 0)) <= SUBSET_THRESHOLD else "backtrack"
    if method == "backtrack":
        return count_copies_backtrack(host, pattern)
    if method == "subsets":
        return count_copies_subsets(host, pattern)
    raise ValueError(f"unknown method {method!r}")


def emb(pattern: Digraph) -> int:
    """Copies of ``pattern`` in the complete digraph on ``v(pattern)`` vertices."""
    return count_copies_backtrack(complete_digraph(pattern.n), pattern)


def emb_extension(
    pattern: Digraph, J: Iterable[tuple[int, int]], completion: Iterable[int] | None = None
) -> int:
    """Copies of ``pattern`` on the vertex set ``V_J ∪ S`` that contain the arc set ``J``.

    ``S`` (``completion``) is any set of ``h - |V_J|`` labels outside ``V_J``;
    by default the smallest free labels.  The value does not depend on it.
    """
    _require_arcs(pattern)
    J = frozenset(J)
    if not J:
        raise ValueError("J must be non-empty")
    vj = sorted({x for a in J for x in a})
    h = pattern.n
    if len(vj) > h:
        return 0
    if completion is None:
        free = (v for v in range(len(vj) + h) if v not in vj)
        completion = [next(free) for _ in range(h - len(vj))]
    completion = sorted(completion)
    if len(completion) != h - len(vj) or set(completion) & set(vj):
        raise ValueError("completion must be disjoint from V_J with size h - |V_J|")
    verts = vj + completion
    index = {v: i for i, v in enumerate(verts)}
    local_j = {(index[u], index[v]) for u, v in J}
    full = complete_digraph(h)
    arcs = pattern.sorted_arcs()
    hits = 0
    for phi in iter_embeddings(_plan(pattern), full.out_adj, full.in_adj):
        if local_j <= {(phi[u], phi[v]) for u, v in arcs}:
            hits += 1
    return hits // automorphism_count(pattern)


def find_copy(host: Digraph, pattern: Digraph) -> dict[int, int] | None:
    """A vertex map realising a copy of ``pattern`` in ``host``, or ``None``."""
    if pattern.n > host.n:
        return None
    phi = next(iter_embeddings(_plan(pattern), host.out_adj, host.in_adj), None)
    return None if phi is None else dict(enumerate(phi))


def contains_copy(host: Digraph, pattern: Digraph) -> bool:
    return find_copy(host, pattern) is not None


def distance_rings(g: Graph) -> list[dict[float, int]]:
    """``rings[v][d]`` is the bit mask of vertices at distance ``d`` from ``v``."""
    rings = []
    for row in distance_matrix(g):
        ring: dict[float, int] = {}
        for w, d in enumerate(row):
            ring[d] = ring.get(d, 0) | 1 << w
        rings.append(ring)
    return rings


def isometric_pair_mask(pattern: Digraph, host_rings: Sequence[dict[float, int]]) -> PairMask:
    pdist = distance_matrix(underlying_graph(pattern))

    def mask(x: int, y: int, hy: int) -> int:
        return host_rings[hy].get(pdist[x][y], 0)

    return mask


def find_isometric_copy(host: Digraph, pattern: Digraph) -> dict[int, int] | None:
    """A copy whose vertex map preserves all underlying distances, measured
    in the whole host."""
    if pattern.n > host.n:
        return None
    rings = distance_rings(underlying_graph(host))
    phi = next(
        iter_embeddings(
            _plan(pattern), host.out_adj, host.in_adj, pair_mask=isometric_pair_mask(pattern, rings)
        ),
        None,
    )
    return None if phi is None else dict(enumerate(phi))


def contains_isometric_copy(host: Digraph, pattern: Digraph) -> bool:
    return find_isometric_copy(host, pattern) is not None


def find_monotone_embedding(host: OrderedGraph, pattern: OrderedGraph) -> dict[int, int] | None:
    """Order-preserving map of pattern vertices to host vertices that sends
    edges to edges, or ``None``."""
    h, n = pattern.n, host.n
    if h > n:
        return None
    # host vertices by rank as bit masks over ranks
    hadj = [0] * n
    for u, v in host.graph.edges:
        hadj[host.rank[u]] |= 1 << host.rank[v]
        hadj[host.rank[v]] |= 1 << host.rank[u]
    pverts = pattern.order
    prank = pattern.rank
    back = [
        [prank[w] for w in iter_bits(pattern.graph.adj[x]) if prank[w] < i]
        for i, x in enumerate(pverts)
    ]
    img = [-1] * h

    def extend(i: int, low: int) -> bool:
        if i == h:
            return True
        # leave room for the h - i - 1 vertices still to place
        mask = ((1 << (n - (h - i - 1))) - 1) & ~((1 << low) - 1)
        for j in back[i]:
            mask &= hadj[img[j]]
        while mask:
            bit = mask & -mask
            r = bit.bit_length() - 1
            img[i] = r
            if extend(i + 1, r + 1):
                return True
            mask ^= bit
        return False

    if not extend(0, 0):
        return None
    return {pverts[i]: host.order[img[i]] for i in range(h)}


def ordered_contains(host: OrderedGraph, pattern: OrderedGraph) -> bool:
    return find_monotone_embedding(host, pattern) is not None


def is_copy_map(host: Digraph, pattern: Digraph, phi: dict[int, int]) -> bool:
    """Check that ``phi`` is an injective map sending pattern arcs to host arcs."""
    if sorted(phi) != list(range(pattern.n)) or len(set(phi.values())) != pattern.n:
        return False
    return all(host.has_arc(phi[u], phi[v]) for u, v in pattern.arcs)


def is_isometric_map(host: Digraph, pattern: Digraph, phi: dict[int, int]) -> bool:
    if not is_copy_map(host, pattern, phi):
        return False
    hd = distance_matrix(underlying_graph(host))
    pd = distance_matrix(underlying_graph(pattern))
    return all(
        pd[x][y] == hd[phi[x]][phi[y]] for x in range(pattern.n) for y in range(pattern.n)
    )


__all__ = [
    "INF",
    "MatchPlan",
    "arc_set_digraph",
    "automorphism_count",
    "contains_copy",
    "contains_isometric_copy",
    "count_copies",
    "count_copies_backtrack",
    "count_copies_subsets",
    "count_embeddings",
    "distance_rings",
    "emb",
    "emb_extension",
    "find_copy",
    "find_isometric_copy",
    "find_monotone_embedding",
    "is_copy_map",
    "is_isometric_map",
    "is_isomorphic",
    "iter_copies",
    "iter_embeddings",
    "make_plan",
    "ordered_contains",
]
