"""From orientations to ordered 2-colourings.

Take two disjoint copies of an acyclic pattern, the second with every arc
reversed, and order the union topologically.  Colour an edge ``u < v`` of an
ordered tournament blue when it points forward and red otherwise.  A
monochromatic monotone copy of the ordered union then hands back an oriented
copy of the pattern: the forward copy if blue, the reversed one if red.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .arrows import BLUE, RED, TwoColoring
from .copies import contains_copy, find_monotone_embedding, is_copy_map
from .graphs import (
    CyclicDigraphError,
    Digraph,
    OrderedGraph,
    OrientedGraph,
    topological_order,
    underlying_graph,
)


class ReductionError(AssertionError):
    """The extracted vertex map failed to realise the pattern."""


@dataclass(frozen=True)
class DoubleGraphReduction:
    """``doubled`` has vertex ``u`` for ``(u, 0)`` and ``u + h`` for ``(u, 1)``."""

    pattern: OrientedGraph
    doubled: OrientedGraph
    order: tuple[int, ...]
    h0: OrderedGraph
    h1: OrderedGraph

    @property
    def ordered(self) -> OrderedGraph:
        return OrderedGraph(underlying_graph(self.doubled), self.order)


def build_double_graph(pattern: Digraph) -> DoubleGraphReduction:
    topo = topological_order(pattern)
    if topo is None:
        raise CyclicDigraphError("pattern must be acyclic")
    h = pattern.n
    arcs = [(u, v) for u, v in pattern.arcs] + [(v + h, u + h) for u, v in pattern.arcs]
    doubled = OrientedGraph(2 * h, frozenset(arcs))
    # forward copy in topological order, then the reversed copy in reverse order
    order = tuple(topo) + tuple(h + v for v in reversed(topo))
    under = underlying_graph(pattern)
    return DoubleGraphReduction(
        OrientedGraph(pattern.n, pattern.arcs),
        doubled,
        order,
        OrderedGraph(under, tuple(topo)),
        OrderedGraph(under, tuple(reversed(topo))),
    )


def orientation_to_coloring(t: Digraph, order: Sequence[int]) -> TwoColoring:
    """Blue for ``u -> v`` with ``u`` before ``v`` in ``order``; red otherwise."""
    rank = {v: i for i, v in enumerate(order)}
    if sorted(rank) != list(range(t.n)):
        raise ValueError("order must be a permutation of the vertices")
    blue, red = set(), set()
    for u, v in t.arcs:
        (blue if rank[u] < rank[v] else red).add((u, v))
    return TwoColoring(t.n, frozenset(red), frozenset(blue))


@dataclass(frozen=True)
class RoundTrip:
    color: str
    monotone_map: dict[int, int]
    copy_map: dict[int, int]


def reduction_roundtrip(
    t: OrientedGraph, pattern: Digraph, order: Sequence[int] | None = None
) -> RoundTrip | None:
    """Colour ``t`` along ``order``, look for a monochromatic monotone copy of
    the ordered double graph and extract a copy of ``pattern`` from it.

    Returns ``None`` when no monochromatic copy exists; raises
    :class:`ReductionError` if an extracted map is not a valid copy.
    """
    order = tuple(range(t.n)) if order is None else tuple(order)
    red_blue = orientation_to_coloring(t, order)
    red = OrderedGraph(red_blue.graph(RED), order)
    blue = OrderedGraph(red_blue.graph(BLUE), order)
    reduction = build_double_graph(pattern)
    target = reduction.ordered
    h = pattern.n
    for color, host in ((BLUE, blue), (RED, red)):
        phi = find_monotone_embedding(host, target)
        if phi is None:
            continue
        shift = 0 if color == BLUE else h
        copy_map = {v: phi[v + shift] for v in range(h)}
        if not is_copy_map(t, pattern, copy_map):
            raise ReductionError(f"{color} copy does not realise the pattern: {copy_map}")
        image = OrientedGraph(t.n, frozenset((copy_map[u], copy_map[v]) for u, v in pattern.arcs))
        if not contains_copy(image, pattern):
            raise ReductionError("extracted arc set is not a copy of the pattern")
        return RoundTrip(color, phi, copy_map)
    return None


def transitive_subtournament_bounds(k: int) -> tuple[float, int]:
    """``(2^((k-1)/2), 2^(k-1))``: the range of the least tournament order
    forcing a transitive subtournament on ``k`` vertices."""
    if k < 1:
        raise ValueError("k must be positive")
    low = 2 ** ((k - 1) // 2) if (k - 1) % 2 == 0 else 2 ** ((k - 1) / 2)
    return low, 2 ** (k - 1)


def polylog_ramsey_bound(k: int, c: float, base: str = "e") -> float:
    """``2 (2k)^(c log^2 k)``; ``base`` selects the logarithm ("e" or "2")."""
    if k < 3 or c <= 0:
        raise ValueError("need k >= 3 and c > 0")
    log = math.log if base == "e" else math.log2 if base == "2" else None
    if log is None:
        raise ValueError("base must be 'e' or '2'")
    return 2 * (2 * k) ** (c * log(k) ** 2)


def polylog_ramsey_bounds(k: int, c: float) -> dict[str, float]:
    return {"natural": polylog_ramsey_bound(k, c, "e"), "binary": polylog_ramsey_bound(k, c, "2")}


def ordered_ramsey_upper(pattern: Digraph) -> tuple[OrderedGraph, OrderedGraph]:
    """The two orderings of the pattern's underlying graph used by the reduction."""
    r = build_double_graph(pattern)
    return r.h0, r.h1


__all__ = [
    "DoubleGraphReduction",
    "ReductionError",
    "RoundTrip",
    "build_double_graph",
    "polylog_ramsey_bound",
    "polylog_ramsey_bounds",
    "orientation_to_coloring",
    "reduction_roundtrip",
    "transitive_subtournament_bounds",
]
