"""Canonical labelling and isomorph-free generation of tournaments.

Canonical forms use colour refinement seeded by score (out-degree), then
individualisation of the first non-singleton cell; the canonical labelling
is the leaf with the largest adjacency code.  Generation is orderly by
vertex addition: every class on ``n`` vertices is an extension of some class
on ``n - 1`` vertices, so extending each representative in all ``2^(n-1)``
ways and de-duplicating by canonical code visits every class once.
"""
from __future__ import annotations

from itertools import permutations
from typing import Callable, Iterator, Sequence

from .graphs import Digraph, OrientedGraph

#: Default largest order accepted by :func:`enumerate_tournaments`.
TOURNAMENT_CAP = 9

#: Number of tournaments on n unlabelled vertices, n = 0..10.
KNOWN_CLASS_COUNTS = (1, 1, 1, 2, 4, 12, 56, 456, 6880, 191536, 9733056)


class TournamentCapExceeded(RuntimeError):
    pass


def _refine(out: Sequence[int], inn: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for cell in cells:
            mk = 0
            for v in cell:
                mk |= 1 << v
            masks.append(mk)
        new: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                sig = tuple(((out[v] & mk).bit_count(), (inn[v] & mk).bit_count()) for mk in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                changed = True
            for sig in sorted(groups):
                new.append(groups[sig])
        cells = new
        if not changed:
            return cells


def _code(out: Sequence[int], order: Sequence[int]) -> int:
    code = 0
    for v in order:
        row = out[v]
        for w in order:
            code = code << 1 | (row >> w & 1)
    return code


def canonical_labelling(d: Digraph) -> tuple[int, tuple[int, ...]]:
    """Return ``(code, order)``: relabelling vertex ``order[i]`` as ``i``
    gives the canonical digraph, whose adjacency matrix read row by row
    as bits is ``code``.  Isomorphic digraphs get equal codes."""
    out, inn = d.out_adj, d.in_adj
    best: list = [-1, ()]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(out, inn, cells)
        if len(cells) == d.n:
            order = tuple(c[0] for c in cells)
            code = _code(out, order)
            if code > best[0]:
                best[0], best[1] = code, order
            return
        i = next(i for i, c in enumerate(cells) if len(c) > 1)
        for v in cells[i]:
            rest = [w for w in cells[i] if w != v]
            search(cells[:i] + [[v], rest] + cells[i + 1 :])

    search([list(range(d.n))] if d.n else [])
    if d.n == 0:
        return 0, ()
    return best[0], best[1]


def canonical_code(d: Digraph) -> int:
    return canonical_labelling(d)[0]


def canonical_form(d: Digraph):
    _, order = canonical_labelling(d)
    perm = [0] * d.n
    for i, v in enumerate(order):
        perm[v] = i
    return d.relabel(perm)


def brute_force_code(d: Digraph) -> int:
    """Canonical code by trying all ``n!`` orders (reference oracle)."""
    return max((_code(d.out_adj, p) for p in permutations(range(d.n))), default=0)


def all_labelled_tournaments(n: int) -> Iterator[OrientedGraph]:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for bits in range(1 << len(pairs)):
        yield OrientedGraph(
            n, frozenset((u, v) if bits >> i & 1 else (v, u) for i, (u, v) in enumerate(pairs))
        )


def extensions(t: OrientedGraph) -> Iterator[OrientedGraph]:
    """All ``2^n`` ways of adding vertex ``n`` to tournament ``t``."""
    n = t.n
    for bits in range(1 << n):
        extra = [(v, n) if bits >> v & 1 else (n, v) for v in range(n)]
        yield OrientedGraph(n + 1, t.arcs | frozenset(extra))


def grow(
    reps: Sequence[OrientedGraph], keep: Callable[[OrientedGraph], bool] | None = None
) -> list[OrientedGraph]:
    """One vertex-addition step: isomorph-free extensions of ``reps`` that pass ``keep``.

    When ``keep`` is hereditary (closed under deleting a vertex) and ``reps``
    are all kept classes on ``n`` vertices, the result is all kept classes on
    ``n + 1`` vertices.
    """
    seen: dict[int, OrientedGraph] = {}
    for t in reps:
        for ext in extensions(t):
            if keep is not None and not keep(ext):
                continue
            code, order = canonical_labelling(ext)
            if code not in seen:
                perm = [0] * ext.n
                for i, v in enumerate(order):
                    perm[v] = i
                seen[code] = ext.relabel(perm)
    return [seen[c] for c in sorted(seen)]


def enumerate_tournaments(n: int, cap: int = TOURNAMENT_CAP) -> list[OrientedGraph]:
    """One representative of every isomorphism class of ``n``-vertex tournaments."""
    if n > cap:
        raise TournamentCapExceeded(f"tournament enumeration capped at n={cap}, got {n}")
    if n < 0:
        raise ValueError("n must be non-negative")
    reps = [OrientedGraph(0, frozenset())]
    for _ in range(n):
        reps = grow(reps)
    return reps
