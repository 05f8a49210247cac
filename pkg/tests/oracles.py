"""Deliberately naive reference implementations used to check the package.

Nothing here shares code with ``oriented_ramsey`` beyond the plain graph
containers; everything is brute force over permutations or subsets.
"""
from __future__ import annotations

import math
from itertools import combinations, permutations, product

INF = math.inf


def arcs_isomorphic(a: frozenset, b: frozenset) -> bool:
    """Are two arc sets isomorphic as digraphs on the vertices they touch?"""
    va = sorted({x for e in a for x in e})
    vb = sorted({x for e in b for x in e})
    if len(va) != len(vb) or len(a) != len(b):
        return False
    for perm in permutations(vb):
        m = dict(zip(va, perm))
        if {(m[u], m[v]) for u, v in a} == set(b):
            return True
    return False


def count_copies(host_arcs, pattern_arcs) -> int:
    """Arc subsets of ``host_arcs`` isomorphic to ``pattern_arcs``."""
    pattern_arcs = frozenset(pattern_arcs)
    return sum(arcs_isomorphic(frozenset(sub), pattern_arcs)
               for sub in combinations(sorted(host_arcs), len(pattern_arcs)))


def complete_digraph_arcs(n: int) -> set:
    return {(u, v) for u in range(n) for v in range(n) if u != v}


def has_copy(host_arcs, n: int, pattern_arcs, h: int) -> bool:
    host = set(host_arcs)
    for img in permutations(range(n), h):
        if all((img[u], img[v]) in host for u, v in pattern_arcs):
            return True
    return False


def floyd_warshall(n: int, edges) -> list[list[float]]:
    d = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for u, v in edges:
        d[u][v] = d[v][u] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def has_isometric_copy(n: int, host_arcs, h: int, pattern_arcs) -> bool:
    host = set(host_arcs)
    dh = floyd_warshall(n, host)
    dp = floyd_warshall(h, pattern_arcs)
    for img in permutations(range(n), h):
        if all((img[u], img[v]) in host for u, v in pattern_arcs) and all(
            dh[img[x]][img[y]] == dp[x][y] for x in range(h) for y in range(h)
        ):
            return True
    return False


def chromatic_number(n: int, edges) -> int:
    if n == 0:
        return 0
    for k in range(1, n + 1):
        for col in product(range(k), repeat=n):
            if all(col[u] != col[v] for u, v in edges):
                return k
    return n


def girth(n: int, edges) -> float:
    """Shortest cycle by testing every vertex sequence (tiny graphs only)."""
    es = {frozenset(e) for e in edges}
    for k in range(3, n + 1):
        for verts in permutations(range(n), k):
            if verts[0] != min(verts):
                continue
            if all(frozenset((verts[i], verts[(i + 1) % k])) in es for i in range(k)):
                return k
    return INF


def longest_path_vertices(n: int, arcs) -> int:
    best = min(n, 1)
    for k in range(2, n + 1):
        for seq in permutations(range(n), k):
            if all((seq[i], seq[i + 1]) in arcs for i in range(k - 1)):
                best = max(best, k)
    return best


def is_acyclic(n: int, arcs) -> bool:
    # acyclic iff some permutation makes every arc go forward
    for perm in permutations(range(n)):
        pos = {v: i for i, v in enumerate(perm)}
        if all(pos[u] < pos[v] for u, v in arcs):
            return True
    return False


def monotone_contains(host_edges, host_order, pattern_edges, pattern_order) -> bool:
    hrank = {v: i for i, v in enumerate(host_order)}
    h = len(pattern_order)
    he = {frozenset(e) for e in host_edges}
    for img in combinations(sorted(hrank, key=hrank.get), h):
        phi = dict(zip(pattern_order, img))
        if all(frozenset((phi[u], phi[v])) in he for u, v in pattern_edges):
            return True
    return False


def two_density(n: int, edges) -> tuple[int, int]:
    """Max of (e-1)/(v-2) over all edge subsets of all vertex subsets, as a
    reduced (num, den) pair; quadratic in subsets, tiny graphs only."""
    from fractions import Fraction

    best = None
    for v in range(3, n + 1):
        for verts in combinations(range(n), v):
            inside = [e for e in edges if e[0] in verts and e[1] in verts]
            for e in range(len(inside) + 1):
                val = Fraction(e - 1, v - 2)
                if best is None or val > best:
                    best = val
    return best.numerator, best.denominator
