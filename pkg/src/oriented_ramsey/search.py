"""Backtracking over two-valued edge labellings (orientations or 2-colourings).

Every relation in :mod:`oriented_ramsey.arrows` reduces to the same question:
given host edges ``0..m-1`` and a family of *forbidden copies*, each a list
of ``(edge, label)`` pairs, is there a labelling of all edges that does not
realise any copy in full?

The search assigns edges in a fixed order.  Each copy keeps a count of its
pairs already realised; a copy with every pair realised is a conflict, and a
copy missing exactly one pair forces that edge to the opposite label.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

DEFAULT_NODE_BUDGET = 5_000_000
DEFAULT_COPY_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    """A search hit its configured node or copy budget before deciding."""

    def __init__(self, what: str, used: int, budget: int):
        self.what = what
        self.used = used
        self.budget = budget
        super().__init__(f"{what} budget exceeded: {used} > {budget}")


@dataclass
class LabellingResult:
    labels: list[int] | None  # a copy-free labelling, or None when none exists
    nodes: int


def _edge_order(m: int, copies: Sequence[Sequence[tuple[int, int]]]) -> list[int]:
    """Greedy static order: next edge is the one that brings the most copies
    closest to fully assigned, so conflicts and forcings surface early."""
    touching: list[list[int]] = [[] for _ in range(m)]
    for c, copy in enumerate(copies):
        for e, _ in copy:
            touching[e].append(c)
    assigned_in = [0] * len(copies)
    chosen = [False] * m
    order = []
    score = [float(len(t)) for t in touching]
    for _ in range(m):
        best = max((e for e in range(m) if not chosen[e]), key=lambda e: (score[e], -e))
        chosen[best] = True
        order.append(best)
        for c in touching[best]:
            assigned_in[c] += 1
            bonus = 4.0 ** assigned_in[c] - 4.0 ** (assigned_in[c] - 1)
            for e, _ in copies[c]:
                if not chosen[e]:
                    score[e] += bonus
    return order


def find_labelling(
    m: int,
    copies: Sequence[Sequence[tuple[int, int]]],
    node_budget: int = DEFAULT_NODE_BUDGET,
    fix_first: bool = False,
) -> LabellingResult:
    """Search for a labelling of ``m`` edges avoiding every forbidden copy.

    ``fix_first`` pins the first branching edge to label 0; callers set it
    when swapping all labels maps copy-free labellings to copy-free ones.
    """
    for copy in copies:
        if not copy:
            return LabellingResult(None, 0)
    k = len(copies)
    size = [len(c) for c in copies]
    occ: list[list[tuple[int, int]]] = [[] for _ in range(m)]
    for c, copy in enumerate(copies):
        for e, lab in copy:
            occ[e].append((c, lab))
    hit = [0] * k  # pairs realised so far
    dead = [0] * k  # pairs contradicted so far; a copy with dead > 0 is harmless
    labels = [-1] * m
    trail: list[int] = []
    order = _edge_order(m, copies)
    nodes = 0

    def assign(e: int, lab: int) -> bool:
        """Assign and propagate; False on conflict (trail keeps partial work)."""
        queue = [(e, lab)]
        while queue:
            e, lab = queue.pop()
            cur = labels[e]
            if cur >= 0:
                if cur != lab:
                    return False
                continue
            labels[e] = lab
            trail.append(e)
            # counters for every copy through e must be updated before bailing out
            conflict = False
            for c, want in occ[e]:
                if want == lab:
                    hit[c] += 1
                    if dead[c] or conflict:
                        continue
                    if hit[c] == size[c]:
                        conflict = True
                    elif hit[c] == size[c] - 1:
                        for f, flab in copies[c]:
                            if labels[f] < 0:
                                queue.append((f, 1 - flab))
                                break
                else:
                    dead[c] += 1
            if conflict:
                return False
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            e = trail.pop()
            lab = labels[e]
            for c, want in occ[e]:
                if want == lab:
                    hit[c] -= 1
                else:
                    dead[c] -= 1
            labels[e] = -1

    for c, copy in enumerate(copies):
        if size[c] == 1 and not assign(copy[0][0], 1 - copy[0][1]):
            return LabellingResult(None, 0)

    def dfs(pos: int, depth: int) -> bool:
        nonlocal nodes
        while pos < m and labels[order[pos]] >= 0:
            pos += 1
        if pos == m:
            return True
        e = order[pos]
        for lab in (0,) if fix_first and depth == 0 else (0, 1):
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded("search node", nodes, node_budget)
            mark = len(trail)
            if assign(e, lab) and dfs(pos + 1, depth + 1):
                return True
            undo(mark)
        return False

    found = dfs(0, 0)
    return LabellingResult(list(labels) if found else None, nodes)
