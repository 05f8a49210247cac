from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oriented_ramsey.copies import is_isomorphic
from oriented_ramsey.graphs import OrientedGraph, is_tournament
from oriented_ramsey.tournaments import (
    TournamentCapExceeded,
    all_labelled_tournaments,
    brute_force_code,
    canonical_code,
    canonical_form,
    enumerate_tournaments,
)

# numbers of non-isomorphic tournaments on 0..7 vertices
KNOWN_COUNTS = [1, 1, 1, 2, 4, 12, 56, 456]


def random_tournament(n: int, seed: int) -> OrientedGraph:
    r = random.Random(seed)
    return OrientedGraph(n, frozenset((u, v) if r.random() < 0.5 else (v, u)
                                      for u in range(n) for v in range(u + 1, n)))


@given(st.integers(1, 6), st.integers(0, 10**6), st.data())
def test_code_is_invariant_under_relabelling(n, seed, data):
    t = random_tournament(n, seed)
    perm = data.draw(st.permutations(range(n)))
    assert canonical_code(t) == canonical_code(t.relabel(perm))


@given(st.integers(1, 6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_code_separates_classes(n, s1, s2):
    a, b = random_tournament(n, s1), random_tournament(n, s2)
    assert (canonical_code(a) == canonical_code(b)) == is_isomorphic(a, b)


@pytest.mark.parametrize("n", range(1, 6))
def test_brute_force_dedup_matches_enumeration(n):
    codes = {brute_force_code(t) for t in all_labelled_tournaments(n)}
    reps = enumerate_tournaments(n)
    assert len(codes) == len(reps) == KNOWN_COUNTS[n]
    assert {brute_force_code(t) for t in reps} == codes


@pytest.mark.parametrize("n, count", list(enumerate(KNOWN_COUNTS))[1:])
def test_known_class_counts(n, count):
    reps = enumerate_tournaments(n)
    assert len(reps) == count
    assert all(is_tournament(t) for t in reps)
    assert len({canonical_code(t) for t in reps}) == count


def test_canonical_form_is_isomorphic():
    t = random_tournament(6, 3)
    assert is_isomorphic(canonical_form(t), t)
    assert canonical_form(t) == canonical_form(t.relabel([5, 4, 3, 2, 1, 0]))


def test_cap():
    with pytest.raises(TournamentCapExceeded):
        enumerate_tournaments(4, cap=3)
