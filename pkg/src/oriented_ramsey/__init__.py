"""Oriented Ramsey numbers and arrow relations at desk scale."""
from __future__ import annotations

from .arrows import (
    TwoColoring,
    Verdict,
    arrows,
    arrows_isometric,
    arrows_ordered,
    classical_arrows,
    classical_ramsey_number,
    oriented_ramsey_number,
)
from .copies import (
    contains_copy,
    contains_isometric_copy,
    count_copies,
    emb,
    emb_extension,
    ordered_contains,
)
from .graphs import (
    Digraph,
    Graph,
    OrderedGraph,
    OrientedGraph,
    chromatic_number,
    girth,
    longest_directed_path,
    topological_order,
    underlying_graph,
)
from .tournaments import enumerate_tournaments

__version__ = "0.1.0"

__all__ = [
    "Digraph",
    "Graph",
    "OrderedGraph",
    "OrientedGraph",
    "TwoColoring",
    "Verdict",
    "arrows",
    "arrows_isometric",
    "arrows_ordered",
    "chromatic_number",
    "classical_arrows",
    "classical_ramsey_number",
    "contains_copy",
    "contains_isometric_copy",
    "count_copies",
    "emb",
    "emb_extension",
    "enumerate_tournaments",
    "girth",
    "longest_directed_path",
    "oriented_ramsey_number",
    "ordered_contains",
    "topological_order",
    "underlying_graph",
]
