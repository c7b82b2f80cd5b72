"""Color probability distributions of complete graphs and their spanning trees.

The color probability of c in G is |E_c(G)| / |E(G)|. A spanning tree T of
K_n is *similar* to G when every color count in T is the floor or the
ceiling of that probability times n - 1, the size of T. On K_n this
scaled share simplifies to 2|E_c| / n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .construction import ColoredForest, Infeasible, InvariantViolation, build_gf_spanning_forest
from .feasibility import ColorBounds
from .graph import Color, EdgeColoredGraph, GraphError


class NotRepresentable(Exception):
    """No spanning tree reproduces the color distribution exactly."""

    def __init__(self, color: Color, count: int, n: int) -> None:
        super().__init__(f"color {color!r} has {count} edges, not a multiple of n/2 = {n}/2")
        self.color = color
        self.count = count
        self.n = n


@dataclass(frozen=True)
class SimilarityBounds:
    lower: dict[Color, int]
    upper: dict[Color, int]

    def as_color_bounds(self, graph: EdgeColoredGraph) -> ColorBounds:
        return ColorBounds.from_maps(graph, self.lower, self.upper)


def _require_complete(graph: EdgeColoredGraph) -> None:
    if graph.n < 2:
        raise GraphError("need a complete graph on at least 2 vertices")
    if not graph.is_complete():
        raise GraphError(
            f"graph is not complete: {graph.edge_count} of {graph.n * (graph.n - 1) // 2} edges"
        )


def color_distribution(graph: EdgeColoredGraph) -> dict[Color, Fraction]:
    """Exact share of the edges carried by each color of the universe."""
    total = graph.edge_count
    if total == 0:
        raise GraphError("distribution undefined for a graph without edges")
    return {label: Fraction(count, total) for label, count in zip(graph.colors, graph.counts)}


def similarity_bounds(graph: EdgeColoredGraph) -> SimilarityBounds:
    """Floor and ceiling of each color's share of a spanning tree of K_n."""
    _require_complete(graph)
    n = graph.n
    lower, upper = {}, {}
    for label, count in zip(graph.colors, graph.counts):
        q, r = divmod(2 * count, n)
        lower[label] = q
        upper[label] = q + (r > 0)
    return SimilarityBounds(lower, upper)


def build_similar_tree(graph: EdgeColoredGraph) -> ColoredForest:
    """Spanning tree of a complete graph whose color counts all sit between
    the floor and ceiling of the host's scaled shares.

    Such a tree always exists; failure raises :class:`InvariantViolation`.
    """
    bounds = similarity_bounds(graph).as_color_bounds(graph)
    try:
        tree = build_gf_spanning_forest(graph, bounds, 1)
    except Infeasible as exc:
        raise InvariantViolation(f"no similar spanning tree found: {exc}") from exc
    return tree


def exact_distribution_tree(graph: EdgeColoredGraph) -> ColoredForest:
    """Spanning tree with the same color distribution as the complete host.

    Possible exactly when every color count is a multiple of n/2; then the
    tree has 2|E_c|/n edges of color c.

    Raises:
        NotRepresentable: for the first color (in universe order) whose
            count is not a multiple of n/2.
    """
    _require_complete(graph)
    n = graph.n
    for label, count in zip(graph.colors, graph.counts):
        if (2 * count) % n:
            raise NotRepresentable(label, count, n)
    tree = build_similar_tree(graph)
    expected = tuple(2 * count // n for count in graph.counts)
    if tree.histogram != expected:
        raise InvariantViolation(f"tree histogram {tree.histogram} != {expected}")
    return tree
