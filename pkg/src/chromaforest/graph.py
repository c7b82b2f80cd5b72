"""Edge-colored simple graphs and the basic queries over them."""

from __future__ import annotations

from collections.abc import Hashable, Iterable
from dataclasses import dataclass
from functools import cached_property
from math import comb

from .union_find import UnionFind

Color = Hashable


class GraphError(ValueError):
    """Raised for malformed graphs or references to unknown colors."""


@dataclass(frozen=True)
class EdgeColoredGraph:
    """A simple undirected graph on vertices ``0..n-1`` with one color per edge.

    ``colors`` is the color universe; a color's position in it is its dense
    integer id, and ``edges`` stores ``(u, v, color_id)`` with ``u < v``.
    The universe may contain colors that no edge uses.

    Build instances with :meth:`from_edges`, which takes color labels.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...]
    colors: tuple[Color, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise GraphError(f"vertex count must be a positive integer, got {self.n!r}")
        if len(set(self.colors)) != len(self.colors):
            raise GraphError("color universe contains duplicate labels")
        seen: set[tuple[int, int]] = set()
        for i, (u, v, c) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {i} ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise GraphError(f"edge {i} is a loop at vertex {u}")
            if u > v:
                raise GraphError(f"edge {i} is not normalized (u > v)")
            if (u, v) in seen:
                raise GraphError(f"edge {i} duplicates the pair {{{u}, {v}}}")
            if not 0 <= c < len(self.colors):
                raise GraphError(f"edge {i} has color id {c} outside the universe")
            seen.add((u, v))

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int, Color]],
        colors: Iterable[Color] | None = None,
    ) -> EdgeColoredGraph:
        """Build a graph from ``(u, v, label)`` triples.

        If ``colors`` is omitted, the universe is the labels in order of
        first appearance. Otherwise every edge label must belong to it.
        """
        edges = list(edges)
        if colors is None:
            universe: list[Color] = []
            for _, _, label in edges:
                if label not in universe:
                    universe.append(label)
        else:
            universe = list(colors)
        index = {label: i for i, label in enumerate(universe)}
        if len(index) != len(universe):
            raise GraphError("color universe contains duplicate labels")
        normalized = []
        for i, (u, v, label) in enumerate(edges):
            if label not in index:
                raise GraphError(f"edge {i} uses color {label!r} outside the universe")
            a, b = (u, v) if u <= v else (v, u)
            normalized.append((a, b, index[label]))
        return cls(n, tuple(normalized), tuple(universe))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def color_count(self) -> int:
        return len(self.colors)

    @cached_property
    def color_index(self) -> dict[Color, int]:
        return {label: i for i, label in enumerate(self.colors)}

    @cached_property
    def counts(self) -> tuple[int, ...]:
        """Number of edges per color id."""
        out = [0] * len(self.colors)
        for _, _, c in self.edges:
            out[c] += 1
        return tuple(out)

    @cached_property
    def edges_by_color(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices grouped by color id."""
        out: list[list[int]] = [[] for _ in self.colors]
        for i, (_, _, c) in enumerate(self.edges):
            out[c].append(i)
        return tuple(tuple(group) for group in out)

    def color_id(self, label: Color) -> int:
        try:
            return self.color_index[label]
        except (KeyError, TypeError):
            raise GraphError(f"unknown color {label!r}") from None

    def color_ids(self, labels: Iterable[Color]) -> frozenset[int]:
        return frozenset(self.color_id(label) for label in labels)

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def __repr__(self) -> str:
        return f"EdgeColoredGraph(n={self.n}, edges={len(self.edges)}, colors={len(self.colors)})"


def component_count(graph: EdgeColoredGraph) -> int:
    """Number of connected components, isolated vertices included."""
    uf = UnionFind(graph.n)
    for u, v, _ in graph.edges:
        uf.union(u, v)
    return uf.components


def remove_colors(graph: EdgeColoredGraph, removed: Iterable[Color]) -> EdgeColoredGraph:
    """Delete every edge whose color is in ``removed``, keeping all vertices.

    The color universe is preserved.
    """
    ids = graph.color_ids(removed)
    kept = tuple(e for e in graph.edges if e[2] not in ids)
    return EdgeColoredGraph(graph.n, kept, graph.colors)


def color_histogram(graph: EdgeColoredGraph) -> dict[Color, int]:
    """Edge count per color label; unused universe colors map to 0."""
    return dict(zip(graph.colors, graph.counts))


def max_edge_count(n_vertices: int, n_components: int) -> int:
    """Largest possible edge count of a simple graph with the given order and
    number of components: one complete component plus isolated vertices."""
    return comb(n_vertices - n_components + 1, 2)
