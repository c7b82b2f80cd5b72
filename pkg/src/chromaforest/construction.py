"""Constructive builders for colored spanning forests.

Three builders, each deterministic (ties always go to the lowest edge index):

* :func:`build_f_spanning_forest` -- at most f(c) edges of each color,
  via augmenting-path matroid intersection of the graphic matroid with the
  partition matroid of color capacities.
* :func:`build_gg_forest` -- exactly g(c) edges of each color.
* :func:`build_gf_spanning_forest` -- between g(c) and f(c) edges of each
  color, by exchanging edges of a (g, g)-forest into an f-forest until no
  color is short.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

from .feasibility import Bound, ColorBounds, PreconditionError, validate_instance
from .graph import Color, EdgeColoredGraph
from .union_find import UnionFind


class Infeasible(Exception):
    """No forest with the requested properties exists."""


class InvariantViolation(AssertionError):
    """A builder produced a state its own correctness argument rules out."""


@dataclass(frozen=True)
class ColoredForest:
    """An acyclic edge subset of ``host``, spanning all of its vertices."""

    host: EdgeColoredGraph
    edge_indices: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edge_indices", frozenset(self.edge_indices))
        uf = UnionFind(self.host.n)
        for i in sorted(self.edge_indices):
            if not 0 <= i < self.host.edge_count:
                raise ValueError(f"edge index {i} is not an edge of the host graph")
            u, v, _ = self.host.edges[i]
            if not uf.union(u, v):
                raise ValueError(f"edge {i} ({u}, {v}) closes a cycle")

    @classmethod
    def from_indices(cls, host: EdgeColoredGraph, indices: Iterable[int]) -> ColoredForest:
        return cls(host, frozenset(indices))

    @property
    def size(self) -> int:
        return len(self.edge_indices)

    @property
    def components(self) -> int:
        return self.host.n - len(self.edge_indices)

    @cached_property
    def histogram(self) -> tuple[int, ...]:
        """Edge count per color id."""
        out = [0] * self.host.color_count
        for i in self.edge_indices:
            out[self.host.edges[i][2]] += 1
        return tuple(out)

    def histogram_by_label(self) -> dict[Color, int]:
        return dict(zip(self.host.colors, self.histogram))

    def edges(self) -> list[tuple[int, int, Color]]:
        return [
            (u, v, self.host.colors[c])
            for u, v, c in (self.host.edges[i] for i in sorted(self.edge_indices))
        ]

    def is_spanning_tree(self) -> bool:
        return self.components == 1


@dataclass(frozen=True)
class ExchangeStep:
    """One swap of the (g, f) exchange loop."""

    color: Color
    added: int
    removed: int
    bridged: bool
    overlap: int


def forest_violations(forest: ColoredForest, bounds: ColorBounds, m: int) -> list[str]:
    """Every way ``forest`` fails to be a (g, f)-chromatic forest with ``m``
    components. Acyclicity is already enforced by ``ColoredForest``."""
    problems = []
    if forest.components != m:
        problems.append(f"has {forest.components} components, expected {m}")
    colors = forest.host.colors
    for c, have in enumerate(forest.histogram):
        if have < bounds.g[c]:
            problems.append(f"color {colors[c]!r}: {have} edges < g = {bounds.g[c]}")
        if have > bounds.f[c]:
            problems.append(f"color {colors[c]!r}: {have} edges > f = {bounds.f[c]}")
    return problems


def _certify(forest: ColoredForest, bounds: ColorBounds, m: int) -> ColoredForest:
    # rebuild from scratch so the check shares no state with the builder
    fresh = ColoredForest(forest.host, frozenset(forest.edge_indices))
    problems = forest_violations(fresh, bounds, m)
    if problems:
        raise InvariantViolation("; ".join(problems))
    return fresh


def _forest_path(graph: EdgeColoredGraph, chosen: Iterable[int], src: int, dst: int) -> list[int]:
    """Edge indices on the unique path from ``src`` to ``dst`` in a forest."""
    adjacency: dict[int, list[tuple[int, int]]] = {}
    for i in sorted(chosen):
        u, v, _ = graph.edges[i]
        adjacency.setdefault(u, []).append((v, i))
        adjacency.setdefault(v, []).append((u, i))
    via: dict[int, tuple[int, int] | None] = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            break
        for y, i in adjacency.get(x, ()):
            if y not in via:
                via[y] = (x, i)
                queue.append(y)
    if dst not in via:
        return []
    path = []
    node = dst
    while via[node] is not None:
        node, i = via[node]
        path.append(i)
    return path


def max_capacitated_forest(graph: EdgeColoredGraph, capacity: tuple[int, ...], target: int) -> list[int]:
    """Grow a forest with at most ``capacity[c]`` edges of each color.

    Stops at ``target`` edges or when no augmenting path remains, in which
    case the result is a largest such forest. Each round searches the
    exchange graph of the current set I by breadth-first search:

    * sources are edges x with I + x acyclic,
    * sinks are edges x whose color still has spare capacity,
    * y -> x when I - y + x is acyclic (y lies on the cycle x closes),
    * x -> y when I - y + x respects the capacities (same color as x).

    Flipping a shortest source-to-sink path grows I by one edge and keeps
    it independent in both matroids.
    """
    edges = graph.edges
    chosen: set[int] = set()
    used = [0] * graph.color_count
    while len(chosen) < target:
        uf = UnionFind(graph.n)
        for i in chosen:
            uf.union(edges[i][0], edges[i][1])
        outside = [i for i in range(len(edges)) if i not in chosen]
        sources = [x for x in outside if not uf.connected(edges[x][0], edges[x][1])]
        sinks = {x for x in outside if used[edges[x][2]] < capacity[edges[x][2]]}

        direct = [x for x in sources if x in sinks]
        if direct:
            x = direct[0]
            chosen.add(x)
            used[edges[x][2]] += 1
            continue
        if not sources or not sinks:
            break

        # y -> x arcs: x closes a cycle through y in I
        cycle_arcs: dict[int, list[int]] = {y: [] for y in chosen}
        for x in outside:
            u, v, _ = edges[x]
            if uf.connected(u, v):
                for y in _forest_path(graph, chosen, u, v):
                    cycle_arcs[y].append(x)
        by_color: dict[int, list[int]] = {}
        for y in sorted(chosen):
            by_color.setdefault(edges[y][2], []).append(y)

        prev: dict[int, int | None] = {x: None for x in sources}
        queue = deque(sources)
        end = None
        while queue:
            node = queue.popleft()
            if node in chosen:
                successors = sorted(cycle_arcs[node])
            else:
                if node in sinks:
                    end = node
                    break
                successors = by_color.get(edges[node][2], [])
            for nxt in successors:
                if nxt not in prev:
                    prev[nxt] = node
                    queue.append(nxt)
        if end is None:
            break
        node: int | None = end
        while node is not None:
            if node in chosen:
                chosen.remove(node)
                used[edges[node][2]] -= 1
            else:
                chosen.add(node)
                used[edges[node][2]] += 1
            node = prev[node]
    return sorted(chosen)


def build_f_spanning_forest(graph: EdgeColoredGraph, f: Bound, m: int = 1) -> ColoredForest:
    """Return a spanning forest with exactly ``m`` components and at most
    f(c) edges of each color c.

    Raises:
        Infeasible: no such forest exists.
        PreconditionError: ``m`` outside ``1..n`` or malformed ``f``.
    """
    bounds = ColorBounds.from_maps(graph, 0, f)
    validate_instance(graph, bounds, m)
    chosen = max_capacitated_forest(graph, bounds.f, graph.n - m)
    if len(chosen) < graph.n - m:
        raise Infeasible(
            f"largest f-chromatic forest has {len(chosen)} edges, {graph.n - m} needed"
        )
    return _certify(ColoredForest(graph, frozenset(chosen)), bounds, m)


def build_gg_forest(graph: EdgeColoredGraph, g: Bound) -> ColoredForest:
    """Return a forest with exactly g(c) edges of each color c.

    Such a forest has sum(g) edges, hence n - sum(g) components.

    Raises:
        PreconditionError: sum(g) > n - 1.
        Infeasible: no such forest exists.
    """
    return _build_gg(graph, ColorBounds.from_maps(graph, g, None).g)


def _build_gg(graph: EdgeColoredGraph, lower: tuple[int, ...]) -> ColoredForest:
    total = sum(lower)
    if total > graph.n - 1:
        raise PreconditionError(f"sum(g) <= n - 1 fails: sum(g)={total}, n={graph.n}")
    bounds = ColorBounds(lower, lower)
    validate_instance(graph, bounds, graph.n - total)
    chosen = max_capacitated_forest(graph, bounds.g, total)
    if len(chosen) < total:
        raise Infeasible(f"largest g-capped forest has {len(chosen)} edges, {total} needed")
    return _certify(ColoredForest(graph, frozenset(chosen)), bounds, graph.n - total)


def build_gf_spanning_forest(
    graph: EdgeColoredGraph,
    bounds: ColorBounds,
    m: int = 1,
    *,
    trace: list[ExchangeStep] | None = None,
) -> ColoredForest:
    """Return a spanning forest with exactly ``m`` components and between
    g(c) and f(c) edges of each color c.

    Starts from an f-capped spanning forest F and a forest H with exactly
    g(c) edges per color. While some color c is short in F, an edge e of
    color c from H - F is added to F. If e joins two components, any edge of
    F outside H is dropped; otherwise an edge outside H on the cycle e
    closes is dropped. Every swap raises |F & H| by one, so at most sum(g)
    swaps happen. Pass a list as ``trace`` to record the swaps.

    Raises:
        PreconditionError: as :func:`~chromaforest.feasibility.validate_instance`.
        Infeasible: no such forest exists.
    """
    validate_instance(graph, bounds, m)
    try:
        h_forest = _build_gg(graph, bounds.g)
    except Infeasible as exc:
        raise Infeasible(f"no forest meets the lower bounds exactly: {exc}") from None
    target = graph.n - m
    start = max_capacitated_forest(graph, bounds.f, target)
    if len(start) < target:
        raise Infeasible(f"largest f-chromatic forest has {len(start)} edges, {target} needed")

    edges = graph.edges
    h_edges = h_forest.edge_indices
    h_by_color = [sorted(i for i in h_edges if edges[i][2] == c) for c in range(graph.color_count)]
    current = set(start)
    have = [0] * graph.color_count
    for i in current:
        have[edges[i][2]] += 1
    overlap = len(current & h_edges)
    limit = sum(bounds.g)
    steps = 0

    while True:
        short = next((c for c in range(graph.color_count) if have[c] < bounds.g[c]), None)
        if short is None:
            break
        added = next(i for i in h_by_color[short] if i not in current)
        u, v, _ = edges[added]
        path = _forest_path(graph, current, u, v)
        bridged = not path
        candidates = current if bridged else path
        removed = min(i for i in candidates if i not in h_edges)

        current.add(added)
        current.remove(removed)
        have[short] += 1
        have[edges[removed][2]] -= 1
        steps += 1
        new_overlap = len(current & h_edges)

        _check_step(graph, current, have, bounds, m, new_overlap, overlap, steps, limit)
        overlap = new_overlap
        if trace is not None:
            trace.append(ExchangeStep(graph.colors[short], added, removed, bridged, overlap))

    return _certify(ColoredForest(graph, frozenset(current)), bounds, m)


def _check_step(graph, current, have, bounds, m, overlap, previous, steps, limit) -> None:
    uf = UnionFind(graph.n)
    for i in current:
        u, v, _ = graph.edges[i]
        if not uf.union(u, v):
            raise InvariantViolation(f"exchange step {steps} created a cycle")
    if uf.components != m or len(current) != graph.n - m:
        raise InvariantViolation(f"exchange step {steps} left {uf.components} components")
    if any(h > cap for h, cap in zip(have, bounds.f)):
        raise InvariantViolation(f"exchange step {steps} broke an upper bound")
    if overlap <= previous:
        raise InvariantViolation(f"exchange step {steps} did not grow the overlap")
    if steps > min(limit, graph.n - m):
        raise InvariantViolation(f"exchange loop exceeded {min(limit, graph.n - m)} steps")
