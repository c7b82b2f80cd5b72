"""Brute-force reference implementations for small instances.

These deliberately share no code paths with :mod:`chromaforest.feasibility`
or :mod:`chromaforest.construction` beyond the graph model, so they can be
used to cross-check both.
"""

from __future__ import annotations

from collections.abc import Iterator
from math import comb

from .construction import ColoredForest
from .feasibility import ColorBounds
from .graph import EdgeColoredGraph
from .union_find import RollbackUnionFind

DEFAULT_MAX_VERTICES = 9
DEFAULT_MAX_SUBSETS = 5_000_000
MAX_ORACLE_COLORS = 16


class OracleBudgetError(RuntimeError):
    """The instance is too large for exhaustive enumeration."""


def enumerate_spanning_forests(
    graph: EdgeColoredGraph,
    m: int = 1,
    *,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    max_subsets: int = DEFAULT_MAX_SUBSETS,
) -> Iterator[ColoredForest]:
    """Yield every spanning forest of ``graph`` with exactly ``m`` components.

    Forests come out in lexicographic order of their sorted edge indices.
    The search includes or excludes edges one at a time and abandons a
    branch as soon as it would close a cycle or cannot reach n - m edges.
    """
    n = graph.n
    if n > max_vertices:
        raise OracleBudgetError(f"oracle refuses n={n} > {max_vertices} vertices")
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}")
    need = n - m
    total = graph.edge_count
    if comb(total, need) > max_subsets:
        raise OracleBudgetError(
            f"oracle refuses C({total}, {need}) = {comb(total, need)} candidate subsets"
        )
    edges = graph.edges
    uf = RollbackUnionFind(n)
    picked: list[int] = []

    def walk(i: int) -> Iterator[ColoredForest]:
        if len(picked) == need:
            yield ColoredForest(graph, frozenset(picked))
            return
        if total - i < need - len(picked):
            return
        u, v, _ = edges[i]
        if uf.union(u, v):
            picked.append(i)
            yield from walk(i + 1)
            picked.pop()
            uf.undo()
        yield from walk(i + 1)

    yield from walk(0)


def _meets(histogram: tuple[int, ...], bounds: ColorBounds) -> bool:
    return all(lo <= h <= hi for h, lo, hi in zip(histogram, bounds.g, bounds.f))


def brute_force_gf_exists(graph: EdgeColoredGraph, bounds: ColorBounds, m: int = 1, **budget) -> bool:
    """True iff some spanning forest with ``m`` components is (g, f)-chromatic."""
    return any(_meets(F.histogram, bounds) for F in enumerate_spanning_forests(graph, m, **budget))


def brute_force_gf_witness(
    graph: EdgeColoredGraph, bounds: ColorBounds, m: int = 1, **budget
) -> ColoredForest | None:
    for forest in enumerate_spanning_forests(graph, m, **budget):
        if _meets(forest.histogram, bounds):
            return forest
    return None


def _components_dfs(n: int, adjacency: list[list[int]]) -> int:
    seen = [False] * n
    count = 0
    for start in range(n):
        if seen[start]:
            continue
        count += 1
        seen[start] = True
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adjacency[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
    return count


def brute_force_condition(graph: EdgeColoredGraph, bounds: ColorBounds, m: int = 1) -> bool:
    """Evaluate the subset condition literally over every R of the universe.

    For each R: count components of G - E_R by depth-first search and
    compare with min(m + sum_R f, n - sum_{not R} g).
    """
    k = graph.color_count
    if k > MAX_ORACLE_COLORS:
        raise OracleBudgetError(f"oracle refuses {k} > {MAX_ORACLE_COLORS} colors")
    n = graph.n
    for mask in range(1 << k):
        adjacency: list[list[int]] = [[] for _ in range(n)]
        for u, v, c in graph.edges:
            if not mask >> c & 1:
                adjacency[u].append(v)
                adjacency[v].append(u)
        omega = _components_dfs(n, adjacency)
        f_side = m + sum(bounds.f[c] for c in range(k) if mask >> c & 1)
        g_side = n - sum(bounds.g[c] for c in range(k) if not mask >> c & 1)
        if omega > min(f_side, g_side):
            return False
    return True
