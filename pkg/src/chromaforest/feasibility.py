"""Exact existence tests for (g, f)-chromatic spanning forests.

A forest is (g, f)-chromatic when every color c appears on at least g(c)
and at most f(c) of its edges. A spanning forest with exactly m components
exists if and only if, for every color subset R,

    omega(G - E_R) <= min(m + sum_{c in R} f(c), n - sum_{c not in R} g(c))

where omega counts components and G - E_R drops the edges colored in R.
The checkers below evaluate that condition subset by subset and return the
first violating subset as a certificate.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from math import comb

from .graph import Color, EdgeColoredGraph
from .union_find import UnionFind

DEFAULT_MAX_COLORS = 24


class PreconditionError(ValueError):
    """An input violates a stated precondition (the message names it)."""


class InstanceTooLargeError(ValueError):
    """The exact subset enumeration would exceed the configured color cap."""


Bound = int | Mapping[Color, int] | None


@dataclass(frozen=True)
class ColorBounds:
    """Lower bounds ``g`` and upper bounds ``f`` indexed by color id."""

    g: tuple[int, ...]
    f: tuple[int, ...]

    @classmethod
    def from_maps(cls, graph: EdgeColoredGraph, g: Bound = None, f: Bound = None) -> ColorBounds:
        """Build bounds over ``graph``'s color universe.

        Each of ``g`` and ``f`` is a label-keyed mapping covering every color,
        a single integer applied to all colors, or None. A missing ``g``
        means 0 everywhere; a missing ``f`` means |E(G)| everywhere, which
        never binds.
        """
        return cls(
            _per_color(graph, g, "g", 0),
            _per_color(graph, f, "f", graph.edge_count),
        )

    def lower(self, graph: EdgeColoredGraph) -> dict[Color, int]:
        return dict(zip(graph.colors, self.g))

    def upper(self, graph: EdgeColoredGraph) -> dict[Color, int]:
        return dict(zip(graph.colors, self.f))


def _per_color(graph: EdgeColoredGraph, value: Bound, name: str, default: int) -> tuple[int, ...]:
    k = graph.color_count
    if value is None:
        return (default,) * k
    if isinstance(value, int):
        return (value,) * k
    unknown = [label for label in value if label not in graph.color_index]
    if unknown:
        raise PreconditionError(f"{name} names colors outside the universe: {unknown!r}")
    missing = [label for label in graph.colors if label not in value]
    if missing:
        raise PreconditionError(f"{name} is undefined for colors {missing!r}")
    return tuple(int(value[label]) for label in graph.colors)


@dataclass(frozen=True)
class ViolationCertificate:
    """A color subset R for which the existence condition fails.

    ``omega`` is the component count of G - E_R, ``f_bound`` is
    m + sum of f over R and ``g_bound`` is n - sum of g over the colors
    outside R. A certificate is only valid when omega exceeds the smaller
    bound; construction enforces that.
    """

    R: frozenset[Color]
    omega: int
    f_bound: int
    g_bound: int

    def __post_init__(self) -> None:
        if self.omega <= min(self.f_bound, self.g_bound):
            raise ValueError(
                f"not a violation: omega={self.omega} <= min({self.f_bound}, {self.g_bound})"
            )

    @property
    def side(self) -> str:
        """Which bound is violated: ``"f"``, ``"g"`` or ``"both"``."""
        f_side = self.omega > self.f_bound
        g_side = self.omega > self.g_bound
        return "both" if f_side and g_side else ("f" if f_side else "g")


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    certificate: ViolationCertificate | None = None

    def __post_init__(self) -> None:
        if self.feasible == (self.certificate is not None):
            raise ValueError("a verdict carries a certificate exactly when infeasible")

    def __bool__(self) -> bool:
        return self.feasible


def validate_instance(
    graph: EdgeColoredGraph, bounds: ColorBounds, m: int, *, require_g_fit: bool = True
) -> None:
    """Raise :class:`PreconditionError` unless the instance is well posed.

    Checks that bounds cover the universe with non-negative integers,
    ``1 <= m <= n``, ``g(c) <= f(c)`` for every color and, when
    ``require_g_fit`` is set, ``n >= m + sum(g)``.
    """
    k = graph.color_count
    if len(bounds.g) != k or len(bounds.f) != k:
        raise PreconditionError(
            f"bounds must cover the {k} colors of the universe "
            f"(got {len(bounds.g)} lower, {len(bounds.f)} upper)"
        )
    for name, values in (("g", bounds.g), ("f", bounds.f)):
        for c, value in enumerate(values):
            if not isinstance(value, int) or value < 0:
                raise PreconditionError(
                    f"{name}({graph.colors[c]!r}) = {value!r} is not a non-negative integer"
                )
    if not isinstance(m, int) or not 1 <= m <= graph.n:
        raise PreconditionError(f"1 <= m <= n fails: m={m!r}, n={graph.n}")
    for c, (lo, hi) in enumerate(zip(bounds.g, bounds.f)):
        if lo > hi:
            raise PreconditionError(
                f"g(c) <= f(c) fails for color {graph.colors[c]!r}: g={lo}, f={hi}"
            )
    if require_g_fit and graph.n < m + sum(bounds.g):
        raise PreconditionError(
            f"n >= m + sum(g) fails: n={graph.n}, m={m}, sum(g)={sum(bounds.g)}"
        )


def components_without(graph: EdgeColoredGraph, removed: frozenset[int] | set[int]) -> int:
    """omega(G - E_R) for a set of removed color ids."""
    uf = UnionFind(graph.n)
    for u, v, c in graph.edges:
        if c not in removed:
            uf.union(u, v)
    return uf.components


def subset_terms(
    graph: EdgeColoredGraph, bounds: ColorBounds, m: int, R: frozenset[Color] | set[Color]
) -> tuple[int, int, int]:
    """Return ``(omega, f_bound, g_bound)`` for the color subset ``R`` (labels)."""
    ids = graph.color_ids(R)
    omega = components_without(graph, ids)
    f_bound = m + sum(bounds.f[c] for c in ids)
    g_bound = graph.n - sum(bounds.g[c] for c in range(graph.color_count) if c not in ids)
    return omega, f_bound, g_bound


def _masks_by_popcount(k: int) -> Iterator[int]:
    """All k-bit masks by increasing popcount, then increasing value."""
    yield 0
    limit = 1 << k
    for size in range(1, k + 1):
        mask = (1 << size) - 1
        while mask < limit:
            yield mask
            low = mask & -mask
            ripple = mask + low
            mask = (((ripple ^ mask) >> 2) // low) | ripple


def check_gf_spanning_forest(
    graph: EdgeColoredGraph,
    bounds: ColorBounds,
    m: int = 1,
    *,
    max_colors: int = DEFAULT_MAX_COLORS,
) -> FeasibilityVerdict:
    """Decide whether ``graph`` has a (g, f)-chromatic spanning forest with
    exactly ``m`` components.

    Subsets are scanned by increasing size, then increasing bitmask over
    color ids, and the first violation is returned. Only colors that occur
    on some edge are enumerated: adding an absent color to R leaves omega
    unchanged and can only raise both bounds, so a minimal violating subset
    never contains one. The returned certificate is therefore the same one
    a scan over the whole universe would find first.

    Raises:
        PreconditionError: ``m`` out of range, ``g > f`` for some color, or
            ``n < m + sum(g)``.
        InstanceTooLargeError: more than ``max_colors`` colors occur.
    """
    validate_instance(graph, bounds, m)
    present = [c for c in range(graph.color_count) if graph.counts[c]]
    if len(present) > max_colors:
        raise InstanceTooLargeError(
            f"instance too large for exact check: {len(present)} colors occur, cap is {max_colors}"
        )

    n, g, f = graph.n, bounds.g, bounds.f
    by_color = [[graph.edges[i] for i in graph.edges_by_color[c]] for c in present]
    g_total = sum(g)
    for mask in _masks_by_popcount(len(present)):
        uf = UnionFind(n)
        f_sum = 0
        g_removed = 0
        for pos, c in enumerate(present):
            if mask >> pos & 1:
                f_sum += f[c]
                g_removed += g[c]
            else:
                for u, v, _ in by_color[pos]:
                    uf.union(u, v)
        omega = uf.components
        f_bound = m + f_sum
        # colors outside R: every color except those in the mask
        g_bound = n - (g_total - g_removed)
        if omega > min(f_bound, g_bound):
            R = frozenset(graph.colors[c] for pos, c in enumerate(present) if mask >> pos & 1)
            return FeasibilityVerdict(False, ViolationCertificate(R, omega, f_bound, g_bound))
    return FeasibilityVerdict(True)


def check_heterochromatic_spanning_tree(graph: EdgeColoredGraph, **kwargs) -> FeasibilityVerdict:
    """Rainbow spanning tree test: omega(G - E_R) <= |R| + 1 for all R."""
    return check_gf_spanning_forest(graph, ColorBounds.from_maps(graph, 0, 1), 1, **kwargs)


def check_f_spanning_forest(
    graph: EdgeColoredGraph, f: Bound, m: int = 1, **kwargs
) -> FeasibilityVerdict:
    """f-chromatic spanning forest test: omega(G - E_R) <= m + sum_R f."""
    return check_gf_spanning_forest(graph, ColorBounds.from_maps(graph, 0, f), m, **kwargs)


def check_sufficient_condition(graph: EdgeColoredGraph, bounds: ColorBounds, m: int = 1) -> bool:
    """Fast sufficient test for a (g, f)-chromatic spanning forest.

    True when |E| > C(n - m, 2) and every color's share of the edges,
    scaled by the forest size n - m, lies between g(c) and f(c). All
    comparisons are exact. An edgeless graph always yields False since
    C(n - m, 2) is never negative.
    """
    validate_instance(graph, bounds, m, require_g_fit=False)
    total = graph.edge_count
    if total <= comb(graph.n - m, 2):
        return False
    size = graph.n - m
    for c, count in enumerate(graph.counts):
        if not bounds.g[c] * total <= count * size <= bounds.f[c] * total:
            return False
    return True
