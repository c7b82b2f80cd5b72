"""Search for partitions of a colored K_{2n} into n distribution-similar trees.

A partition is valid when the n spanning trees are edge-disjoint, cover
every edge, and each tree holds between floor(|E_c|/n) and ceil(|E_c|/n)
edges of every color c. The exact mode decides existence by exhaustive
backtracking; the heuristic mode runs randomized local search with
restarts and can only ever report a partition or give up.
"""

from __future__ import annotations

import enum
import json
import logging
import random
import time
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

from .construction import ColoredForest
from .feasibility import PreconditionError
from .graph import EdgeColoredGraph, GraphError
from .union_find import RollbackUnionFind, UnionFind

log = logging.getLogger(__name__)

DEFAULT_EXACT_BUDGET = 5_000_000
DEFAULT_HEURISTIC_BUDGET = 2_000_000
MAX_EXACT_ORDER = 8


class Outcome(str, enum.Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class TreePartition:
    host: EdgeColoredGraph
    trees: tuple[ColoredForest, ...]

    @classmethod
    def from_assignment(cls, host: EdgeColoredGraph, assignment: Sequence[int], k: int) -> TreePartition:
        groups: list[list[int]] = [[] for _ in range(k)]
        for edge, tree in enumerate(assignment):
            groups[tree].append(edge)
        return cls(host, tuple(ColoredForest(host, frozenset(g)) for g in groups))


@dataclass
class SearchReport:
    outcome: Outcome
    partition: TreePartition | None = None
    nodes_explored: int = 0
    elapsed: float = 0.0
    artifact: Path | None = None
    restarts: int = field(default=0)

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND


class Verification(NamedTuple):
    ok: bool
    reason: str | None = None


def _check_order(graph: EdgeColoredGraph) -> int:
    if not graph.is_complete():
        raise GraphError("partition search needs a complete graph")
    if graph.n % 2 or graph.n < 6:
        raise GraphError(f"partition search needs an even order >= 6, got {graph.n}")
    return graph.n // 2


def partition_bounds(graph: EdgeColoredGraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per-tree floor and ceiling of |E_c| / n for a complete graph of order 2n."""
    k = graph.n // 2
    lower = tuple(count // k for count in graph.counts)
    upper = tuple(-(-count // k) for count in graph.counts)
    return lower, upper


def verify_partition(
    graph: EdgeColoredGraph,
    partition: TreePartition | Sequence[Iterable[int]],
    bounds: tuple[Sequence[int], Sequence[int]] | None = None,
) -> Verification:
    """Check a claimed partition and report the first broken constraint.

    ``partition`` is a :class:`TreePartition` or one collection of edge
    indices per tree. Never raises for bad partitions.
    """
    if isinstance(partition, TreePartition):
        if partition.host != graph:
            return Verification(False, "partition belongs to a different host graph")
        groups = [sorted(t.edge_indices) for t in partition.trees]
    else:
        groups = [sorted(set(t)) for t in partition]
    if graph.n % 2 or not graph.is_complete():
        return Verification(False, "host is not a complete graph of even order")
    k = graph.n // 2
    if len(groups) != k:
        return Verification(False, f"expected {k} trees, got {len(groups)}")
    lower, upper = bounds if bounds is not None else partition_bounds(graph)

    owner: dict[int, int] = {}
    for t, group in enumerate(groups):
        for i in group:
            if not isinstance(i, int) or not 0 <= i < graph.edge_count:
                return Verification(False, f"tree {t} references unknown edge {i!r}")
            if i in owner:
                return Verification(False, f"edge {i} is in both tree {owner[i]} and tree {t}")
            owner[i] = t
    missing = [i for i in range(graph.edge_count) if i not in owner]
    if missing:
        return Verification(False, f"coverage broken: edge {missing[0]} is in no tree")

    for t, group in enumerate(groups):
        uf = UnionFind(graph.n)
        for i in group:
            u, v, _ = graph.edges[i]
            if not uf.union(u, v):
                return Verification(False, f"tree {t} is not acyclic (edge {i} closes a cycle)")
        if uf.components != 1:
            return Verification(False, f"tree {t} is not spanning ({uf.components} components)")
        counts = [0] * graph.color_count
        for i in group:
            counts[graph.edges[i][2]] += 1
        for c, have in enumerate(counts):
            if not lower[c] <= have <= upper[c]:
                return Verification(
                    False,
                    f"tree {t}, color {graph.colors[c]!r}: {have} edges outside "
                    f"[{lower[c]}, {upper[c]}]",
                )
    return Verification(True)


class _Budget(Exception):
    pass


class _ExactSearch:
    """Backtracking over edge-to-tree assignments.

    The next edge is always the unassigned one with the fewest legal trees
    (ties: tightest color, then lowest index), so forced moves happen first
    and an edge with no legal tree kills the branch immediately. A tree is
    legal for an edge when the edge closes no cycle in it and its color is
    below the per-tree ceiling. After each move the search also requires:

    * enough unassigned edges of each color to lift every tree to its floor,
    * every tree can still be filled to n - 1 edges within its color
      ceilings without needing more than it has room for,
    * every tree can still become connected using unassigned edges whose
      color it can still take.

    Trees without edges are interchangeable, so only the first empty tree
    is ever tried.
    """

    def __init__(self, graph, lower, upper, budget, cancel=None) -> None:
        self.graph = graph
        self.k = graph.n // 2
        self.lower = lower
        self.upper = upper
        self.budget = budget
        self.cancel = cancel
        self.nodes = 0
        slack = [(upper[c] - lower[c], graph.counts[c], c) for c in range(graph.color_count)]
        self.color_rank = {c: r for r, (_, _, c) in enumerate(sorted(slack))}
        self.trees = [RollbackUnionFind(graph.n) for _ in range(self.k)]
        self.size = [0] * self.k
        self.cnt = [[0] * graph.color_count for _ in range(self.k)]
        self.remaining = list(graph.counts)
        self.deficit = [self.k * lower[c] for c in range(graph.color_count)]
        self.assignment = [-1] * graph.edge_count
        self.unassigned = set(range(graph.edge_count))

    def _place(self, edge: int, t: int) -> bool:
        u, v, c = self.graph.edges[edge]
        if self.cnt[t][c] >= self.upper[c]:
            return False
        if not self.trees[t].union(u, v):
            return False
        if self.cnt[t][c] < self.lower[c]:
            self.deficit[c] -= 1
        self.cnt[t][c] += 1
        self.size[t] += 1
        self.remaining[c] -= 1
        self.assignment[edge] = t
        self.unassigned.discard(edge)
        return True

    def _unplace(self, edge: int, t: int) -> None:
        c = self.graph.edges[edge][2]
        self.trees[t].undo()
        self.cnt[t][c] -= 1
        if self.cnt[t][c] < self.lower[c]:
            self.deficit[c] += 1
        self.size[t] -= 1
        self.remaining[c] += 1
        self.assignment[edge] = -1
        self.unassigned.add(edge)

    def _options(self, edge: int) -> list[int]:
        u, v, c = self.graph.edges[edge]
        short, rest = [], []
        empty_seen = False
        for t in range(self.k):
            if self.size[t] == 0:
                if empty_seen:
                    continue
                empty_seen = True
            if self.cnt[t][c] >= self.upper[c]:
                continue
            uf = self.trees[t]
            if uf.find(u) == uf.find(v):
                continue
            (short if self.cnt[t][c] < self.lower[c] else rest).append(t)
        return short + rest

    def _select(self) -> tuple[int, list[int]] | None:
        best = None
        best_key = None
        colors = self.graph.edges
        for edge in sorted(self.unassigned):
            options = self._options(edge)
            if not options:
                return edge, options
            key = (len(options), self.color_rank[colors[edge][2]], edge)
            if best_key is None or key < best_key:
                best, best_key = (edge, options), key
                if len(options) == 1:
                    break
        return best

    def _viable(self) -> bool:
        lower, upper = self.lower, self.upper
        remaining = self.remaining
        if any(r < d for r, d in zip(remaining, self.deficit)):
            return False
        edges = self.graph.edges
        full = self.graph.n - 1
        for t in range(self.k):
            cnt = self.cnt[t]
            need = full - self.size[t]
            if need == 0:
                continue
            room = 0
            floor_gap = 0
            for c, have in enumerate(cnt):
                room += min(upper[c] - have, remaining[c])
                if have < lower[c]:
                    floor_gap += lower[c] - have
            if room < need or floor_gap > need:
                return False
            probe = self.trees[t].copy()
            for i in self.unassigned:
                u, v, c = edges[i]
                if cnt[c] < upper[c]:
                    probe.union(u, v)
                    if probe.components == 1:
                        break
            if probe.components != 1:
                return False
        return True

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _Budget
        if self.cancel is not None and self.nodes % 4096 == 0 and self.cancel.is_set():
            raise _Budget

    def _dfs(self) -> bool:
        pick = self._select()
        if pick is None:
            return True
        edge, options = pick
        for t in options:
            self._tick()
            self._place(edge, t)
            if self._viable() and self._dfs():
                return True
            self._unplace(edge, t)
        return False

    def apply_prefix(self, prefix: Sequence[tuple[int, int]]) -> bool:
        for edge, t in prefix:
            if not self._place(edge, t) or not self._viable():
                return False
        return True

    def prefixes(self, depth: int) -> list[tuple[tuple[int, int], ...]]:
        """Viable first ``depth`` decisions, in search order."""
        out: list[tuple[tuple[int, int], ...]] = []

        def walk(d: int, acc: list[tuple[int, int]]) -> None:
            pick = self._select()
            if d == depth or pick is None:
                out.append(tuple(acc))
                return
            edge, options = pick
            for t in options:
                self._place(edge, t)
                if self._viable():
                    acc.append((edge, t))
                    walk(d + 1, acc)
                    acc.pop()
                self._unplace(edge, t)

        if self._viable():
            walk(0, [])
        return out

    def run(self, prefix: Sequence[tuple[int, int]] = ()) -> Outcome:
        try:
            if not self._viable() or not self.apply_prefix(prefix):
                return Outcome.EXHAUSTED
            return Outcome.FOUND if self._dfs() else Outcome.EXHAUSTED
        except _Budget:
            return Outcome.BUDGET_EXCEEDED


def _exact_worker(args):
    graph, lower, upper, budget, prefix, cancel = args
    search = _ExactSearch(graph, lower, upper, budget, cancel)
    outcome = search.run(prefix)
    if outcome is Outcome.FOUND and cancel is not None:
        cancel.set()
    return outcome, list(search.assignment), search.nodes


def _run_exact(graph, lower, upper, budget, workers) -> tuple[Outcome, list[int] | None, int]:
    if workers <= 1:
        search = _ExactSearch(graph, lower, upper, budget)
        outcome = search.run()
        return outcome, (search.assignment if outcome is Outcome.FOUND else None), search.nodes

    import multiprocessing

    splitter = _ExactSearch(graph, lower, upper, budget)
    depth = 1
    prefixes = splitter.prefixes(depth)
    while len(prefixes) < 4 * workers and depth < min(8, graph.edge_count):
        depth += 1
        prefixes = splitter.prefixes(depth)
    if not prefixes:
        return Outcome.EXHAUSTED, None, 0
    with multiprocessing.Manager() as manager:
        cancel = manager.Event()
        tasks = [(graph, lower, upper, budget, p, cancel) for p in prefixes]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_exact_worker, tasks))
    nodes = sum(r[2] for r in results)
    for outcome, assignment, _ in results:
        if outcome is Outcome.FOUND:
            return outcome, assignment, nodes
    if any(r[0] is Outcome.BUDGET_EXCEEDED for r in results):
        return Outcome.BUDGET_EXCEEDED, None, nodes
    return Outcome.EXHAUSTED, None, nodes


class _LocalSearch:
    """Randomized greedy seeding followed by edge swaps between trees.

    The penalty of a tree is (components - 1) plus, per color, how far its
    count lies outside [floor, ceil]. A swap exchanges one edge between two
    trees and is kept unless it raises the total penalty (worsening moves
    are accepted with a small probability to escape plateaus).
    """

    def __init__(self, graph, lower, upper, rng: random.Random) -> None:
        self.graph = graph
        self.k = graph.n // 2
        self.lower = lower
        self.upper = upper
        self.rng = rng

    def _penalty(self, group: list[int]) -> int:
        graph = self.graph
        uf = UnionFind(graph.n)
        counts = [0] * graph.color_count
        for i in group:
            u, v, c = graph.edges[i]
            uf.union(u, v)
            counts[c] += 1
        score = uf.components - 1
        for c, have in enumerate(counts):
            if have < self.lower[c]:
                score += self.lower[c] - have
            elif have > self.upper[c]:
                score += have - self.upper[c]
        return score

    def seed(self) -> list[list[int]]:
        graph, k = self.graph, self.k
        order = list(range(graph.edge_count))
        self.rng.shuffle(order)
        groups: list[list[int]] = [[] for _ in range(k)]
        ufs = [UnionFind(graph.n) for _ in range(k)]
        counts = [[0] * graph.color_count for _ in range(k)]
        for i in order:
            u, v, c = graph.edges[i]
            open_trees = [t for t in range(k) if len(groups[t]) < graph.n - 1]
            self.rng.shuffle(open_trees)

            def fit(t: int) -> tuple[int, int]:
                return (ufs[t].connected(u, v), counts[t][c] >= self.upper[c])

            t = min(open_trees, key=fit)
            groups[t].append(i)
            ufs[t].union(u, v)
            counts[t][c] += 1
        return groups

    def run(self, groups: list[list[int]], steps: int) -> tuple[list[list[int]], int, int]:
        rng = self.rng
        scores = [self._penalty(g) for g in groups]
        total = sum(scores)
        used = 0
        while total and used < steps:
            used += 1
            bad = [t for t in range(self.k) if scores[t]]
            a = rng.choice(bad)
            b = rng.randrange(self.k - 1)
            b += b >= a
            ia = rng.randrange(len(groups[a]))
            ib = rng.randrange(len(groups[b]))
            ga, gb = groups[a], groups[b]
            ga[ia], gb[ib] = gb[ib], ga[ia]
            sa, sb = self._penalty(ga), self._penalty(gb)
            delta = sa + sb - scores[a] - scores[b]
            if delta <= 0 or rng.random() < 0.02:
                scores[a], scores[b] = sa, sb
                total += delta
            else:
                ga[ia], gb[ib] = gb[ib], ga[ia]
        return groups, total, used


def _run_heuristic(graph, lower, upper, budget, seed, time_limit, started):
    rng = random.Random(seed)
    search = _LocalSearch(graph, lower, upper, rng)
    nodes = 0
    restarts = 0
    per_restart = max(2_000, 400 * graph.edge_count)
    while nodes < budget:
        if time_limit is not None and time.monotonic() - started > time_limit:
            break
        groups = search.seed()
        groups, score, used = search.run(groups, min(per_restart, budget - nodes))
        nodes += used + 1
        if score == 0:
            assignment = [0] * graph.edge_count
            for t, group in enumerate(groups):
                for i in group:
                    assignment[i] = t
            return Outcome.FOUND, assignment, nodes, restarts
        restarts += 1
    return Outcome.BUDGET_EXCEEDED, None, nodes, restarts


def partition_similar_trees(
    graph: EdgeColoredGraph,
    mode: str = "exact",
    budget: int | None = None,
    *,
    seed: int = 0,
    time_limit: float | None = None,
    workers: int = 1,
    artifact_dir: str | Path | None = None,
    bounds: tuple[Sequence[int], Sequence[int]] | None = None,
    max_exact_order: int = MAX_EXACT_ORDER,
) -> SearchReport:
    """Partition a complete graph of order 2n into n similar spanning trees.

    ``mode`` is ``"exact"`` (exhaustive; orders above ``max_exact_order``
    are refused) or ``"heuristic"``. ``budget`` caps search nodes;
    ``time_limit`` (seconds) caps heuristic wall time. ``bounds`` replaces
    the per-tree (floor, ceil) color bounds, e.g. to study tighter
    variants. When exact search exhausts and ``artifact_dir`` is given, the
    instance is written there as a JSON document.

    With ``workers > 1`` the exact search fans its first branches out to a
    process pool; the outcome is the same, but which partition is
    reported may differ from the single-worker run.
    """
    _check_order(graph)
    lower, upper = bounds if bounds is not None else partition_bounds(graph)
    lower, upper = tuple(lower), tuple(upper)
    started = time.monotonic()
    restarts = 0
    if mode == "exact":
        if graph.n > max_exact_order:
            raise PreconditionError(
                f"exact mode is limited to order <= {max_exact_order}, got {graph.n}"
            )
        outcome, assignment, nodes = _run_exact(
            graph, lower, upper, budget or DEFAULT_EXACT_BUDGET, workers
        )
    elif mode == "heuristic":
        outcome, assignment, nodes, restarts = _run_heuristic(
            graph, lower, upper, budget or DEFAULT_HEURISTIC_BUDGET, seed, time_limit, started
        )
    else:
        raise ValueError(f"unknown mode {mode!r}")

    report = SearchReport(outcome, nodes_explored=nodes, restarts=restarts)
    if assignment is not None:
        report.partition = TreePartition.from_assignment(graph, assignment, graph.n // 2)
        check = verify_partition(graph, report.partition, (lower, upper))
        if not check.ok:
            raise AssertionError(f"search returned an invalid partition: {check.reason}")
    report.elapsed = time.monotonic() - started
    if outcome is Outcome.EXHAUSTED:
        log.warning("exact search exhausted: no similar partition exists for this instance")
        if artifact_dir is not None:
            report.artifact = write_counterexample(graph, (lower, upper), artifact_dir)
    return report


def write_counterexample(
    graph: EdgeColoredGraph, bounds: tuple[Sequence[int], Sequence[int]], directory: str | Path
) -> Path:
    from .io import instance_to_dict

    doc = instance_to_dict(graph)
    doc["partition_bounds"] = {
        "lower": {str(graph.colors[c]): v for c, v in enumerate(bounds[0])},
        "upper": {str(graph.colors[c]): v for c, v in enumerate(bounds[1])},
    }
    text = json.dumps(doc, sort_keys=True)
    digest = _fnv1a(text.encode())
    path = Path(directory) / f"counterexample-{digest:016x}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + "\n", encoding="utf-8")
    return path


def _fnv1a(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for byte in data:
        h = ((h ^ byte) * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


PROFILES = ("uniform", "skewed", "proper-ish")


def complete_coloring(
    order: int, palette: int, rng: random.Random, profile: str = "uniform"
) -> EdgeColoredGraph:
    """Random coloring of K_order with colors labelled "1".."palette"."""
    if order < 2 or palette < 1:
        raise ValueError(f"need order >= 2 and palette >= 1, got {order}, {palette}")
    labels = [str(i + 1) for i in range(palette)]
    pairs = [(u, v) for u in range(order) for v in range(u + 1, order)]
    if profile == "uniform":
        picks = [rng.randrange(palette) for _ in pairs]
    elif profile == "skewed":
        weights = [2.0 ** -i for i in range(palette)]
        picks = rng.choices(range(palette), weights=weights, k=len(pairs))
    elif profile == "proper-ish":
        # round-robin 1-factorization: matching r holds the pairs with u + v = r (mod order - 1)
        rounds = _one_factor_rounds(order)
        shift = rng.randrange(palette)
        picks = [(rounds[p] + shift) % palette for p in pairs]
    else:
        raise ValueError(f"unknown profile {profile!r}; expected one of {PROFILES}")
    edges = [(u, v, labels[c]) for (u, v), c in zip(pairs, picks)]
    return EdgeColoredGraph.from_edges(order, edges, labels)


def _one_factor_rounds(order: int) -> dict[tuple[int, int], int]:
    if order % 2:
        # odd order: the near-1-factorization of K_order by u + v mod order
        return {(u, v): (u + v) % order for u in range(order) for v in range(u + 1, order)}
    last = order - 1
    rounds = {}
    for u in range(last):
        for v in range(u + 1, last):
            rounds[(u, v)] = (u + v) % last
        rounds[(u, last)] = (2 * u) % last
    return rounds


def random_complete_coloring(order: int, palette: int, seed: int, profile: str = "uniform") -> EdgeColoredGraph:
    """Reproducible random coloring of K_order for partition sweeps.

    Randomness comes from Python's Mersenne Twister (``random.Random``)
    seeded with ``seed``, so a fixed seed gives the same graph on every
    platform and Python version.
    """
    if order % 2 or order < 6:
        raise ValueError(f"order must be even and >= 6, got {order}")
    return complete_coloring(order, palette, random.Random(seed), profile)

