import random
from itertools import combinations

import pytest
from hypothesis import strategies as st

from chromaforest import ColorBounds, EdgeColoredGraph


def random_graph(rng: random.Random, max_n=8, max_edges=14, max_colors=5, min_n=1):
    n = rng.randint(min_n, max_n)
    pairs = list(combinations(range(n), 2))
    size = rng.randint(0, min(len(pairs), max_edges))
    chosen = rng.sample(pairs, size)
    k = rng.randint(1, max_colors)
    labels = [f"c{i}" for i in range(k)]
    edges = [(u, v, rng.choice(labels)) for u, v in chosen]
    return EdgeColoredGraph.from_edges(n, edges, labels)


def random_bounds(rng: random.Random, graph: EdgeColoredGraph):
    """Random (g, f, m) meeting the feasibility preconditions."""
    m = rng.randint(1, graph.n)
    budget = graph.n - m
    g = []
    for count in graph.counts:
        hi = min(count + (1 if rng.random() < 0.15 else 0), 2, budget)
        value = rng.randint(0, max(hi, 0)) if rng.random() < 0.6 else 0
        g.append(value)
        budget -= value
    f = [lo + rng.choice((0, 0, 1, 1, 2, 3)) for lo in g]
    return ColorBounds(tuple(g), tuple(f)), m


def random_instance(rng: random.Random, **kwargs):
    graph = random_graph(rng, **kwargs)
    bounds, m = random_bounds(rng, graph)
    return graph, bounds, m


def complete_graph(n, counts=None, colors=None, rng=None):
    """K_n whose edges (in lexicographic order, optionally shuffled) carry
    colors "1", "2", ... with the given multiplicities."""
    pairs = list(combinations(range(n), 2))
    if counts is None:
        counts = [len(pairs)]
    assert sum(counts) == len(pairs)
    labels = colors or [str(i + 1) for i in range(len(counts))]
    seq = [labels[i] for i, c in enumerate(counts) for _ in range(c)]
    if rng is not None:
        rng.shuffle(seq)
    return EdgeColoredGraph.from_edges(n, [(u, v, c) for (u, v), c in zip(pairs, seq)], labels)


@st.composite
def colored_graphs(draw, max_n=7, max_colors=4, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=12)) if pairs else []
    k = draw(st.integers(1, max_colors))
    labels = [f"c{i}" for i in range(k)]
    edges = [(u, v, draw(st.sampled_from(labels))) for u, v in chosen]
    return EdgeColoredGraph.from_edges(n, edges, labels)


@st.composite
def instances(draw, max_n=7, max_colors=4):
    graph = draw(colored_graphs(max_n=max_n, max_colors=max_colors))
    seed = draw(st.integers(0, 2**32 - 1))
    bounds, m = random_bounds(random.Random(seed), graph)
    return graph, bounds, m


@pytest.fixture
def triangle():
    return EdgeColoredGraph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


@pytest.fixture
def k6_7422():
    """K_6 with color counts 7, 4, 2, 2."""
    return complete_graph(6, [7, 4, 2, 2], rng=random.Random(23))
