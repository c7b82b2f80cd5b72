import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chromaforest import (
    EdgeColoredGraph,
    GraphError,
    NotRepresentable,
    build_similar_tree,
    color_distribution,
    enumerate_spanning_forests,
    exact_distribution_tree,
    similarity_bounds,
)
from conftest import complete_graph


def test_distribution_example_with_exact_tree():
    graph = complete_graph(6, [3, 3, 6, 3], rng=random.Random(2))
    assert list(color_distribution(graph).values()) == [Fraction(1, 5)] * 2 + [Fraction(2, 5), Fraction(1, 5)]
    assert [float(p) for p in color_distribution(graph).values()] == [0.2, 0.2, 0.4, 0.2]
    tree = exact_distribution_tree(graph)
    assert tree.histogram == (1, 1, 2, 1)
    assert tree.is_spanning_tree()


def test_bounds_for_uneven_counts(k6_7422):
    dist = color_distribution(k6_7422)
    assert dist == {"1": Fraction(7, 15), "2": Fraction(4, 15), "3": Fraction(2, 15), "4": Fraction(2, 15)}
    b = similarity_bounds(k6_7422)
    assert (b.lower["1"], b.upper["1"]) == (2, 3)
    assert b.lower == {"1": 2, "2": 1, "3": 0, "4": 0}
    assert b.upper == {"1": 3, "2": 2, "3": 1, "4": 1}
    tree = build_similar_tree(k6_7422)
    for label, h in tree.histogram_by_label().items():
        assert b.lower[label] <= h <= b.upper[label]


def test_single_color_k4():
    graph = complete_graph(4)
    assert similarity_bounds(graph).lower == {"1": 3} == similarity_bounds(graph).upper
    assert exact_distribution_tree(graph).histogram == (3,)


def test_not_representable_names_first_bad_color():
    graph = complete_graph(6, [3, 2, 2, 2, 2, 2, 2])
    with pytest.raises(NotRepresentable) as info:
        exact_distribution_tree(graph)
    assert (info.value.color, info.value.count, info.value.n) == ("2", 2, 6)


def test_k4_two_each_matches_enumeration():
    graph = complete_graph(4, [2, 2, 2])
    trees = list(enumerate_spanning_forests(graph))
    assert len(trees) == 16
    # 2*2 is a multiple of 4, so a (1,1,1) tree must exist
    assert any(t.histogram == (1, 1, 1) for t in trees)
    assert exact_distribution_tree(graph).histogram == (1, 1, 1)
    skew = complete_graph(4, [3, 2, 1], colors=["a", "b", "c"])
    with pytest.raises(NotRepresentable):
        exact_distribution_tree(skew)


@pytest.mark.parametrize(
    "graph",
    [
        EdgeColoredGraph.from_edges(3, [(0, 1, "a"), (1, 2, "a")]),
        EdgeColoredGraph.from_edges(1, []),
    ],
    ids=["missing-edge", "single-vertex"],
)
def test_requires_complete_graph(graph):
    with pytest.raises(GraphError):
        similarity_bounds(graph)
    with pytest.raises(GraphError):
        exact_distribution_tree(graph)


def test_distribution_needs_edges():
    with pytest.raises(GraphError):
        color_distribution(EdgeColoredGraph.from_edges(2, [], colors=["a"]))


@st.composite
def complete_colorings(draw, max_n=9):
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(1, n * (n - 1) // 2))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    labels = [str(i) for i in range(k)]
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return EdgeColoredGraph.from_edges(n, [(u, v, rng.choice(labels)) for u, v in pairs], labels)


@settings(max_examples=150)
@given(complete_colorings())
def test_similar_tree_respects_sandwich(graph):
    tree = build_similar_tree(graph)
    b = similarity_bounds(graph)
    assert tree.is_spanning_tree()
    for c, label in enumerate(graph.colors):
        share = Fraction(graph.counts[c] * (graph.n - 1), graph.edge_count)
        assert b.lower[label] == share.numerator // share.denominator
        assert b.lower[label] <= tree.histogram[c] <= b.upper[label]


@settings(max_examples=150)
@given(complete_colorings(max_n=6))
def test_exact_tree_iff_divisibility(graph):
    divisible = all(2 * c % graph.n == 0 for c in graph.counts)
    exists = any(
        t.histogram == tuple(Fraction(2 * c, graph.n) for c in graph.counts)
        for t in enumerate_spanning_forests(graph)
    )
    assert divisible == exists
    if divisible:
        assert exact_distribution_tree(graph).histogram == tuple(2 * c // graph.n for c in graph.counts)
    else:
        with pytest.raises(NotRepresentable):
            exact_distribution_tree(graph)


def test_k4_every_three_coloring_exhaustively():
    pairs = [(u, v) for u in range(4) for v in range(u + 1, 4)]
    for colors in product("abc", repeat=6):
        graph = EdgeColoredGraph.from_edges(4, list(zip(*zip(*pairs), colors)), ["a", "b", "c"])
        b = similarity_bounds(graph)
        tree = build_similar_tree(graph)
        assert all(b.lower[l] <= h <= b.upper[l] for l, h in tree.histogram_by_label().items())
