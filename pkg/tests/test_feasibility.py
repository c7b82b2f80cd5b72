import random
from itertools import combinations

import pytest
from hypothesis import given, settings

from chromaforest import (
    ColorBounds,
    EdgeColoredGraph,
    InstanceTooLargeError,
    PreconditionError,
    check_f_spanning_forest,
    check_gf_spanning_forest,
    check_heterochromatic_spanning_tree,
    check_sufficient_condition,
    component_count,
)
from chromaforest.feasibility import _masks_by_popcount, components_without, subset_terms
from chromaforest.oracle import brute_force_gf_exists
from conftest import colored_graphs, complete_graph, instances, random_graph

CAPS_F = {"1": 3, "2": 2, "3": 3, "4": 0, "5": 0, "6": 1, "7": 2}
SEVEN = [str(i) for i in range(1, 8)]


def forced_cycle_graph():
    """8 vertices where colors 2, 3 and 6 span only four components, so
    taking two 2-edges, two 3-edges and one 6-edge closes a cycle."""
    edges = [
        (0, 1, "2"), (1, 2, "2"), (0, 2, "3"), (3, 4, "3"), (6, 7, "6"),
        (2, 3, "1"), (4, 5, "1"), (5, 6, "7"), (0, 7, "4"), (1, 5, "5"),
    ]
    return EdgeColoredGraph.from_edges(8, edges, SEVEN)


def eight_vertex_seven_colors():
    rng = random.Random(180825)
    pairs = list(combinations(range(8), 2))
    chosen = sorted(rng.sample(pairs, 14))
    edges = [(u, v, rng.choice(SEVEN)) for u, v in chosen]
    # make sure it is connected by adding a path where needed
    graph = EdgeColoredGraph.from_edges(8, edges, SEVEN)
    extra = [(i, i + 1, SEVEN[i % 7]) for i in range(7) if (i, i + 1) not in set(chosen)]
    graph = EdgeColoredGraph.from_edges(8, edges + extra, SEVEN)
    assert component_count(graph) == 1
    return graph


def test_triangle_is_not_rainbow(triangle):
    verdict = check_gf_spanning_forest(triangle, ColorBounds.from_maps(triangle, 0, 1), 1)
    assert not verdict.feasible
    cert = verdict.certificate
    assert cert.R == frozenset({1})
    assert (cert.omega, cert.f_bound, cert.g_bound) == (3, 2, 3)
    assert check_heterochromatic_spanning_tree(triangle) == verdict


def test_single_edge_forced():
    k2 = EdgeColoredGraph.from_edges(2, [(0, 1, "c")])
    assert check_gf_spanning_forest(k2, ColorBounds.from_maps(k2, {"c": 1}, {"c": 1}), 1).feasible


@given(colored_graphs())
def test_vacuous_bounds_reduce_to_connectivity(graph):
    bounds = ColorBounds.from_maps(graph, 0, graph.edge_count)
    assert check_gf_spanning_forest(graph, bounds, 1).feasible == (component_count(graph) == 1)


def test_forced_cycle_numbers():
    graph = forced_cycle_graph()
    g = {"1": 0, "2": 2, "3": 2, "4": 0, "5": 0, "6": 1, "7": 0}
    bounds = ColorBounds.from_maps(graph, g, CAPS_F)
    assert subset_terms(graph, bounds, 1, {"1", "4", "5", "7"}) == (4, 6, 3)
    verdict = check_gf_spanning_forest(graph, bounds, 1)
    assert not verdict.feasible
    assert verdict.certificate.side == "g"
    assert not brute_force_gf_exists(graph, bounds, 1)


def test_lower_bounds_exceeding_tree_size_rejected():
    graph = forced_cycle_graph()
    g = {"1": 3, "2": 1, "3": 3, "4": 0, "5": 0, "6": 1, "7": 2}
    with pytest.raises(PreconditionError, match="n >= m"):
        check_gf_spanning_forest(graph, ColorBounds.from_maps(graph, g, CAPS_F), 1)


def test_seven_color_f_caps_match_brute_force():
    graph = eight_vertex_seven_colors()
    verdict = check_f_spanning_forest(graph, CAPS_F, 1)
    bounds = ColorBounds.from_maps(graph, 0, CAPS_F)
    assert verdict.feasible == brute_force_gf_exists(graph, bounds, 1)


def test_seven_color_gf_bounds_match_brute_force():
    graph = eight_vertex_seven_colors()
    g = {"1": 1, "2": 1, "3": 2, "4": 0, "5": 0, "6": 1, "7": 0}
    bounds = ColorBounds.from_maps(graph, g, CAPS_F)
    assert check_gf_spanning_forest(graph, bounds, 1).feasible == brute_force_gf_exists(graph, bounds, 1)


def test_zero_caps_infeasible_unless_empty_forest():
    graph = eight_vertex_seven_colors()
    verdict = check_f_spanning_forest(graph, 0, 3)
    assert not verdict.feasible
    assert check_f_spanning_forest(graph, 0, graph.n).feasible


@pytest.mark.parametrize(
    "g, f, m, match",
    [
        (0, 1, 0, "1 <= m <= n"),
        (0, 1, 4, "1 <= m <= n"),
        (2, 1, 1, "g\\(c\\) <= f\\(c\\)"),
        (1, 3, 3, "n >= m"),
    ],
)
def test_precondition_errors(triangle, g, f, m, match):
    with pytest.raises(PreconditionError, match=match):
        check_gf_spanning_forest(triangle, ColorBounds.from_maps(triangle, g, f), m)


def test_bounds_must_cover_universe(triangle):
    with pytest.raises(PreconditionError):
        ColorBounds.from_maps(triangle, {}, 1)
    with pytest.raises(PreconditionError):
        ColorBounds.from_maps(triangle, {1: 0, 2: 0}, 1)
    with pytest.raises(PreconditionError):
        check_gf_spanning_forest(triangle, ColorBounds((0, 0), (1, 1)), 1)


def test_color_cap_refuses_large_instances():
    n = 12
    edges = [(i, j, f"c{k}") for k, (i, j) in enumerate(combinations(range(n), 2))][:30]
    graph = EdgeColoredGraph.from_edges(n, edges)
    with pytest.raises(InstanceTooLargeError):
        check_gf_spanning_forest(graph, ColorBounds.from_maps(graph), 1, max_colors=24)


def test_hetero_on_k4_with_small_color_classes():
    rng = random.Random(7)
    for _ in range(50):
        graph = complete_graph(4, [2, 2, 1, 1], rng=rng)
        assert check_heterochromatic_spanning_tree(graph).feasible


def test_mask_order_is_popcount_then_value():
    for k in range(7):
        masks = list(_masks_by_popcount(k))
        assert masks == sorted(range(1 << k), key=lambda x: (bin(x).count("1"), x))


def full_universe_first_violation(graph, bounds, m):
    k = graph.color_count
    for mask in sorted(range(1 << k), key=lambda x: (bin(x).count("1"), x)):
        removed = {c for c in range(k) if mask >> c & 1}
        omega = components_without(graph, removed)
        f_bound = m + sum(bounds.f[c] for c in removed)
        g_bound = graph.n - sum(bounds.g[c] for c in range(k) if c not in removed)
        if omega > min(f_bound, g_bound):
            return frozenset(graph.colors[c] for c in removed), omega, f_bound, g_bound
    return None


@settings(max_examples=200)
@given(instances())
def test_certificate_matches_full_universe_scan(instance):
    graph, bounds, m = instance
    verdict = check_gf_spanning_forest(graph, bounds, m)
    expected = full_universe_first_violation(graph, bounds, m)
    if expected is None:
        assert verdict.feasible
    else:
        cert = verdict.certificate
        assert (cert.R, cert.omega, cert.f_bound, cert.g_bound) == expected


@settings(max_examples=200)
@given(instances())
def test_checker_matches_enumeration(instance):
    graph, bounds, m = instance
    assert check_gf_spanning_forest(graph, bounds, m).feasible == brute_force_gf_exists(graph, bounds, m)


@settings(max_examples=200)
@given(instances())
def test_certificates_recheck_from_scratch(instance):
    graph, bounds, m = instance
    verdict = check_gf_spanning_forest(graph, bounds, m)
    if not verdict.feasible:
        cert = verdict.certificate
        omega, f_bound, g_bound = subset_terms(graph, bounds, m, cert.R)
        assert (omega, f_bound, g_bound) == (cert.omega, cert.f_bound, cert.g_bound)
        assert omega > min(f_bound, g_bound)


@given(instances())
def test_special_cases_are_gf_instances(instance):
    graph, bounds, m = instance
    hetero = check_heterochromatic_spanning_tree(graph)
    assert hetero == check_gf_spanning_forest(graph, ColorBounds.from_maps(graph, 0, 1), 1)
    f_only = check_f_spanning_forest(graph, bounds.upper(graph), m)
    assert f_only == check_gf_spanning_forest(graph, ColorBounds((0,) * len(bounds.f), bounds.f), m)


@given(instances())
def test_sufficient_condition_implies_feasible(instance):
    graph, bounds, m = instance
    if check_sufficient_condition(graph, bounds, m):
        assert check_gf_spanning_forest(graph, bounds, m).feasible


@given(instances())
def test_loosening_bounds_never_hurts(instance):
    graph, bounds, m = instance
    if not check_gf_spanning_forest(graph, bounds, m).feasible:
        return
    looser = ColorBounds(tuple(max(0, x - 1) for x in bounds.g), tuple(x + 1 for x in bounds.f))
    assert check_gf_spanning_forest(graph, looser, m).feasible


def test_sufficient_condition_examples(k6_7422):
    graph = k6_7422
    size = graph.n - 1
    g = {c: n * size // graph.edge_count for c, n in zip(graph.colors, graph.counts)}
    f = {c: -(-n * size // graph.edge_count) for c, n in zip(graph.colors, graph.counts)}
    assert g == {"1": 2, "2": 1, "3": 0, "4": 0}
    assert f == {"1": 3, "2": 2, "3": 1, "4": 1}
    assert check_sufficient_condition(graph, ColorBounds.from_maps(graph, g, f), 1)

    rng = random.Random(3)
    for _ in range(20):
        k = rng.randint(2, 8)
        kn = complete_graph(k, rng=rng)
        share = {c: kn.counts[i] * (k - 1) for i, c in enumerate(kn.colors)}
        lo = {c: v // kn.edge_count for c, v in share.items()}
        hi = {c: -(-v // kn.edge_count) for c, v in share.items()}
        assert check_sufficient_condition(kn, ColorBounds.from_maps(kn, lo, hi), 1)

    sparse = EdgeColoredGraph.from_edges(5, [(0, 1, "a"), (1, 2, "a"), (3, 4, "b")])
    assert not check_sufficient_condition(sparse, ColorBounds.from_maps(sparse), 1)


def test_sufficient_condition_on_empty_graph():
    empty = EdgeColoredGraph.from_edges(3, [], colors=["a"])
    assert not check_sufficient_condition(empty, ColorBounds.from_maps(empty, 0, 0), 3)
    assert not check_sufficient_condition(empty, ColorBounds.from_maps(empty, 0, 0), 1)


def test_random_graph_helper_respects_limits():
    rng = random.Random(0)
    for _ in range(100):
        graph = random_graph(rng)
        assert graph.n <= 8 and graph.edge_count <= 14 and graph.color_count <= 5
