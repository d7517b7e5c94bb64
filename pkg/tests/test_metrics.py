from __future__ import annotations

import random
from itertools import combinations

import pytest

from collabnet.errors import DegenerateComponent, EmptyNetwork
from collabnet.metrics import (
    avg_clustering,
    category_proportions,
    connected_components,
    degree_sequence,
    degree_table,
    density,
    giant_path_metrics,
    summarize,
)
from collabnet.network import CollabNetwork
from collabnet.taxonomy import Category

from conftest import make_network, random_graph_edges
from oracles import (
    clustering_naive,
    components_from_distances,
    distances_matrix_powers,
    giant_path_metrics_naive,
)

K3 = [(0, 1), (1, 2), (0, 2)]
P4 = [(0, 1), (1, 2), (2, 3)]
C5 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]


# --- closed-form spot checks ---------------------------------------------------

def test_triangle_summary():
    s = summarize(make_network(3, K3))
    assert s.density == 1.0
    assert s.avg_degree == 2.0
    assert s.avg_clustering == 1.0
    assert s.component_census == (3,)
    assert s.giant_avg_path_length == 1.0
    assert s.giant_diameter == 1


def test_path_graph_p4():
    net = make_network(4, P4)
    assert avg_clustering(net) == 0.0
    apl, diam = giant_path_metrics(net)
    assert apl == pytest.approx(10 / 6, abs=1e-12)
    assert diam == 3


def test_cycle_c5():
    apl, diam = giant_path_metrics(make_network(5, C5))
    assert apl == pytest.approx(1.5, abs=1e-12)
    assert diam == 2


def test_triangle_with_pendant_clustering():
    net = make_network(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
    assert avg_clustering(net) == pytest.approx(7 / 12, abs=1e-12)
    # excluding degree-<2 nodes drops only the pendant
    assert avg_clustering(net, include_low_degree=False) == pytest.approx(
        (1 + 1 + 1 / 3) / 3, abs=1e-12
    )


def test_star_clustering_zero():
    assert avg_clustering(make_network(4, [(0, 1), (0, 2), (0, 3)])) == 0.0


def test_degree_sequences():
    net = make_network(3, K3)
    assert degree_sequence(net) == [2, 2, 2]
    two = make_network(2, [(0, 1)], weights=[5])
    assert degree_sequence(two, weighted=True) == [5, 5]
    assert degree_sequence(two) == [1, 1]


def test_weighted_sequence_sorted_by_weight():
    # two disjoint edges: unweighted degrees tie, weighted values must not
    # inherit the unweighted (name-ordered) arrangement
    net = make_network(4, [(0, 1), (2, 3)], weights=[1, 9])
    assert degree_sequence(net, weighted=True) == [9, 9, 1, 1]
    assert degree_sequence(net) == [1, 1, 1, 1]


def test_degree_table_order_ties_by_name():
    net = make_network(3, [(0, 1), (1, 2)])
    rows = degree_table(net)
    assert rows[0][0] == "v01"  # degree 2 first
    assert [r[0] for r in rows[1:]] == ["v00", "v02"]  # tie -> name order


def test_components_disjoint_cliques():
    net = make_network(5, [(0, 1), (2, 3), (3, 4), (2, 4)])
    sizes = sorted(len(c) for c in connected_components(net))
    assert sizes == [2, 3]


def test_single_node_component():
    net = CollabNetwork.from_parts([("a", "A", Category.BUSINESS)], [])
    assert connected_components(net) == [{"a"}]
    with pytest.raises(DegenerateComponent):
        giant_path_metrics(net)


def test_paper_constant_consistency():
    """With n=1511 and m=4273 the summary must give the reported averages."""
    rng = random.Random(7)
    n, m = 1511, 4273
    edges = set()
    # ring for connectivity, then random fill to exactly m edges
    for i in range(n):
        edges.add((i, (i + 1) % n) if i < (i + 1) % n else ((i + 1) % n, i))
    while len(edges) < m:
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            edges.add((min(i, j), max(i, j)))
    net = make_network(n, sorted(edges))
    s = summarize(net)
    assert s.node_count == 1511
    assert s.edge_count == 4273
    assert s.density == pytest.approx(0.003746, abs=5e-7)
    assert s.avg_degree == pytest.approx(5.656, abs=5e-4)


# --- category proportions -------------------------------------------------------

def test_category_proportions_uniform():
    net = CollabNetwork.from_parts(
        [
            ("a", "A", Category.GOVERNMENT),
            ("b", "B", Category.GOVERNMENT),
            ("c", "C", Category.GOVERNMENT),
        ],
        [("a", "b", 1), ("b", "c", 1)],
    )
    props = category_proportions(net)
    assert props[Category.GOVERNMENT] == 1.0
    assert props[Category.BUSINESS] == 0.0
    assert abs(sum(props.values()) - 1.0) < 1e-12


def test_category_proportions_half():
    net = CollabNetwork.from_parts(
        [("a", "A", Category.BUSINESS), ("b", "B", Category.PNP)],
        [("a", "b", 1)],
    )
    props = category_proportions(net)
    assert props[Category.BUSINESS] == 0.5
    assert props[Category.PNP] == 0.5


def test_category_proportions_empty():
    net = CollabNetwork.from_parts([], [])
    with pytest.raises(EmptyNetwork):
        category_proportions(net)


# --- degenerate summaries ---------------------------------------------------------

def test_empty_network_summary():
    s = summarize(CollabNetwork.from_parts([], []))
    assert s.node_count == 0
    assert s.density == 0.0
    assert s.avg_degree is None
    assert s.giant_diameter is None
    assert s.component_census == ()
    assert s.category_proportions == {}


def test_density_single_node():
    assert density(CollabNetwork.from_parts([("a", "A", Category.PNP)], [])) == 0.0


# --- oracle equivalence -------------------------------------------------------------

def test_metrics_match_naive_oracles_on_random_graphs():
    rng = random.Random(20100)
    for trial in range(200):
        n = rng.randint(2, 12)
        edges = random_graph_edges(rng, n, 0.3)
        net = make_network(n, edges)
        nodes = net.nodes()
        named = [(f"v{i:02d}", f"v{j:02d}") for i, j in edges]

        comps = {frozenset(c) for c in connected_components(net)}
        assert comps == {
            frozenset(c) for c in components_from_distances(nodes, named)
        }, f"trial {trial}"

        assert avg_clustering(net) == pytest.approx(
            clustering_naive(nodes, named), abs=1e-12
        )

        giant = max(comps, key=len)
        if len(giant) >= 2:
            apl, diam = giant_path_metrics(net)
            apl_naive, diam_naive = giant_path_metrics_naive(nodes, named)
            assert diam == diam_naive
            assert apl == pytest.approx(apl_naive, abs=1e-12)


def test_monotonicity_adding_edge():
    """New edges never increase distances or the component count."""
    rng = random.Random(5150)
    for _ in range(40):
        n = rng.randint(3, 10)
        edges = random_graph_edges(rng, n, 0.25)
        net = make_network(n, edges)
        nodes = net.nodes()
        named = [(f"v{i:02d}", f"v{j:02d}") for i, j in edges]
        before_d = distances_matrix_powers(nodes, named)
        before_c = len(components_from_distances(nodes, named))

        candidates = [
            (i, j)
            for i, j in combinations(range(n), 2)
            if (i, j) not in set(edges)
        ]
        if not candidates:
            continue
        extra = candidates[rng.randrange(len(candidates))]
        named2 = named + [(f"v{extra[0]:02d}", f"v{extra[1]:02d}")]
        after_d = distances_matrix_powers(nodes, named2)
        after_c = len(components_from_distances(nodes, named2))

        assert after_c <= before_c
        for pair, d in before_d.items():
            assert after_d[pair] <= d
