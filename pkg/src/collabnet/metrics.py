"""Whole-network statistics: density, degrees, clustering, components, paths."""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx
import numpy as np
from scipy.sparse.csgraph import shortest_path

from .errors import DegenerateComponent, EmptyNetwork
from .network import CollabNetwork
from .taxonomy import CATEGORY_ORDER, Category


@dataclass(frozen=True)
class NetworkSummary:
    """Statistics bundle; fields that are undefined on degenerate input are None."""

    node_count: int
    edge_count: int
    density: float
    avg_degree: float | None
    avg_weighted_degree: float | None
    avg_clustering: float | None
    component_census: tuple[int, ...]  # component sizes, largest first
    giant_avg_path_length: float | None
    giant_diameter: int | None
    category_proportions: dict[str, float]

    def to_json_dict(self) -> dict:
        return {
            "schema_version": "1",
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "density": self.density,
            "avg_degree": self.avg_degree,
            "avg_weighted_degree": self.avg_weighted_degree,
            "avg_clustering": self.avg_clustering,
            "component_census": list(self.component_census),
            "giant_avg_path_length": self.giant_avg_path_length,
            "giant_diameter": self.giant_diameter,
            "category_proportions": self.category_proportions,
        }


def density(network: CollabNetwork) -> float:
    n, m = network.node_count, network.edge_count
    if n <= 1:
        return 0.0
    return 2.0 * m / (n * (n - 1))


def degree_sequence(network: CollabNetwork, weighted: bool = False) -> list[int]:
    """Degrees in descending order; ties resolved by institution name."""
    deg = network.weighted_degree if weighted else network.degree
    rows = sorted(
        ((deg(v), network.name(v), v) for v in network.nodes()),
        key=lambda r: (-r[0], r[1], r[2]),
    )
    return [r[0] for r in rows]


def degree_table(network: CollabNetwork) -> list[tuple[str, int, int]]:
    """(institution, degree, weighted_degree) rows, degree-descending, name-ascending."""
    rows = [
        (inst, network.degree(inst), network.weighted_degree(inst))
        for inst in network.nodes()
    ]
    rows.sort(key=lambda r: (-r[1], network.name(r[0]), r[0]))
    return rows


def connected_components(network: CollabNetwork) -> list[set[str]]:
    """Node partition into components, largest first (ties by smallest member)."""
    comps = [set(c) for c in nx.connected_components(network.graph)]
    comps.sort(key=lambda c: (-len(c), min(c)))
    return comps


def avg_clustering(network: CollabNetwork, include_low_degree: bool = True) -> float:
    """Mean local clustering coefficient, unweighted.

    Nodes of degree < 2 have coefficient 0 and are included in the mean by
    default; ``include_low_degree=False`` averages over degree >= 2 nodes
    only (the convention toggle for matching externally reported values).
    """
    if network.node_count == 0:
        return 0.0
    try:
        return nx.average_clustering(network.graph, count_zeros=include_low_degree)
    except ZeroDivisionError:
        return 0.0  # every node below degree 2 while excluding them


def giant_component(network: CollabNetwork) -> set[str]:
    comps = connected_components(network)
    if not comps:
        raise EmptyNetwork("no nodes")
    return comps[0]


def giant_path_metrics(network: CollabNetwork) -> tuple[float, int]:
    """(average path length, diameter) by hop count over the largest component.

    Averages unweighted BFS distances over unordered node pairs within the
    component; raises DegenerateComponent when it has fewer than two nodes.
    """
    giant = sorted(giant_component(network)) if network.node_count else []
    if len(giant) < 2:
        raise DegenerateComponent(
            f"largest component has {len(giant)} node(s); need >= 2"
        )
    adj = nx.to_scipy_sparse_array(
        network.graph.subgraph(giant), nodelist=giant, weight=None, format="csr"
    )
    dist = shortest_path(adj, method="D", unweighted=True, directed=False)
    k = len(giant)
    pairs = k * (k - 1) // 2
    # the distance matrix counts each unordered pair twice
    return float(dist.sum() / 2) / pairs, int(np.max(dist))


def category_proportions(network: CollabNetwork) -> dict[Category, float]:
    """Node-count share per category; keys cover all four categories."""
    n = network.node_count
    if n == 0:
        raise EmptyNetwork("no nodes")
    counts = {cat: 0 for cat in CATEGORY_ORDER}
    for inst in network.nodes():
        counts[network.category(inst)] += 1
    return {cat: counts[cat] / n for cat in CATEGORY_ORDER}


def summarize(
    network: CollabNetwork, clustering_include_low_degree: bool = True
) -> NetworkSummary:
    """Compute the full statistics bundle for a network."""
    n, m = network.node_count, network.edge_count
    comps = connected_components(network)
    census = tuple(len(c) for c in comps)

    if n == 0:
        return NetworkSummary(
            node_count=0,
            edge_count=0,
            density=0.0,
            avg_degree=None,
            avg_weighted_degree=None,
            avg_clustering=None,
            component_census=(),
            giant_avg_path_length=None,
            giant_diameter=None,
            category_proportions={},
        )

    avg_deg = 2.0 * m / n
    avg_wdeg = sum(network.weighted_degree(v) for v in network.nodes()) / n

    if census and census[0] >= 2:
        apl, diam = giant_path_metrics(network)
    else:
        apl, diam = None, None

    return NetworkSummary(
        node_count=n,
        edge_count=m,
        density=density(network),
        avg_degree=avg_deg,
        avg_weighted_degree=avg_wdeg,
        avg_clustering=avg_clustering(network, clustering_include_low_degree),
        component_census=census,
        giant_avg_path_length=apl,
        giant_diameter=diam,
        category_proportions={
            cat.value: share for cat, share in category_proportions(network).items()
        },
    )
