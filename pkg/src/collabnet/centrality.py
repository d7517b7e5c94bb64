"""Node centrality: betweenness, eigenvector, and (weighted) degree.

Betweenness uses Brandes' single-source accumulation over all sources; by
default paths are hop counts and scores are raw unordered-pair counts. With
``weighted=True`` an edge of weight ``w`` is traversed at distance ``1/w``,
so stronger collaborations are shorter.

Eigenvector centrality is the principal eigenvector of the weighted
adjacency, computed by power iteration and max-normalized so the most
central node scores exactly 1. It is component-local, so the computation is
restricted to the largest component; nodes outside it score 0 (a warning is
logged when any exist). Iteration starts from the uniform positive vector
and stops once successive max-normalized iterates differ by less than
``tol`` in max-norm. Bipartite-like structures make the plain iteration
oscillate between two accumulation points, so after 1000 non-converging
iterations updates switch to the damped form ``x <- (x + A x / ||A x||)/2``,
which shifts the offending eigenvalue away and restores convergence while
leaving the fixed point unchanged.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np
import scipy.sparse as sp

from .errors import NoConvergence
from .metrics import connected_components
from .network import CollabNetwork

log = logging.getLogger(__name__)

MAX_ITER = 10000
DAMPING_AFTER = 1000
TOL = 1e-10


@dataclass(frozen=True)
class CentralityReport:
    measure: str
    scores: dict[str, float]
    normalization: str
    #: every node, ordered by score descending then institution name ascending
    ranking: tuple[tuple[str, float], ...]


def _make_report(
    network: CollabNetwork, measure: str, scores: dict[str, float], normalization: str
) -> CentralityReport:
    ranking = tuple(
        sorted(
            scores.items(),
            key=lambda kv: (-kv[1], network.name(kv[0]), kv[0]),
        )
    )
    return CentralityReport(measure, scores, normalization, ranking)


def top_k(report: CentralityReport, k: int) -> list[tuple[str, float]]:
    """First min(k, n) entries of the report's ranking."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return list(report.ranking[:k])


def betweenness(
    network: CollabNetwork, weighted: bool = False, normalized: bool = False
) -> CentralityReport:
    """Exact Brandes betweenness; each unordered pair is counted once."""
    if weighted:
        g = nx.Graph()
        g.add_nodes_from(network.graph.nodes)
        for u, v, w in network.graph.edges(data="weight"):
            g.add_edge(u, v, dist=1.0 / w)
        raw = nx.betweenness_centrality(g, normalized=normalized, weight="dist")
    else:
        raw = nx.betweenness_centrality(network.graph, normalized=normalized)
    scores = {v: float(s) for v, s in raw.items()}
    descr = "pairs / ((n-1)(n-2)/2)" if normalized else "raw unordered pair counts"
    if weighted:
        descr += ", distances 1/weight"
    return _make_report(network, "betweenness", scores, descr)


def eigenvector(
    network: CollabNetwork,
    tol: float = TOL,
    max_iter: int = MAX_ITER,
    damping_after: int = DAMPING_AFTER,
) -> CentralityReport:
    """Weighted eigenvector centrality on the largest component (max = 1)."""
    scores = {v: 0.0 for v in network.nodes()}
    comps = connected_components(network) if network.node_count else []
    if comps and len(comps) > 1:
        outside = sum(len(c) for c in comps[1:])
        log.warning(
            "eigenvector centrality is component-local: %d node(s) outside "
            "the largest component score 0",
            outside,
        )

    giant = sorted(comps[0]) if comps else []
    if len(giant) >= 2:
        index = {v: i for i, v in enumerate(giant)}
        rows, cols, vals = [], [], []
        for u, v, w in network.graph.subgraph(giant).edges(data="weight"):
            i, j = index[u], index[v]
            rows += [i, j]
            cols += [j, i]
            vals += [float(w), float(w)]
        a = sp.csr_matrix((vals, (rows, cols)), shape=(len(giant), len(giant)))

        x = np.ones(len(giant))
        converged = False
        for iteration in range(1, max_iter + 1):
            y = a @ x
            y /= y.max()
            defect = float(np.max(np.abs(y - x)))
            if defect < tol:
                x = y
                converged = True
                break
            if iteration >= damping_after:
                x = 0.5 * x + 0.5 * y
                x /= x.max()
            else:
                x = y
        if not converged:
            y = a @ x
            lam = float(x @ y / (x @ x))
            raise NoConvergence(max_iter, float(np.max(np.abs(y - lam * x))))

        for v, i in index.items():
            scores[v] = float(x[i])
    elif giant:
        # a 1-node "giant" component has no collaboration structure at all
        log.warning("largest component is a single node; all scores are 0")

    return _make_report(network, "eigenvector", scores, "max score = 1")


def degree_centrality(network: CollabNetwork, weighted: bool = False) -> CentralityReport:
    """Raw degree (collaborator count) or weighted degree (record count)."""
    if weighted:
        scores = {v: float(network.weighted_degree(v)) for v in network.nodes()}
        return _make_report(network, "weighted_degree", scores, "raw collaboration records")
    scores = {v: float(network.degree(v)) for v in network.nodes()}
    return _make_report(network, "degree", scores, "raw collaborator counts")
