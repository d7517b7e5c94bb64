"""Build and query the weighted institution collaboration network.

Counting semantics
------------------
Edge weights count joint publications, not author pairs. For a publication
``P`` and an unordered institution pair ``{I, J}``, the pair's weight grows
by exactly 1 iff there exist two *distinct* authors ``a != b`` of ``P`` with
``I`` among ``a``'s institutions and ``J`` among ``b``'s. Consequences:

* a publication whose three authors sit at three institutions counts once
  for each of the three pairs;
* a single author affiliated to two institutions creates no edge on their
  own (no self-collaboration through multi-affiliation);
* a multi-affiliated author plus an independent second author does credit
  the pair, because two distinct people evidence it;
* no publication can add more than 1 to any single pair.

Institutions that appear in the corpus but never co-publish are included as
degree-0 nodes only on request (``include_isolates``); by default the
network contains collaborating institutions only.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .errors import SubjectsUnavailable, UnknownInstitution, UnknownSubject
from .ingest import CleanCorpus, InstitutionRegistry
from .taxonomy import ASJC_SET, CATEGORY_ORDER, Category


class CollabNetwork:
    """Weighted undirected institution graph.

    Nodes carry ``name`` and ``category``; edges carry an integer ``weight``
    (>= 1) and, when built with subjects, a ``subjects`` dict mapping
    subject class -> per-subject publication count (each <= weight).
    Instances are treated as immutable once built; all analytics are
    read-only and safe to share.
    """

    def __init__(self, graph: nx.Graph, has_subjects: bool = False):
        self._g = graph
        self.has_subjects = has_subjects

    # -- construction ----------------------------------------------------

    @classmethod
    def from_parts(cls, nodes, edges, has_subjects: bool = False) -> "CollabNetwork":
        """Assemble a network from explicit parts.

        ``nodes``: iterable of (institution_id, name, Category).
        ``edges``: iterable of (a, b, weight) or (a, b, weight, subjects).
        """
        g = nx.Graph()
        for inst_id, name, category in nodes:
            g.add_node(inst_id, name=name, category=Category(category))
        for edge in edges:
            a, b, weight = edge[0], edge[1], edge[2]
            subjects = edge[3] if len(edge) > 3 else None
            if a == b:
                raise ValueError(f"self-loop on {a!r}")
            if weight < 1:
                raise ValueError(f"edge {a!r}-{b!r} has weight {weight} < 1")
            if a not in g or b not in g:
                missing = a if a not in g else b
                raise UnknownInstitution(f"edge endpoint {missing!r} not in node list")
            attrs = {"weight": int(weight)}
            if subjects:
                attrs["subjects"] = dict(subjects)
            g.add_edge(a, b, **attrs)
        return cls(g, has_subjects=has_subjects)

    # -- node/edge access --------------------------------------------------

    @property
    def graph(self) -> nx.Graph:
        return self._g

    @property
    def node_count(self) -> int:
        return self._g.number_of_nodes()

    @property
    def edge_count(self) -> int:
        return self._g.number_of_edges()

    def nodes(self) -> list[str]:
        return list(self._g.nodes)

    def __contains__(self, inst_id: str) -> bool:
        return inst_id in self._g

    def name(self, inst_id: str) -> str:
        self._require(inst_id)
        return self._g.nodes[inst_id]["name"]

    def category(self, inst_id: str) -> Category:
        self._require(inst_id)
        return self._g.nodes[inst_id]["category"]

    def neighbors(self, inst_id: str) -> list[str]:
        self._require(inst_id)
        return list(self._g.neighbors(inst_id))

    def weight(self, a: str, b: str) -> int:
        return self._g.edges[a, b]["weight"]

    def edge_subjects(self, a: str, b: str) -> dict[str, int]:
        if not self.has_subjects:
            raise SubjectsUnavailable("network built without subject breakdowns")
        return dict(self._g.edges[a, b].get("subjects", {}))

    def edges(self):
        """Iterate (a, b, weight) with a < b lexicographically."""
        for u, v, w in self._g.edges(data="weight"):
            a, b = (u, v) if u < v else (v, u)
            yield a, b, w

    def degree(self, inst_id: str) -> int:
        self._require(inst_id)
        return self._g.degree[inst_id]

    def weighted_degree(self, inst_id: str) -> int:
        self._require(inst_id)
        return int(self._g.degree(weight="weight")[inst_id])

    def _require(self, inst_id: str) -> None:
        if inst_id not in self._g:
            raise UnknownInstitution(f"institution {inst_id!r} not in network")

    # -- equality / canonical form ----------------------------------------

    def canonical_form(self) -> tuple:
        """Deterministic (nodes, weighted edges) tuple; ignores subjects."""
        nodes = tuple(
            sorted(
                (n, d["name"], d["category"].value)
                for n, d in self._g.nodes(data=True)
            )
        )
        edges = tuple(sorted(self.edges()))
        return nodes, edges

    def __eq__(self, other) -> bool:
        if not isinstance(other, CollabNetwork):
            return NotImplemented
        if self.canonical_form() != other.canonical_form():
            return False
        mine = {tuple(sorted((a, b))): self._g.edges[a, b].get("subjects") for a, b, _ in self.edges()}
        theirs = {tuple(sorted((a, b))): other._g.edges[a, b].get("subjects") for a, b, _ in other.edges()}
        return mine == theirs

    def __hash__(self):  # pragma: no cover - networks are not dict keys
        return hash(self.canonical_form())


def build_network(
    corpus: CleanCorpus,
    registry: InstitutionRegistry,
    with_subjects: bool = False,
    include_isolates: bool = False,
) -> CollabNetwork:
    """Count joint publications per institution pair (see module docstring)."""
    g = nx.Graph()
    seen_institutions: set[str] = set()

    for rec in corpus.records:
        inst_authors: dict[str, set[str]] = {}
        for authorship in rec.authorships:
            for inst in authorship.institutions:
                inst_authors.setdefault(inst, set()).add(authorship.author_id)
        seen_institutions.update(inst_authors)

        for i, j in combinations(sorted(inst_authors), 2):
            # Two distinct authors must span the pair; a lone multi-affiliated
            # author has |A_i | A_j| == 1 and contributes nothing.
            if len(inst_authors[i] | inst_authors[j]) < 2:
                continue
            if g.has_edge(i, j):
                g.edges[i, j]["weight"] += 1
            else:
                g.add_edge(i, j, weight=1)
                if with_subjects:
                    g.edges[i, j]["subjects"] = {}
            if with_subjects:
                breakdown = g.edges[i, j]["subjects"]
                for subject in rec.subjects:
                    breakdown[subject] = breakdown.get(subject, 0) + 1

    if include_isolates:
        g.add_nodes_from(sorted(seen_institutions))

    for inst_id in g.nodes:
        try:
            info = registry.institutions[inst_id]
        except KeyError:
            raise UnknownInstitution(
                f"corpus references {inst_id!r}, absent from registry"
            ) from None
        g.nodes[inst_id]["name"] = info.name
        g.nodes[inst_id]["category"] = info.category

    return CollabNetwork(g, has_subjects=with_subjects)


def aggregate_by_category(
    network: CollabNetwork, institution: str
) -> dict[Category, int]:
    """Split an institution's collaboration records by counterpart category.

    The four values always sum to the institution's weighted degree.
    """
    network._require(institution)
    totals = {cat: 0 for cat in CATEGORY_ORDER}
    for neighbor in network.graph.neighbors(institution):
        totals[network.category(neighbor)] += network.weight(institution, neighbor)
    return totals


@dataclass(frozen=True)
class EgoSubgraph:
    """A focal institution, its neighbours, and all edges among them."""

    center: str
    network: CollabNetwork

    @property
    def members(self) -> frozenset[str]:
        return frozenset(self.network.nodes())


def ego_subgraph(network: CollabNetwork, center: str) -> EgoSubgraph:
    """Induced subgraph over a node and its neighbours (not just the star)."""
    network._require(center)
    members = {center, *network.graph.neighbors(center)}
    sub = nx.Graph(network.graph.subgraph(members))
    return EgoSubgraph(center, CollabNetwork(sub, has_subjects=network.has_subjects))


def filter_by_subject(network: CollabNetwork, subject: str) -> CollabNetwork:
    """Restrict the network to one subject class.

    Edge weights become that subject's per-edge counts; edges without the
    subject, and nodes isolated by their removal, are dropped. Requires a
    network built with ``with_subjects=True``.
    """
    if subject not in ASJC_SET:
        raise UnknownSubject(f"{subject!r} is not a canonical subject class")
    if not network.has_subjects:
        raise SubjectsUnavailable("network built without subject breakdowns")

    g = nx.Graph()
    src = network.graph
    for u, v, data in src.edges(data=True):
        count = data.get("subjects", {}).get(subject, 0)
        if count > 0:
            g.add_edge(u, v, weight=count, subjects={subject: count})
    for node in g.nodes:
        g.nodes[node].update(
            name=src.nodes[node]["name"], category=src.nodes[node]["category"]
        )
    return CollabNetwork(g, has_subjects=True)
