from __future__ import annotations

import json
import random
from pathlib import Path

import pytest

from collabnet.ingest import ingest_records, load_mapping
from collabnet.network import CollabNetwork, build_network
from collabnet.taxonomy import Category

FIXTURE_DIR = Path(__file__).parent / "fixtures"
NZ_EDGES = FIXTURE_DIR / "nz" / "edges.csv"
NZ_NODES = FIXTURE_DIR / "nz" / "nodes.csv"

# AUT is a university; ESR and GNS are crown research institutes (government).
NZ_MINI_MAPPING = [
    ("AF-AUT", "aut", "AUT University", "HigherEducation"),
    ("AF-ESR", "esr", "ESR", "Government"),
    ("AF-GNS", "gns", "GNS Science", "Government"),
]


def write_mapping(path: Path, rows) -> Path:
    lines = ["affiliation_id,institution_id,institution_name,category"]
    lines += [",".join(row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_records(path: Path, records) -> Path:
    with path.open("w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")
    return path


def record(pub_id, authors, year=2012, subjects=()):
    """authors: list of (author_id, [affiliation_ids])."""
    return {
        "pub_id": pub_id,
        "year": year,
        "subjects": list(subjects),
        "authors": [
            {"author_id": a, "affiliation_ids": list(affs)} for a, affs in authors
        ],
    }


@pytest.fixture
def mini_corpus_files(tmp_path):
    """One publication with authors at AUT, ESR and GNS."""
    mapping = write_mapping(tmp_path / "mapping.csv", NZ_MINI_MAPPING)
    records = write_records(
        tmp_path / "records.jsonl",
        [record("p1", [("a1", ["AF-AUT"]), ("a2", ["AF-ESR"]), ("a3", ["AF-GNS"])])],
    )
    return records, mapping


@pytest.fixture
def mini_network(mini_corpus_files):
    records, mapping = mini_corpus_files
    registry = load_mapping(mapping)
    corpus = ingest_records(records, registry)
    return build_network(corpus, registry)


def build_from_files(records_path, mapping_path, **kwargs) -> CollabNetwork:
    registry = load_mapping(mapping_path)
    corpus = ingest_records(records_path, registry, kwargs.pop("year_range", (2010, 2015)))
    return build_network(corpus, registry, **kwargs)


_CATS = list(Category)


def make_network(n_nodes: int, edges, weights=None) -> CollabNetwork:
    """Small test network: nodes v00..v<n>, categories cycled."""
    nodes = [
        (f"v{i:02d}", f"Institution {i:02d}", _CATS[i % 4]) for i in range(n_nodes)
    ]
    edge_list = []
    for k, (i, j) in enumerate(edges):
        w = 1 if weights is None else weights[k]
        edge_list.append((f"v{i:02d}", f"v{j:02d}", w))
    return CollabNetwork.from_parts(nodes, edge_list)


def random_graph_edges(rng: random.Random, n: int, p: float):
    """Erdos-Renyi style index pairs."""
    return [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]


def random_connected_weighted(rng: random.Random, n: int, extra_p: float = 0.3):
    """Random spanning tree plus extra edges; integer weights in [1, 10]."""
    edges = set()
    for j in range(1, n):
        edges.add((rng.randrange(j), j))
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in edges and rng.random() < extra_p:
                edges.add((i, j))
    edges = sorted(edges)
    weights = [rng.randint(1, 10) for _ in edges]
    return edges, weights


def nz_fixture_available() -> bool:
    return NZ_EDGES.exists() and NZ_NODES.exists()
