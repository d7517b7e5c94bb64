from __future__ import annotations

import json

import pytest

from collabnet import centrality as centrality_mod
from collabnet import exports, metrics
from collabnet.cli import run
from collabnet.facets import category_facets, write_facet_csv
from collabnet.ingest import ingest_records, load_mapping
from collabnet.network import build_network, ego_subgraph

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


@pytest.fixture
def built(tmp_path, mini_corpus_files):
    """CLI-built edge/node CSVs plus the paths used to build them."""
    records, mapping = mini_corpus_files
    edges, nodes = tmp_path / "edges.csv", tmp_path / "nodes.csv"
    assert run([
        "build", "--records", str(records), "--mapping", str(mapping),
        "--out-edges", str(edges), "--out-nodes", str(nodes),
    ]) == 0
    return records, mapping, edges, nodes


# --- exit codes -------------------------------------------------------------

def test_no_arguments_usage_error(capsys):
    assert run([]) == 2
    assert "usage" in capsys.readouterr().err.lower()


def test_unknown_flag_usage_error():
    assert run(["stats", "--bogus"]) == 2


def test_unknown_command_usage_error():
    assert run(["frobnicate"]) == 2


def test_missing_input_file_is_data_error(tmp_path, capsys):
    code = run(["stats", "--edges", str(tmp_path / "no.csv"),
                "--nodes", str(tmp_path / "no2.csv")])
    assert code == 1
    assert "error[" in capsys.readouterr().err


def test_both_input_modes_rejected(built, capsys):
    records, mapping, edges, nodes = built
    code = run(["stats", "--edges", str(edges), "--nodes", str(nodes),
                "--records", str(records), "--mapping", str(mapping)])
    assert code == 2
    assert "error[usage]" in capsys.readouterr().err


def test_subject_facets_from_csv_is_data_error(built, capsys):
    _, _, edges, nodes = built
    code = run(["facets", "--edges", str(edges), "--nodes", str(nodes),
                "--by", "subject"])
    assert code == 1
    assert "SubjectsUnavailable" in capsys.readouterr().err


# --- ingest ---------------------------------------------------------------------

def test_ingest_summary_and_outputs(tmp_path, mini_corpus_files, capsys):
    records, mapping = mini_corpus_files
    clean = tmp_path / "clean.jsonl"
    log = tmp_path / "excl.csv"
    assert run(["ingest", "--records", str(records), "--mapping", str(mapping),
                "--out", str(clean), "--exclusions", str(log)]) == 0
    out = capsys.readouterr().out
    assert "records: 1" in out
    assert "institutions: 3" in out
    assert "authors: 3" in out
    assert "institutions[Government]: 2" in out
    assert clean.exists()
    assert log.read_text().splitlines()[0] == "reason,count"


# --- stats -----------------------------------------------------------------------

def test_stats_json_matches_library(built, capsys):
    records, mapping, edges, nodes = built
    assert run(["stats", "--edges", str(edges), "--nodes", str(nodes),
                "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema_version"] == "1"

    registry = load_mapping(mapping)
    corpus = ingest_records(records, registry)
    expected = metrics.summarize(build_network(corpus, registry)).to_json_dict()
    assert payload == expected


def test_stats_human_output(built, capsys):
    _, _, edges, nodes = built
    assert run(["stats", "--edges", str(edges), "--nodes", str(nodes)]) == 0
    out = capsys.readouterr().out
    assert "nodes: 3" in out
    assert "edges: 3" in out
    assert "density: 1.000000" in out
    assert "avg clustering: 1.00" in out


def test_stats_degrees_csv_and_fig(built, tmp_path, capsys):
    _, _, edges, nodes = built
    degrees = tmp_path / "deg.csv"
    fig = tmp_path / "deg.png"
    assert run(["stats", "--edges", str(edges), "--nodes", str(nodes),
                "--degrees-out", str(degrees), "--fig", str(fig)]) == 0
    lines = degrees.read_text().splitlines()
    assert lines[0] == "institution,degree,weighted_degree"
    assert len(lines) == 4
    assert fig.read_bytes()[:8] == PNG_MAGIC


def test_stats_clustering_convention_flag(built, capsys):
    _, _, edges, nodes = built
    assert run(["--clustering-exclude-low-degree", "stats",
                "--edges", str(edges), "--nodes", str(nodes), "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["avg_clustering"] == 1.0


def test_stats_power_law_error_reported(built, capsys):
    _, _, edges, nodes = built
    assert run(["stats", "--edges", str(edges), "--nodes", str(nodes),
                "--power-law", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert "error" in payload["power_law"]  # 3 observations: no fittable tail


# --- centrality -------------------------------------------------------------------

def test_centrality_csv_matches_library(built, tmp_path):
    records, mapping, edges, nodes = built
    out = tmp_path / "rank.csv"
    assert run(["centrality", "--edges", str(edges), "--nodes", str(nodes),
                "--measure", "weighted-degree", "--top", "2",
                "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "rank,institution_id,name,category,score"
    registry = load_mapping(mapping)
    corpus = ingest_records(records, registry)
    net = build_network(corpus, registry)
    expected = centrality_mod.top_k(centrality_mod.degree_centrality(net, weighted=True), 2)
    got = [(row.split(",")[1], float(row.split(",")[4])) for row in lines[1:]]
    assert got == [(inst, score) for inst, score in expected]


def test_centrality_stdout_and_fig(built, tmp_path, capsys):
    _, _, edges, nodes = built
    fig = tmp_path / "rank.png"
    assert run(["centrality", "--edges", str(edges), "--nodes", str(nodes),
                "--measure", "betweenness", "--fig", str(fig)]) == 0
    out = capsys.readouterr().out
    assert "measure: betweenness" in out
    assert fig.read_bytes()[:8] == PNG_MAGIC


def test_weighted_betweenness_global_flag_equivalent(built, capsys):
    _, _, edges, nodes = built
    assert run(["--weighted-betweenness", "centrality", "--edges", str(edges),
                "--nodes", str(nodes), "--measure", "betweenness"]) == 0
    a = capsys.readouterr().out
    assert run(["centrality", "--edges", str(edges), "--nodes", str(nodes),
                "--measure", "betweenness", "--weighted"]) == 0
    b = capsys.readouterr().out
    assert a == b


def test_centrality_eigenvector_runs(built, capsys):
    _, _, edges, nodes = built
    assert run(["centrality", "--edges", str(edges), "--nodes", str(nodes),
                "--measure", "eigenvector"]) == 0
    assert "1.0000" in capsys.readouterr().out


# --- ego -----------------------------------------------------------------------------

def test_ego_by_name_writes_gexf(built, tmp_path, capsys):
    records, mapping, edges, nodes = built
    out = tmp_path / "ego.gexf"
    assert run(["ego", "--edges", str(edges), "--nodes", str(nodes),
                "--center", "AUT University", "--out", str(out)]) == 0
    assert "ego[aut]" in capsys.readouterr().out

    registry = load_mapping(mapping)
    corpus = ingest_records(records, registry)
    net = build_network(corpus, registry)
    assert exports.read_gexf(out) == ego_subgraph(net, "aut").network


def test_ego_unknown_center(built, capsys):
    _, _, edges, nodes = built
    assert run(["ego", "--edges", str(edges), "--nodes", str(nodes),
                "--center", "Nowhere", "--out", "x.gexf"]) == 1
    assert "UnknownInstitution" in capsys.readouterr().err


# --- facets ------------------------------------------------------------------------

def test_facets_csv_matches_library(built, tmp_path):
    records, mapping, edges, nodes = built
    out = tmp_path / "facets.csv"
    assert run(["facets", "--edges", str(edges), "--nodes", str(nodes),
                "--by", "category", "--out", str(out)]) == 0

    registry = load_mapping(mapping)
    corpus = ingest_records(records, registry)
    net = build_network(corpus, registry)
    focus = sorted(net.nodes(), key=net.name)
    expected = tmp_path / "expected.csv"
    write_facet_csv(category_facets(net, focus), expected)
    assert out.read_bytes() == expected.read_bytes()


def test_filter_subject_option(tmp_path, capsys):
    from conftest import NZ_MINI_MAPPING, record, write_mapping, write_records

    mapping = write_mapping(tmp_path / "m.csv", NZ_MINI_MAPPING)
    records = write_records(
        tmp_path / "r.jsonl",
        [
            record("p1", [("a1", ["AF-AUT"]), ("a2", ["AF-ESR"])],
                   subjects=["Medicine"]),
            record("p2", [("a3", ["AF-ESR"]), ("a4", ["AF-GNS"])],
                   subjects=["Energy"]),
        ],
    )
    assert run(["--quiet", "stats", "--records", str(records),
                "--mapping", str(mapping), "--filter-subject", "Medicine",
                "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["node_count"] == 2 and payload["edge_count"] == 1
    # unknown class is a data error
    assert run(["--quiet", "stats", "--records", str(records),
                "--mapping", str(mapping), "--filter-subject", "Astrology"]) == 1
    assert "UnknownSubject" in capsys.readouterr().err


def test_facets_subject_from_records(tmp_path, mini_corpus_files, capsys):
    records, mapping = mini_corpus_files
    fig = tmp_path / "subj.png"
    assert run(["facets", "--records", str(records), "--mapping", str(mapping),
                "--subjects", "--by", "subject", "--fig", str(fig)]) == 0
    assert fig.read_bytes()[:8] == PNG_MAGIC


def test_facets_focus_file(built, tmp_path, capsys):
    _, _, edges, nodes = built
    focus = tmp_path / "focus.txt"
    focus.write_text("ESR\n")
    assert run(["facets", "--edges", str(edges), "--nodes", str(nodes),
                "--by", "category", "--focus", str(focus), "--fig-value", "count"]) == 0
    out = capsys.readouterr().out
    assert "esr,Government,1" in out
    assert "aut," not in out


# --- synth / export ----------------------------------------------------------------

def test_synth_cli_deterministic(tmp_path):
    for sub in ("a", "b"):
        assert run(["synth", "--seed", "11", "--pubs", "30", "--inst", "4,3,2,1",
                    "--bias", "0.5", "--out-dir", str(tmp_path / sub)]) == 0
    assert (tmp_path / "a" / "records.jsonl").read_bytes() == (
        tmp_path / "b" / "records.jsonl"
    ).read_bytes()


def test_synth_pipeline_through_cli(tmp_path, capsys):
    assert run(["synth", "--seed", "5", "--pubs", "40", "--inst", "5,5,5,5",
                "--out-dir", str(tmp_path)]) == 0
    capsys.readouterr()
    assert run(["--quiet", "stats",
                "--records", str(tmp_path / "records.jsonl"),
                "--mapping", str(tmp_path / "mapping.csv"), "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["node_count"] > 0


def test_export_formats(built, tmp_path):
    _, _, edges, nodes = built
    for fmt, name in (("gexf", "n.gexf"), ("dot", "n.dot"), ("json", "n.json")):
        assert run(["export", "--edges", str(edges), "--nodes", str(nodes),
                    "--format", fmt, "--out", str(tmp_path / name)]) == 0
        assert (tmp_path / name).exists()
    assert run(["export", "--edges", str(edges), "--nodes", str(nodes),
                "--format", "csv", "--out", str(tmp_path / "csvdir")]) == 0
    assert (tmp_path / "csvdir" / "edges.csv").read_bytes() == edges.read_bytes()
    assert (tmp_path / "csvdir" / "nodes.csv").read_bytes() == nodes.read_bytes()


def test_build_gexf_alongside(tmp_path, mini_corpus_files):
    records, mapping = mini_corpus_files
    gexf = tmp_path / "net.gexf"
    assert run(["build", "--records", str(records), "--mapping", str(mapping),
                "--out-edges", str(tmp_path / "e.csv"),
                "--out-nodes", str(tmp_path / "n.csv"),
                "--gexf", str(gexf)]) == 0
    assert gexf.exists()


def test_include_isolates_global_flag(tmp_path, mini_corpus_files):
    from conftest import record, write_records

    records, mapping = mini_corpus_files
    extra = write_records(
        tmp_path / "extra.jsonl",
        [
            record("p1", [("a1", ["AF-AUT"]), ("a2", ["AF-ESR"])]),
            record("p2", [("solo", ["AF-GNS"])]),
        ],
    )
    out_e, out_n = tmp_path / "e.csv", tmp_path / "n.csv"
    assert run(["--include-isolates", "build", "--records", str(extra),
                "--mapping", str(mapping),
                "--out-edges", str(out_e), "--out-nodes", str(out_n)]) == 0
    assert "gns" in out_n.read_text()
