"""Command-line interface tying the pipeline together.

Subcommands: ingest, build, stats, centrality, ego, facets, synth, export.
Analysis commands read a network either from the canonical edge/node CSV
pair (``--edges``/``--nodes``) or straight from records + mapping files
(``--records``/``--mapping``). Exit status: 0 success, 1 data error,
2 usage error. All randomness is seeded through flags; outputs carry no
timestamps.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import centrality as centrality_mod
from . import exports, facets as facets_mod, metrics, plots
from .errors import CollabNetError
from .ingest import (
    DEFAULT_YEAR_RANGE,
    corpus_summary,
    export_corpus,
    ingest_records,
    load_mapping,
    write_exclusion_log,
)
from .network import CollabNetwork, build_network, ego_subgraph, filter_by_subject
from .powerlaw import fit_power_law
from .synth import SynthConfig, generate
from .taxonomy import CATEGORY_ORDER

log = logging.getLogger(__name__)


def _year_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected MIN:MAX (e.g. 2010:2015), got {text!r}"
        ) from None


def _int_pair(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX, got {text!r}") from None


def _int_quad(text: str) -> tuple[int, int, int, int]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(
            f"expected four comma-separated counts B,P,G,H, got {text!r}"
        )
    try:
        return tuple(int(p) for p in parts)  # type: ignore[return-value]
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-integer count in {text!r}") from None


@dataclass
class RunConfig:
    """Resolved common options shared by the analysis subcommands."""

    quiet: bool = False
    threads: int = 1  # reserved; analytics currently run single-process
    include_isolates: bool = False
    clustering_exclude_low_degree: bool = False
    weighted_betweenness: bool = False


def _global_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                   help="suppress informational logging")
    g.add_argument("--threads", type=int, metavar="N", default=argparse.SUPPRESS,
                   help="worker hint (reserved; current analytics are single-process)")
    g.add_argument("--include-isolates", action="store_true", default=argparse.SUPPRESS,
                   help="keep degree-0 institutions when building from records")
    g.add_argument("--clustering-exclude-low-degree", action="store_true",
                   default=argparse.SUPPRESS,
                   help="average clustering over degree>=2 nodes only")
    g.add_argument("--weighted-betweenness", action="store_true",
                   default=argparse.SUPPRESS,
                   help="betweenness over 1/weight distances by default")
    return p


def _add_network_input(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("network input (CSV pair or records+mapping)")
    g.add_argument("--edges", metavar="CSV", help="canonical edge-list CSV")
    g.add_argument("--nodes", metavar="CSV", help="node-list CSV (with --edges)")
    g.add_argument("--records", metavar="JSONL", help="publication records file")
    g.add_argument("--mapping", metavar="CSV", help="affiliation mapping file")
    g.add_argument("--years", type=_year_range, default=DEFAULT_YEAR_RANGE,
                   metavar="MIN:MAX",
                   help="inclusive year window for --records (default 2010:2015)")
    g.add_argument("--subjects", action="store_true",
                   help="carry per-subject edge breakdowns (records input only)")
    g.add_argument("--filter-subject", metavar="CLASS",
                   help="restrict the network to one subject class "
                        "(implies --subjects)")


def _check_exists(parser_name: str, *paths: str) -> None:
    for p in paths:
        if p and not Path(p).exists():
            raise CollabNetError(f"{parser_name}: input file not found: {p}")


def _load_network(ns: argparse.Namespace, cfg: RunConfig, command: str) -> CollabNetwork:
    has_csv = bool(ns.edges or ns.nodes)
    has_records = bool(ns.records or ns.mapping)
    if has_csv == has_records:
        raise UsageError(
            f"{command}: give exactly one of --edges/--nodes or --records/--mapping"
        )
    if has_csv:
        if not (ns.edges and ns.nodes):
            raise UsageError(f"{command}: --edges and --nodes are required together")
        if ns.subjects or ns.filter_subject:
            raise UsageError(
                f"{command}: subject options need records input "
                "(edge CSV has no subjects)"
            )
        _check_exists(command, ns.edges, ns.nodes)
        return exports.read_network(ns.edges, ns.nodes)
    if not (ns.records and ns.mapping):
        raise UsageError(f"{command}: --records and --mapping are required together")
    _check_exists(command, ns.records, ns.mapping)
    registry = load_mapping(ns.mapping)
    corpus = ingest_records(ns.records, registry, ns.years)
    network = build_network(
        corpus,
        registry,
        with_subjects=ns.subjects or bool(ns.filter_subject),
        include_isolates=cfg.include_isolates,
    )
    if ns.filter_subject:
        network = filter_by_subject(network, ns.filter_subject)
    return network


class UsageError(Exception):
    pass


# --- subcommand handlers --------------------------------------------------------

def _cmd_ingest(ns: argparse.Namespace, cfg: RunConfig) -> int:
    _check_exists("ingest", ns.records, ns.mapping)
    registry = load_mapping(ns.mapping)
    corpus = ingest_records(ns.records, registry, ns.years)
    if ns.out:
        export_corpus(corpus, ns.out)
    if ns.exclusions:
        write_exclusion_log(corpus, ns.exclusions)
    summary = corpus_summary(corpus)
    print(f"records: {summary.record_count}")
    print(f"institutions: {summary.institution_count}")
    print(f"authors: {summary.author_count}")
    for cat in CATEGORY_ORDER:
        print(f"institutions[{cat.value}]: {summary.institutions_by_category.get(cat, 0)}")
    excluded = sum(corpus.exclusion_log.values())
    print(f"excluded: {excluded}")
    for reason in sorted(corpus.exclusion_log):
        print(f"excluded[{reason}]: {corpus.exclusion_log[reason]}")
    return 0


def _cmd_build(ns: argparse.Namespace, cfg: RunConfig) -> int:
    _check_exists("build", ns.records, ns.mapping)
    registry = load_mapping(ns.mapping)
    corpus = ingest_records(ns.records, registry, ns.years)
    network = build_network(
        corpus, registry,
        with_subjects=ns.subjects,
        include_isolates=cfg.include_isolates,
    )
    exports.write_edge_csv(network, ns.out_edges)
    exports.write_node_csv(network, ns.out_nodes)
    if ns.gexf:
        exports.write_gexf(network, ns.gexf)
    if not cfg.quiet:
        log.info("built network: %d nodes, %d edges",
                 network.node_count, network.edge_count)
    return 0


def _fmt(value, digits: int = 2) -> str:
    return "undefined" if value is None else f"{value:.{digits}f}"


def _cmd_stats(ns: argparse.Namespace, cfg: RunConfig) -> int:
    network = _load_network(ns, cfg, "stats")
    summary = metrics.summarize(
        network,
        clustering_include_low_degree=not cfg.clustering_exclude_low_degree,
    )
    fit = None
    fit_error = None
    if ns.power_law:
        try:
            fit = fit_power_law(metrics.degree_sequence(network))
        except CollabNetError as exc:
            fit_error = f"{type(exc).__name__}: {exc}"

    if ns.json:
        payload = summary.to_json_dict()
        if ns.power_law:
            payload["power_law"] = (
                {"alpha": fit.alpha, "xmin": fit.xmin,
                 "ks_statistic": fit.ks_statistic, "n_tail": fit.n_tail}
                if fit else {"error": fit_error}
            )
        print(json.dumps(payload, indent=2))
    else:
        census = summary.component_census
        print(f"nodes: {summary.node_count}")
        print(f"edges: {summary.edge_count}")
        print(f"density: {summary.density:.6f}")
        print(f"avg degree: {_fmt(summary.avg_degree)}")
        print(f"avg weighted degree: {_fmt(summary.avg_weighted_degree)}")
        print(f"avg clustering: {_fmt(summary.avg_clustering)}")
        print(f"components: {len(census)}")
        if census:
            print(f"giant component size: {census[0]}")
        print(f"giant avg path length: {_fmt(summary.giant_avg_path_length)}")
        print(f"giant diameter: {summary.giant_diameter if summary.giant_diameter is not None else 'undefined'}")
        for cat in CATEGORY_ORDER:
            share = summary.category_proportions.get(cat.value, 0.0)
            print(f"share[{cat.value}]: {100 * share:.1f}%")
        if fit:
            print(f"power law: alpha={fit.alpha:.2f} xmin={fit.xmin} "
                  f"ks={fit.ks_statistic:.4f} n_tail={fit.n_tail}")
        elif fit_error:
            print(f"power law: {fit_error}")

    if ns.degrees_out:
        import csv as _csv

        with Path(ns.degrees_out).open("w", newline="", encoding="utf-8") as fh:
            writer = _csv.writer(fh)
            writer.writerow(["institution", "degree", "weighted_degree"])
            for inst, deg, wdeg in metrics.degree_table(network):
                writer.writerow([inst, deg, wdeg])
    if ns.fig:
        plots.plot_degree_distribution(network, ns.fig, fit=fit)
    return 0


def _cmd_centrality(ns: argparse.Namespace, cfg: RunConfig) -> int:
    network = _load_network(ns, cfg, "centrality")
    measure = ns.measure
    weighted = ns.weighted or cfg.weighted_betweenness
    if measure == "betweenness":
        report = centrality_mod.betweenness(
            network, weighted=weighted, normalized=ns.normalized
        )
    elif measure == "eigenvector":
        report = centrality_mod.eigenvector(network)
    elif measure == "degree":
        report = centrality_mod.degree_centrality(network, weighted=False)
    else:  # weighted-degree
        report = centrality_mod.degree_centrality(network, weighted=True)

    ranked = centrality_mod.top_k(report, ns.top)
    rows = [
        (rank, inst, network.name(inst), network.category(inst).value, score)
        for rank, (inst, score) in enumerate(ranked, start=1)
    ]
    if ns.out:
        import csv as _csv

        with Path(ns.out).open("w", newline="", encoding="utf-8") as fh:
            writer = _csv.writer(fh)
            writer.writerow(["rank", "institution_id", "name", "category", "score"])
            for rank, inst, name, cat, score in rows:
                writer.writerow([rank, inst, name, cat, repr(score)])
    else:
        print(f"measure: {report.measure} ({report.normalization})")
        for rank, inst, name, cat, score in rows:
            print(f"{rank:>3}  {score:>12.4f}  {name} [{cat}]")
    if ns.fig:
        plots.plot_centrality(
            [(name, score) for _, _, name, _, score in rows], report.measure, ns.fig
        )
    return 0


def _cmd_ego(ns: argparse.Namespace, cfg: RunConfig) -> int:
    network = _load_network(ns, cfg, "ego")
    center = facets_mod.resolve_focus(network, [ns.center])[0]
    ego = ego_subgraph(network, center)
    suffix = Path(ns.out).suffix.lower()
    if suffix == ".dot":
        exports.write_dot(ego.network, ns.out)
    elif suffix == ".json":
        exports.write_json(ego.network, ns.out)
    else:
        exports.write_gexf(ego.network, ns.out)
    print(f"ego[{center}]: {ego.network.node_count} members, "
          f"{ego.network.edge_count} edges -> {ns.out}")
    return 0


def _cmd_facets(ns: argparse.Namespace, cfg: RunConfig) -> int:
    network = _load_network(ns, cfg, "facets")
    if ns.focus is None:
        focus = sorted(network.nodes(), key=network.name)
    elif ns.focus == "default":
        focus = facets_mod.resolve_focus(network, facets_mod.default_focus_list())
    else:
        _check_exists("facets", ns.focus)
        focus = facets_mod.resolve_focus(network, facets_mod.load_focus_list(ns.focus))

    if ns.by == "category":
        table = facets_mod.category_facets(network, focus)
    else:
        table = facets_mod.subject_facets(network, focus)

    if table.zero_basis and not cfg.quiet:
        log.warning("zero-basis institutions (no records): %s",
                    ", ".join(sorted(table.zero_basis)))
    if ns.out:
        facets_mod.write_facet_csv(table, ns.out)
    else:
        print(f"proportions normalize over: {table.basis}")
        for row in table.rows:
            print(f"{row.institution},{row.facet},{row.count},{row.proportion:.4f}")
    if ns.fig:
        plots.plot_facets(table, ns.fig, value=ns.fig_value)
    return 0


def _cmd_synth(ns: argparse.Namespace, cfg: RunConfig) -> int:
    config = SynthConfig(
        seed=ns.seed,
        n_institutions=ns.inst,
        n_publications=ns.pubs,
        authors_per_pub=ns.authors,
        attachment_bias=ns.bias,
        subjects_per_pub=ns.subjects_per_pub,
        year_range=ns.years,
    )
    records_path, mapping_path = generate(config, ns.out_dir)
    print(f"records: {records_path}")
    print(f"mapping: {mapping_path}")
    return 0


def _cmd_export(ns: argparse.Namespace, cfg: RunConfig) -> int:
    network = _load_network(ns, cfg, "export")
    fmt = ns.format
    if fmt == "csv":
        out_dir = Path(ns.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        exports.write_edge_csv(network, out_dir / "edges.csv")
        exports.write_node_csv(network, out_dir / "nodes.csv")
        print(f"wrote {out_dir / 'edges.csv'} and {out_dir / 'nodes.csv'}")
        return 0
    writer = {
        "gexf": exports.write_gexf,
        "dot": exports.write_dot,
        "json": exports.write_json,
    }[fmt]
    writer(network, ns.out)
    print(f"wrote {ns.out}")
    return 0


# --- parser assembly ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parent = _global_parent()
    parser = argparse.ArgumentParser(
        prog="collabnet",
        description="Institution collaboration network toolkit",
        parents=[parent],
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("ingest", parents=[parent],
                       help="parse + clean records, report corpus counts")
    p.add_argument("--records", required=True, metavar="JSONL")
    p.add_argument("--mapping", required=True, metavar="CSV")
    p.add_argument("--years", type=_year_range, default=DEFAULT_YEAR_RANGE,
                   metavar="MIN:MAX")
    p.add_argument("--out", metavar="JSONL", help="write the cleaned corpus")
    p.add_argument("--exclusions", metavar="CSV", help="write reason,count log")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("build", parents=[parent],
                       help="build the collaboration network, write CSV/GEXF")
    p.add_argument("--records", required=True, metavar="JSONL")
    p.add_argument("--mapping", required=True, metavar="CSV")
    p.add_argument("--years", type=_year_range, default=DEFAULT_YEAR_RANGE,
                   metavar="MIN:MAX")
    p.add_argument("--subjects", action="store_true",
                   help="carry per-subject edge breakdowns")
    p.add_argument("--out-edges", required=True, metavar="CSV")
    p.add_argument("--out-nodes", required=True, metavar="CSV")
    p.add_argument("--gexf", metavar="FILE", help="also write GEXF")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("stats", parents=[parent], help="whole-network statistics")
    _add_network_input(p)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--degrees-out", metavar="CSV",
                   help="write institution,degree,weighted_degree")
    p.add_argument("--power-law", action="store_true",
                   help="fit a power law to the degree sequence")
    p.add_argument("--fig", metavar="PNG", help="render the degree distribution")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("centrality", parents=[parent], help="node centrality rankings")
    _add_network_input(p)
    p.add_argument("--measure", required=True,
                   choices=["betweenness", "eigenvector", "degree", "weighted-degree"])
    p.add_argument("--weighted", action="store_true",
                   help="betweenness over 1/weight distances")
    p.add_argument("--normalized", action="store_true",
                   help="normalize betweenness by (n-1)(n-2)/2")
    p.add_argument("--top", type=int, default=10, metavar="K")
    p.add_argument("--out", metavar="CSV")
    p.add_argument("--fig", metavar="PNG", help="render the ranking as bars")
    p.set_defaults(func=_cmd_centrality)

    p = sub.add_parser("ego", parents=[parent],
                       help="induced subgraph around one institution")
    _add_network_input(p)
    p.add_argument("--center", required=True, metavar="ID_OR_NAME")
    p.add_argument("--out", required=True, metavar="FILE",
                   help="output file (.gexf, .dot or .json)")
    p.set_defaults(func=_cmd_ego)

    p = sub.add_parser("facets", parents=[parent],
                       help="collaboration records by category or subject")
    _add_network_input(p)
    p.add_argument("--by", required=True, choices=["category", "subject"])
    p.add_argument("--focus", metavar="FILE",
                   help="focus institutions file, or 'default' for the packaged list")
    p.add_argument("--out", metavar="CSV")
    p.add_argument("--fig", metavar="PNG", help="render the table")
    p.add_argument("--fig-value", dest="fig_value", default="proportion",
                   choices=["proportion", "count"])
    p.set_defaults(func=_cmd_facets)

    p = sub.add_parser("synth", parents=[parent],
                       help="generate a deterministic synthetic corpus")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pubs", type=int, required=True, metavar="N")
    p.add_argument("--inst", type=_int_quad, required=True, metavar="B,P,G,H",
                   help="institutions per category")
    p.add_argument("--bias", type=float, default=1.0,
                   help="preferential-attachment bias (default 1.0)")
    p.add_argument("--authors", type=_int_pair, default=(2, 5), metavar="MIN:MAX")
    p.add_argument("--subjects-per-pub", dest="subjects_per_pub", type=_int_pair,
                   default=(1, 2), metavar="MIN:MAX")
    p.add_argument("--years", type=_year_range, default=DEFAULT_YEAR_RANGE,
                   metavar="MIN:MAX")
    p.add_argument("--out-dir", required=True, metavar="DIR")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("export", parents=[parent], help="serialize a network")
    _add_network_input(p)
    p.add_argument("--format", required=True, choices=["gexf", "dot", "json", "csv"])
    p.add_argument("--out", required=True, metavar="PATH",
                   help="output file (csv: output directory)")
    p.set_defaults(func=_cmd_export)

    return parser


def run(argv: list[str] | None = None) -> int:
    """Parse arguments and execute; returns the process exit status."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    cfg = RunConfig(
        quiet=getattr(ns, "quiet", False),
        threads=getattr(ns, "threads", 1),
        include_isolates=getattr(ns, "include_isolates", False),
        clustering_exclude_low_degree=getattr(ns, "clustering_exclude_low_degree", False),
        weighted_betweenness=getattr(ns, "weighted_betweenness", False),
    )
    logging.basicConfig(
        level=logging.WARNING if cfg.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    if cfg.threads < 1:
        print("error[usage]: --threads must be >= 1", file=sys.stderr)
        return 2

    try:
        return ns.func(ns, cfg)
    except UsageError as exc:
        print(f"error[usage]: {exc}", file=sys.stderr)
        return 2
    except CollabNetError as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
