"""Institution-level scientific collaboration network toolkit."""

from .centrality import (
    CentralityReport,
    betweenness,
    degree_centrality,
    eigenvector,
    top_k,
)
from .facets import (
    FacetTable,
    category_facets,
    default_focus_list,
    subject_facets,
)
from .ingest import (
    CleanCorpus,
    InstitutionRegistry,
    corpus_summary,
    ingest_records,
    load_mapping,
)
from .metrics import (
    NetworkSummary,
    avg_clustering,
    category_proportions,
    connected_components,
    degree_sequence,
    giant_path_metrics,
    summarize,
)
from .network import (
    CollabNetwork,
    EgoSubgraph,
    aggregate_by_category,
    build_network,
    ego_subgraph,
    filter_by_subject,
)
from .powerlaw import PowerLawFit, fit_power_law
from .synth import SynthConfig, generate
from .taxonomy import ASJC_SUBJECTS, Category

__version__ = "0.1.0"

__all__ = [
    "ASJC_SUBJECTS",
    "Category",
    "CentralityReport",
    "CleanCorpus",
    "CollabNetwork",
    "EgoSubgraph",
    "FacetTable",
    "InstitutionRegistry",
    "NetworkSummary",
    "PowerLawFit",
    "SynthConfig",
    "aggregate_by_category",
    "avg_clustering",
    "betweenness",
    "build_network",
    "category_facets",
    "category_proportions",
    "connected_components",
    "corpus_summary",
    "default_focus_list",
    "degree_centrality",
    "degree_sequence",
    "ego_subgraph",
    "eigenvector",
    "filter_by_subject",
    "fit_power_law",
    "generate",
    "giant_path_metrics",
    "ingest_records",
    "load_mapping",
    "subject_facets",
    "summarize",
    "top_k",
]
