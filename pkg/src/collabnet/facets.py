"""Per-institution collaboration-record tables, faceted by counterpart
category or by journal subject class.

Category facets decompose an institution's weighted degree into the four
counterpart categories, with proportions of that weighted degree. Subject
facets count collaboration records per subject class under full counting: a
publication tagged with several subjects counts once under each, so subject
counts are not a partition of the weighted degree (each individual count
is still <= it); their proportions normalize over the institution's total
subject-attributed records instead.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import SubjectsUnavailable, UnknownInstitution
from .network import CollabNetwork, aggregate_by_category
from .taxonomy import ASJC_SUBJECTS, CATEGORY_ORDER

FACET_CSV_HEADER = ("institution", "facet", "count", "proportion")


@dataclass(frozen=True)
class FacetRow:
    institution: str
    facet: str
    count: int
    proportion: float


@dataclass(frozen=True)
class FacetTable:
    kind: str  # "category" | "subject"
    rows: tuple[FacetRow, ...]
    #: what the proportions normalize over
    basis: str
    #: institutions whose normalizing total was 0 (their proportions read 0)
    zero_basis: frozenset[str]


def category_facets(network: CollabNetwork, institutions: list[str]) -> FacetTable:
    """Four rows per institution: counterpart-category counts and shares."""
    rows: list[FacetRow] = []
    zero: set[str] = set()
    for inst in institutions:
        if inst not in network:
            raise UnknownInstitution(f"institution {inst!r} not in network")
        counts = aggregate_by_category(network, inst)
        total = sum(counts.values())
        if total == 0:
            zero.add(inst)
        for cat in CATEGORY_ORDER:
            rows.append(
                FacetRow(inst, cat.value, counts[cat], counts[cat] / total if total else 0.0)
            )
    return FacetTable(
        kind="category",
        rows=tuple(rows),
        basis="institution weighted degree (total collaboration records)",
        zero_basis=frozenset(zero),
    )


def subject_facets(network: CollabNetwork, institutions: list[str]) -> FacetTable:
    """One row per institution and subject class (zeros included)."""
    if not network.has_subjects:
        raise SubjectsUnavailable("network built without subject breakdowns")
    rows: list[FacetRow] = []
    zero: set[str] = set()
    for inst in institutions:
        if inst not in network:
            raise UnknownInstitution(f"institution {inst!r} not in network")
        counts = dict.fromkeys(ASJC_SUBJECTS, 0)
        for neighbor in network.graph.neighbors(inst):
            for subject, c in network.edge_subjects(inst, neighbor).items():
                counts[subject] = counts.get(subject, 0) + c
        total = sum(counts.values())
        if total == 0:
            zero.add(inst)
        for subject in ASJC_SUBJECTS:
            rows.append(
                FacetRow(inst, subject, counts[subject],
                         counts[subject] / total if total else 0.0)
            )
    return FacetTable(
        kind="subject",
        rows=tuple(rows),
        basis="institution total subject-attributed records (full counting)",
        zero_basis=frozenset(zero),
    )


def default_focus_list() -> list[str]:
    """The 15 packaged focus institutions, in presentation order."""
    text = resources.files("collabnet.data").joinpath("default_focus.txt").read_text(
        encoding="utf-8"
    )
    return [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]


def load_focus_list(path: str | Path) -> list[str]:
    """Read a focus file: one institution name or ID per line, '#' comments."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [ln.strip() for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]


def resolve_focus(network: CollabNetwork, entries: list[str]) -> list[str]:
    """Map focus entries to node IDs: exact ID match first, then unique name."""
    by_name: dict[str, str] = {}
    ambiguous: set[str] = set()
    for node in network.nodes():
        name = network.name(node)
        if name in by_name:
            ambiguous.add(name)
        by_name[name] = node
    resolved = []
    for entry in entries:
        if entry in network:
            resolved.append(entry)
        elif entry in by_name and entry not in ambiguous:
            resolved.append(by_name[entry])
        else:
            raise UnknownInstitution(
                f"focus entry {entry!r} matches no institution ID or unique name"
            )
    return resolved


def write_facet_csv(table: FacetTable, out_file: str | Path) -> None:
    """Byte-deterministic long-format CSV: institution,facet,count,proportion."""
    with Path(out_file).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(FACET_CSV_HEADER)
        for row in table.rows:
            writer.writerow([row.institution, row.facet, row.count, repr(row.proportion)])
