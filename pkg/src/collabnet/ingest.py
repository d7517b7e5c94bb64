"""Parse publication records and the affiliation mapping into a clean corpus.

Inputs
------
Mapping CSV (UTF-8, RFC-4180 quoting) with header::

    affiliation_id,institution_id,institution_name,category

Several affiliation IDs may map to one institution; the reverse is an error.
``category`` must be one of the four canonical tokens (see ``taxonomy``).

Records file: UTF-8 JSON Lines, one publication per line::

    {"pub_id": str, "year": int, "subjects": [str],
     "authors": [{"author_id": str, "affiliation_ids": [str]}]}

Cleaning rules
--------------
* records outside the year window are dropped,
* authorships whose affiliation cannot be resolved are dropped,
* records left without any resolvable authorship are dropped,
* duplicate ``pub_id`` lines keep the first occurrence.

Record-level drops are counted in ``CleanCorpus.exclusion_log`` so that
``input records == clean records + sum(exclusion_log.values())`` holds
exactly; sub-record drops (single authorships, single affiliations) are
reported through the module logger instead of the log, which would
otherwise break that conservation identity.
"""

from __future__ import annotations

import csv
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConflictingMapping, MalformedLine, MalformedRow
from .taxonomy import Category

log = logging.getLogger(__name__)

MAPPING_HEADER = ("affiliation_id", "institution_id", "institution_name", "category")

#: Inclusive publication-year window applied when none is given.
DEFAULT_YEAR_RANGE = (2010, 2015)

# exclusion_log keys (record-level reasons only)
EXCL_DUPLICATE = "duplicate_pub_id"
EXCL_YEAR = "year_out_of_range"
EXCL_UNRESOLVABLE = "unresolvable"


@dataclass(frozen=True)
class Institution:
    inst_id: str
    name: str
    category: Category


@dataclass
class InstitutionRegistry:
    """Affiliation-ID -> institution mapping plus institution metadata."""

    affiliation_to_institution: dict[str, str]
    institutions: dict[str, Institution]

    def resolve(self, affiliation_id: str) -> str | None:
        """Resolve an affiliation ID to an institution ID, or None.

        Canonical institution IDs resolve to themselves, so a corpus that
        was already cleaned (and re-serialized with institution IDs in the
        affiliation slots) ingests unchanged.
        """
        inst = self.affiliation_to_institution.get(affiliation_id)
        if inst is not None:
            return inst
        if affiliation_id in self.institutions:
            return affiliation_id
        return None

    def __len__(self) -> int:
        return len(self.institutions)


@dataclass(frozen=True)
class Authorship:
    """One author of a publication and the institutions they wrote under."""

    author_id: str
    institutions: frozenset[str]


@dataclass(frozen=True)
class CleanRecord:
    pub_id: str
    year: int
    subjects: frozenset[str]
    authorships: tuple[Authorship, ...]


@dataclass
class CleanCorpus:
    """Resolved, filtered publication records ready for network building."""

    records: list[CleanRecord]
    year_range: tuple[int, int]
    exclusion_log: Counter = field(default_factory=Counter)
    #: metadata for every institution referenced by ``records``
    institutions: dict[str, Institution] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.records)


def _canonical_name(name: str) -> str:
    return " ".join(name.split()).casefold()


def load_mapping(mapping_file: str | Path) -> InstitutionRegistry:
    """Load the affiliation->institution mapping CSV into a registry.

    Raises MalformedRow for shape problems, UnknownCategory for category
    tokens outside the canonical four, and ConflictingMapping when the same
    affiliation_id points at two institutions, when one institution_id
    carries two names or categories, or when two institutions share a name
    after whitespace/case canonicalization.
    """
    path = Path(mapping_file)
    aff_to_inst: dict[str, str] = {}
    institutions: dict[str, Institution] = {}
    names_seen: dict[str, str] = {}  # canonical name -> inst_id

    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MalformedRow(f"{path}: empty file, expected header row") from None
        if tuple(h.strip() for h in header) != MAPPING_HEADER:
            raise MalformedRow(
                f"{path}: bad header {header!r}, expected {','.join(MAPPING_HEADER)}"
            )
        for row_no, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue  # tolerate blank lines
            if len(row) != len(MAPPING_HEADER):
                raise MalformedRow(
                    f"{path}:{row_no}: expected {len(MAPPING_HEADER)} columns, got {len(row)}"
                )
            aff_id, inst_id, name, cat_token = (f.strip() for f in row)
            if not aff_id or not inst_id or not name:
                raise MalformedRow(f"{path}:{row_no}: empty key field")
            category = Category.parse(cat_token)

            known = institutions.get(inst_id)
            if known is None:
                canon = _canonical_name(name)
                other = names_seen.get(canon)
                if other is not None and other != inst_id:
                    raise ConflictingMapping(
                        f"{path}:{row_no}: institutions {other!r} and {inst_id!r} "
                        f"share the name {name!r}"
                    )
                names_seen[canon] = inst_id
                institutions[inst_id] = Institution(inst_id, name, category)
            elif known.name != name or known.category != category:
                raise ConflictingMapping(
                    f"{path}:{row_no}: institution {inst_id!r} redefined as "
                    f"({name!r}, {category.value}); previously "
                    f"({known.name!r}, {known.category.value})"
                )

            previous = aff_to_inst.get(aff_id)
            if previous is not None and previous != inst_id:
                raise ConflictingMapping(
                    f"{path}:{row_no}: affiliation {aff_id!r} mapped to both "
                    f"{previous!r} and {inst_id!r}"
                )
            aff_to_inst[aff_id] = inst_id

    return InstitutionRegistry(aff_to_inst, institutions)


def _parse_record_line(line: str, line_no: int) -> tuple[str, int, frozenset, list]:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedLine(line_no, f"invalid JSON ({exc.msg})") from None
    if not isinstance(obj, dict):
        raise MalformedLine(line_no, "expected a JSON object")

    pub_id = obj.get("pub_id")
    if not isinstance(pub_id, str) or not pub_id:
        raise MalformedLine(line_no, "missing or empty 'pub_id'")
    year = obj.get("year")
    if not isinstance(year, int) or isinstance(year, bool):
        raise MalformedLine(line_no, "'year' must be an integer")
    subjects = obj.get("subjects", [])
    if not isinstance(subjects, list) or not all(isinstance(s, str) for s in subjects):
        raise MalformedLine(line_no, "'subjects' must be a list of strings")
    authors = obj.get("authors")
    if not isinstance(authors, list):
        raise MalformedLine(line_no, "'authors' must be a list")

    # Merge duplicate author entries: one author_id is one person, so their
    # affiliation sets union (duplicate (author, affiliation) pairs collapse).
    merged: dict[str, set[str]] = {}
    order: list[str] = []
    for entry in authors:
        if not isinstance(entry, dict):
            raise MalformedLine(line_no, "author entries must be objects")
        author_id = entry.get("author_id")
        affs = entry.get("affiliation_ids")
        if not isinstance(author_id, str) or not author_id:
            raise MalformedLine(line_no, "missing or empty 'author_id'")
        if not isinstance(affs, list) or not all(isinstance(a, str) for a in affs):
            raise MalformedLine(line_no, "'affiliation_ids' must be a list of strings")
        if author_id not in merged:
            merged[author_id] = set()
            order.append(author_id)
        merged[author_id].update(a for a in affs if a)

    return pub_id, year, frozenset(s for s in subjects if s), [
        (a, merged[a]) for a in order
    ]


def ingest_records(
    records_file: str | Path,
    registry: InstitutionRegistry,
    year_range: tuple[int, int] = DEFAULT_YEAR_RANGE,
) -> CleanCorpus:
    """Read a JSON-Lines records file and resolve it against ``registry``.

    The year window is inclusive on both ends. An empty input file is a
    valid empty corpus, not an error.
    """
    lo, hi = year_range
    if lo > hi:
        raise ValueError(f"year_range min {lo} > max {hi}")

    path = Path(records_file)
    corpus = CleanCorpus(records=[], year_range=(lo, hi))
    seen: set[str] = set()
    used_institutions: set[str] = set()

    with path.open(encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            pub_id, year, subjects, authors = _parse_record_line(line, line_no)

            if pub_id in seen:
                corpus.exclusion_log[EXCL_DUPLICATE] += 1
                log.info("line %d: duplicate pub_id %r, keeping first", line_no, pub_id)
                continue
            seen.add(pub_id)

            if not lo <= year <= hi:
                corpus.exclusion_log[EXCL_YEAR] += 1
                continue

            authorships = []
            for author_id, affs in authors:
                insts = set()
                for aff in affs:
                    inst = registry.resolve(aff)
                    if inst is None:
                        log.debug(
                            "pub %s: affiliation %r unresolvable, dropped", pub_id, aff
                        )
                    else:
                        insts.add(inst)
                if insts:
                    authorships.append(Authorship(author_id, frozenset(insts)))
                else:
                    log.debug("pub %s: author %r has no resolvable affiliation", pub_id, author_id)

            if not authorships:
                corpus.exclusion_log[EXCL_UNRESOLVABLE] += 1
                continue

            corpus.records.append(
                CleanRecord(pub_id, year, subjects, tuple(authorships))
            )
            for a in authorships:
                used_institutions.update(a.institutions)

    corpus.institutions = {
        i: registry.institutions[i] for i in sorted(used_institutions)
    }
    return corpus


@dataclass(frozen=True)
class CorpusSummary:
    record_count: int
    institution_count: int
    author_count: int
    institutions_by_category: dict[Category, int]


def corpus_summary(corpus: CleanCorpus) -> CorpusSummary:
    """Counts report over a clean corpus (pure read)."""
    authors: set[str] = set()
    for rec in corpus.records:
        authors.update(a.author_id for a in rec.authorships)
    by_cat: Counter = Counter(inst.category for inst in corpus.institutions.values())
    return CorpusSummary(
        record_count=len(corpus.records),
        institution_count=len(corpus.institutions),
        author_count=len(authors),
        institutions_by_category=dict(by_cat),
    )


def export_corpus(corpus: CleanCorpus, out_file: str | Path) -> None:
    """Write a clean corpus back to the JSON-Lines record format.

    Institution IDs are written into the affiliation slots; because the
    registry resolves canonical IDs to themselves, re-ingesting the output
    reproduces the corpus exactly.
    """
    with Path(out_file).open("w", encoding="utf-8") as fh:
        for rec in corpus.records:
            obj = {
                "pub_id": rec.pub_id,
                "year": rec.year,
                "subjects": sorted(rec.subjects),
                "authors": [
                    {"author_id": a.author_id, "affiliation_ids": sorted(a.institutions)}
                    for a in rec.authorships
                ],
            }
            fh.write(json.dumps(obj, ensure_ascii=False) + "\n")


def write_exclusion_log(corpus: CleanCorpus, out_file: str | Path) -> None:
    """Emit the record-level exclusion counts as ``reason,count`` CSV."""
    with Path(out_file).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["reason", "count"])
        for reason in sorted(corpus.exclusion_log):
            writer.writerow([reason, corpus.exclusion_log[reason]])
