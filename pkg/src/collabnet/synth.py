"""Deterministic synthetic corpus generator for desk-scale testing.

Produces a records file and a mapping file in the ingestion formats, with
institution participation following a preferential-attachment rule. The
institution pool activates gradually: each publication's first author
writes from a not-yet-used institution (in a seed-shuffled order) while any
remain, and every other authorship picks an already-active institution with
probability proportional to ``(current participation count +
attachment_bias)``, the count updating after every authorship. Coupling
activation to publications is what makes the participation counts
heavy-tailed; restricting the biased choice to a fixed pool instead would
drift toward uniform selection and an exponential tail. Small bias values
let early leaders snowball harder; large values approach uniform selection
over the active institutions.

Randomness comes from an explicitly specified splitmix-style 64-bit
generator rather than a library RNG, so identical seeds produce
byte-identical files on any platform or implementation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import InvalidConfig
from .taxonomy import ASJC_SUBJECTS, CATEGORY_ORDER, Category

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64: 64-bit state advanced by the golden-gamma increment.

    next_u64: state += 0x9E3779B97F4A7C15; z = state;
              z = (z ^ z>>30) * 0xBF58476D1CE4E5B9;
              z = (z ^ z>>27) * 0x94D049BB133111EB;
              return z ^ z>>31        (all arithmetic mod 2**64)
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def randint(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi] inclusive."""
        return lo + int(self.uniform() * (hi - lo + 1))

    def weighted_index(self, weights: list[float]) -> int:
        """Index drawn proportionally to ``weights`` (uniform if all zero)."""
        total = 0.0
        for w in weights:
            total += w
        if total <= 0.0:
            return self.randint(0, len(weights) - 1)
        r = self.uniform() * total
        acc = 0.0
        for i, w in enumerate(weights):
            acc += w
            if r < acc:
                return i
        return len(weights) - 1


@dataclass(frozen=True)
class SynthConfig:
    seed: int
    #: institutions per category, in (Business, PNP, Government, HigherEd) order
    n_institutions: tuple[int, int, int, int]
    n_publications: int
    authors_per_pub: tuple[int, int] = (2, 5)
    attachment_bias: float = 1.0
    subjects_per_pub: tuple[int, int] = (1, 2)
    year_range: tuple[int, int] = (2010, 2015)
    subject_pool: tuple[str, ...] = field(default=ASJC_SUBJECTS)

    def validate(self) -> None:
        if any(n < 0 for n in self.n_institutions):
            raise InvalidConfig("institution counts must be >= 0")
        total = sum(self.n_institutions)
        if self.n_publications < 0:
            raise InvalidConfig("n_publications must be >= 0")
        if self.n_publications > 0 and total < 2:
            raise InvalidConfig("need at least 2 institutions to generate publications")
        lo, hi = self.authors_per_pub
        if not (1 <= lo <= hi):
            raise InvalidConfig(f"authors_per_pub range ({lo}, {hi}) invalid")
        slo, shi = self.subjects_per_pub
        if not (0 <= slo <= shi):
            raise InvalidConfig(f"subjects_per_pub range ({slo}, {shi}) invalid")
        if shi > len(self.subject_pool):
            raise InvalidConfig("subjects_per_pub max exceeds subject pool size")
        ylo, yhi = self.year_range
        if ylo > yhi:
            raise InvalidConfig(f"year_range ({ylo}, {yhi}) invalid")
        if self.attachment_bias < 0:
            raise InvalidConfig("attachment_bias must be >= 0")


_PREFIX = {
    Category.BUSINESS: ("B", "Synth Business"),
    Category.PNP: ("P", "Synth Nonprofit"),
    Category.GOVERNMENT: ("G", "Synth Government"),
    Category.HIGHER_ED: ("H", "Synth University"),
}


def generate(config: SynthConfig, out_dir: str | Path) -> tuple[Path, Path]:
    """Write ``records.jsonl`` and ``mapping.csv`` under ``out_dir``.

    Returns (records_path, mapping_path). Output is byte-identical for
    identical configs and always ingests with zero exclusions.
    """
    config.validate()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    records_path = out / "records.jsonl"
    mapping_path = out / "mapping.csv"

    institutions: list[tuple[str, str, Category]] = []
    for count, category in zip(config.n_institutions, CATEGORY_ORDER):
        prefix, label = _PREFIX[category]
        for i in range(1, count + 1):
            institutions.append((f"{prefix}{i:04d}", f"{label} {i:04d}", category))

    with mapping_path.open("w", encoding="utf-8", newline="") as fh:
        fh.write("affiliation_id,institution_id,institution_name,category\r\n")
        for inst_id, name, category in institutions:
            fh.write(f"AF-{inst_id},{inst_id},{name},{category.value}\r\n")

    rng = SplitMix64(config.seed)
    participation = [0.0] * len(institutions)
    ylo, yhi = config.year_range
    alo, ahi = config.authors_per_pub
    slo, shi = config.subjects_per_pub

    # seed-shuffled activation order keeps hubs category-balanced
    order = list(range(len(institutions)))
    for i in range(len(order) - 1, 0, -1):
        j = rng.randint(0, i)
        order[i], order[j] = order[j], order[i]
    active: list[int] = []
    next_fresh = 0

    with records_path.open("w", encoding="utf-8") as fh:
        for k in range(1, config.n_publications + 1):
            year = rng.randint(ylo, yhi)

            n_subjects = rng.randint(slo, shi)
            pool = list(config.subject_pool)
            subjects = []
            for _ in range(n_subjects):
                subjects.append(pool.pop(rng.randint(0, len(pool) - 1)))

            n_authors = rng.randint(alo, ahi)
            authors = []
            for j in range(1, n_authors + 1):
                if j == 1 and next_fresh < len(order):
                    idx = order[next_fresh]
                    next_fresh += 1
                    active.append(idx)
                else:
                    weights = [participation[i] + config.attachment_bias for i in active]
                    idx = active[rng.weighted_index(weights)]
                participation[idx] += 1.0
                authors.append((f"p{k:06d}a{j}", institutions[idx][0]))

            subj_json = ",".join(f'"{s}"' for s in subjects)
            auth_json = ",".join(
                f'{{"author_id":"{aid}","affiliation_ids":["AF-{inst}"]}}'
                for aid, inst in authors
            )
            fh.write(
                f'{{"pub_id":"p{k:06d}","year":{year},"subjects":[{subj_json}],'
                f'"authors":[{auth_json}]}}\n'
            )

    return records_path, mapping_path
