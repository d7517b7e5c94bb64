"""Shared vocabulary: institution categories and journal subject classes."""

from __future__ import annotations

from enum import Enum

from .errors import UnknownCategory


class Category(str, Enum):
    """Four-way institution classification.

    The ``value`` strings are the canonical tokens used in mapping files,
    CSV/JSON outputs and GEXF attributes. Mapping files using any other
    spelling are rejected rather than guessed.
    """

    BUSINESS = "BusinessEnterprise"
    PNP = "PrivateNotForProfit"
    GOVERNMENT = "Government"
    HIGHER_ED = "HigherEducation"

    @classmethod
    def parse(cls, token: str) -> "Category":
        try:
            return cls(token)
        except ValueError:
            raise UnknownCategory(
                f"unknown category {token!r}; expected one of "
                + ", ".join(c.value for c in cls)
            ) from None


# Presentation order used in tables and stacked charts.
CATEGORY_ORDER = (
    Category.BUSINESS,
    Category.PNP,
    Category.GOVERNMENT,
    Category.HIGHER_ED,
)

# Node colour legend shared by the GEXF/DOT exporters and the report figures.
CATEGORY_COLORS: dict[Category, tuple[int, int, int]] = {
    Category.BUSINESS: (255, 0, 0),      # red
    Category.GOVERNMENT: (0, 128, 0),    # green
    Category.HIGHER_ED: (0, 0, 255),     # blue
    Category.PNP: (128, 0, 128),         # purple
}

# All Science Journal Classification: the general class plus 26 specific ones.
ASJC_SUBJECTS: tuple[str, ...] = (
    "Multidisciplinary",
    "Agricultural and Biological Sciences",
    "Arts and Humanities",
    "Biochemistry Genetics and Molecular Biology",
    "Business Management and Accounting",
    "Chemical Engineering",
    "Chemistry",
    "Computer Science",
    "Decision Sciences",
    "Dentistry",
    "Earth and Planetary Sciences",
    "Economics Econometrics and Finance",
    "Energy",
    "Engineering",
    "Environmental Science",
    "Health Professions",
    "Immunology and Microbiology",
    "Materials Science",
    "Mathematics",
    "Medicine",
    "Neuroscience",
    "Nursing",
    "Pharmacology Toxicology and Pharmaceuticals",
    "Physics and Astronomy",
    "Psychology",
    "Social Sciences",
    "Veterinary",
)

ASJC_SET = frozenset(ASJC_SUBJECTS)
