"""Per-researcher productivity features from publication records.

Five features per person: paper count, citation count, and three
credit-weighted indices.  ``pr`` sums journal impact factors weighted by
the subject's credit share, ``pc`` sums citation counts the same way, and
``pcif`` weights citations by both the share and the impact factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .credit import Byline, a_index, pattern_from_byline


@dataclass(frozen=True)
class PublicationRecord:
    """One paper of one researcher within the study window."""

    pub_id: str
    byline: Byline
    impact_factor: float
    citations: int
    journal_key: str = ""

    def __post_init__(self) -> None:
        if self.impact_factor < 0:
            raise ValueError(f"{self.pub_id}: impact_factor must be >= 0")
        if self.citations < 0:
            raise ValueError(f"{self.pub_id}: citations must be >= 0")


@dataclass(frozen=True)
class ProductivityScores:
    person_id: str
    papers: int
    citations: int
    pr: float
    pc: float
    pcif: float

    def as_features(self) -> dict[str, float]:
        return {
            "papers": float(self.papers),
            "citations": float(self.citations),
            "pr": self.pr,
            "pc": self.pc,
            "pcif": self.pcif,
        }


#: feature names in reporting order
FEATURES = ("papers", "citations", "pr", "pc", "pcif")


def credit_share(record: PublicationRecord, merge_corresponding: bool = True) -> float:
    """Credit share of the subject author of ``record``, in (0, 1]."""
    pattern, group = pattern_from_byline(record.byline, merge_corresponding)
    return a_index(pattern).share(group)


def score_profile(
    person_id: str,
    records: Sequence[PublicationRecord],
    merge_corresponding: bool = True,
) -> ProductivityScores:
    """Fold a publication list into the five productivity features.

    Records are summed in ``pub_id`` order so output is reproducible
    regardless of input ordering.  An empty list scores zero everywhere.
    """
    ordered = sorted(records, key=lambda r: r.pub_id)
    pr_terms: list[float] = []
    pc_terms: list[float] = []
    pcif_terms: list[float] = []
    citations = 0
    for record in ordered:
        share = credit_share(record, merge_corresponding)
        citations += record.citations
        pr_terms.append(share * record.impact_factor)
        pc_terms.append(share * record.citations)
        pcif_terms.append(share * record.impact_factor * record.citations)
    return ProductivityScores(
        person_id=person_id,
        papers=len(ordered),
        citations=citations,
        pr=math.fsum(pr_terms),
        pc=math.fsum(pc_terms),
        pcif=math.fsum(pcif_terms),
    )
