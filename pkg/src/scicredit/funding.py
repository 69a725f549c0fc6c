"""Group-level funding aggregation and productivity-normalized parity ratios.

Funding metrics (dollar totals and funded-project counts) are summed per
group, then divided by the group's accumulated productivity indices.  The
case/control quotient of these normalized values is the parity measure: a
ratio near 1 means funding tracks productivity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .productivity import ProductivityScores

#: funding metrics that can be normalized
METRICS = ("funding_total", "project_count")

#: normalizers: raw value plus the three productivity indices
NORMALIZERS = ("none", "pr", "pc", "pcif")


@dataclass(frozen=True)
class FundingRecord:
    """Funded-project count and dollar total of one person."""

    person_id: str
    project_count: int
    funding_total: float

    def __post_init__(self) -> None:
        if self.project_count < 0:
            raise ValueError(f"{self.person_id}: project_count must be >= 0")
        if self.funding_total < 0:
            raise ValueError(f"{self.person_id}: funding_total must be >= 0")
        if self.project_count == 0 and self.funding_total != 0:
            raise ValueError(
                f"{self.person_id}: funding_total must be 0 when project_count is 0"
            )


@dataclass(frozen=True)
class GroupAggregate:
    """Field-wise sums of funding and productivity over a group's members."""

    group_label: str
    n_people: int
    funding_total: float
    project_count: int
    pr_sum: float
    pc_sum: float
    pcif_sum: float

    def metric(self, name: str) -> float:
        if name not in METRICS:
            raise ValueError(f"unknown metric {name!r}")
        return float(getattr(self, name))

    def normalizer(self, name: str) -> float:
        if name == "none":
            return 1.0
        if name not in NORMALIZERS:
            raise ValueError(f"unknown normalizer {name!r}")
        return float(getattr(self, f"{name}_sum"))


@dataclass(frozen=True)
class RatioCell:
    """One (metric, normalizer) comparison between case and control."""

    case_value: float
    control_value: float
    ratio: float
    error: Optional[str] = None


@dataclass(frozen=True)
class NormalizedRatios:
    case: GroupAggregate
    control: GroupAggregate
    cells: Mapping[tuple[str, str], RatioCell]

    def cell(self, metric: str, normalizer: str) -> RatioCell:
        return self.cells[(metric, normalizer)]


def aggregate_group(
    members: Sequence[tuple[ProductivityScores, FundingRecord]], label: str
) -> GroupAggregate:
    """Sum productivity and funding over a group, in person_id order."""
    if not members:
        raise ValueError(f"group {label!r} has no members")
    for scores, funding in members:
        if scores.person_id != funding.person_id:
            raise ValueError(
                f"member mismatch: scores for {scores.person_id!r} paired with "
                f"funding for {funding.person_id!r}"
            )
    ordered = sorted(members, key=lambda pair: pair[0].person_id)
    return GroupAggregate(
        group_label=label,
        n_people=len(ordered),
        funding_total=math.fsum(f.funding_total for _, f in ordered),
        project_count=sum(f.project_count for _, f in ordered),
        pr_sum=math.fsum(s.pr for s, _ in ordered),
        pc_sum=math.fsum(s.pc for s, _ in ordered),
        pcif_sum=math.fsum(s.pcif for s, _ in ordered),
    )


def normalized_funding(case: GroupAggregate, control: GroupAggregate) -> NormalizedRatios:
    """Normalized metric values and case/control ratios for every column.

    A non-positive control denominator (normalizer sum or raw metric)
    invalidates only its own column; the cell carries an error note and
    the remaining columns are still produced.
    """
    cells: dict[tuple[str, str], RatioCell] = {}
    for metric in METRICS:
        for norm in NORMALIZERS:
            case_den = case.normalizer(norm)
            ctrl_den = control.normalizer(norm)
            problems = []
            if case_den <= 0:
                problems.append(f"case {norm} sum is {case_den}")
            if ctrl_den <= 0:
                problems.append(f"control {norm} sum is {ctrl_den}")
            if not problems:
                case_value = case.metric(metric) / case_den
                control_value = control.metric(metric) / ctrl_den
                if control_value <= 0:
                    problems.append(f"control normalized {metric} is {control_value}")
                else:
                    cells[(metric, norm)] = RatioCell(
                        case_value, control_value, case_value / control_value
                    )
                    continue
            cells[(metric, norm)] = RatioCell(
                math.nan, math.nan, math.nan, error="; ".join(problems)
            )
    return NormalizedRatios(case, control, cells)
