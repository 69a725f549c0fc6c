"""Criteria-matched case/control pairing and paired t statistics.

Pairing is exact on five categorical criteria (gender, degree, title,
specialty, school).  Each case draws 1 or 2 distinct controls uniformly at
random from its eligible pool under an explicit seed; a control serves at
most one pair.  Multi-control groups are collapsed by averaging before the
paired t-test.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .productivity import FEATURES, ProductivityScores
from .special import student_t_two_tailed_p

#: categorical fields that must agree exactly between case and control
MATCH_FIELDS = ("gender", "degree", "title", "specialty", "school_id")

#: stratification keys accepted by run_paired_tests
GROUPINGS = ("title", "tier", "gender", "all")


class MatchingError(ValueError):
    """Roster violates the matching contract (duplicate ids, bad labels)."""


@dataclass(frozen=True)
class FacultyRecord:
    """One roster member with the attributes used for matching and strata."""

    person_id: str
    group_label: str
    gender: str
    degree: str
    title: str
    specialty: str
    school_id: str
    tier: int

    def __post_init__(self) -> None:
        if self.tier not in (1, 2, 3):
            raise MatchingError(
                f"{self.person_id}: tier must be 1, 2 or 3, got {self.tier}"
            )

    def criteria(self) -> tuple[str, ...]:
        return tuple(getattr(self, f) for f in MATCH_FIELDS)


@dataclass(frozen=True)
class MatchedPair:
    case_id: str
    control_ids: tuple[str, ...]


@dataclass(frozen=True)
class MatchResult:
    pairs: tuple[MatchedPair, ...]
    unmatched: tuple[str, ...]
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class TTestResult:
    n_pairs: int
    mean_diff: float
    sd_diff: float
    t: float
    df: int
    p_two_tailed: float
    stars: str
    degenerate: bool = False


@dataclass(frozen=True)
class GroupSummary:
    feature: str
    n: int
    mean: float
    sd: float

    def formatted(self, digits: int = 2) -> str:
        return f"{self.mean:.{digits}f}±{self.sd:.{digits}f}"


def stars_for(p: float) -> str:
    """Significance flags: '**' below 0.01, '*' below 0.05, else ''."""
    if p < 0.01:
        return "**"
    if p < 0.05:
        return "*"
    return ""


def _greedy_match(
    cases: Sequence[FacultyRecord],
    controls: Sequence[FacultyRecord],
    ratio: int,
    rng: random.Random,
) -> tuple[list[MatchedPair], list[str]]:
    pool: dict[tuple[str, ...], list[str]] = {}
    for rec in controls:
        pool.setdefault(rec.criteria(), []).append(rec.person_id)
    pairs: list[MatchedPair] = []
    unmatched: list[str] = []
    for case in cases:
        eligible = pool.get(case.criteria(), [])
        if len(eligible) < ratio:
            unmatched.append(case.person_id)
            continue
        chosen = rng.sample(eligible, ratio)
        for pid in chosen:
            eligible.remove(pid)
        pairs.append(MatchedPair(case.person_id, tuple(chosen)))
    return pairs, unmatched


def match_pairs(
    roster: Sequence[FacultyRecord],
    case_label: str,
    control_label: str,
    ratio: int,
    seed: int = 0,
) -> MatchResult:
    """Match each case to ``ratio`` distinct controls on all five criteria.

    Cases are processed greedily in roster order; among eligible controls
    the draw is uniform under ``seed``, so results are reproducible.  A
    warning is attached when processing cases in reverse order would have
    matched a different set of cases (the greedy outcome is
    order-sensitive for that roster).
    """
    if ratio not in (1, 2):
        raise MatchingError(f"ratio must be 1 or 2, got {ratio}")
    seen: set[str] = set()
    for rec in roster:
        if rec.person_id in seen:
            raise MatchingError(f"duplicate person_id in roster: {rec.person_id}")
        seen.add(rec.person_id)
    labels = {rec.group_label for rec in roster}
    for label in (case_label, control_label):
        if label not in labels:
            raise MatchingError(f"label {label!r} not present in roster")

    cases = [r for r in roster if r.group_label == case_label]
    controls = [r for r in roster if r.group_label == control_label]
    pairs, unmatched = _greedy_match(cases, controls, ratio, random.Random(seed))

    # Greedy matching consumes controls first-come-first-served, so when a
    # criteria pool is short of controls the *set* of matched cases depends
    # on roster order (the matched count does not: pools are disjoint under
    # exact matching).  Re-running in reverse order detects that.
    warnings: list[str] = []
    alt_pairs, _ = _greedy_match(list(reversed(cases)), controls, ratio, random.Random(seed))
    if {p.case_id for p in alt_pairs} != {p.case_id for p in pairs}:
        warnings.append(
            "matching is order-sensitive: a different set of cases is matched "
            "when cases are processed in reverse roster order"
        )
    return MatchResult(tuple(pairs), tuple(unmatched), tuple(warnings))


def collapse_controls(
    pair: MatchedPair, scores: Mapping[str, ProductivityScores]
) -> tuple[dict[str, float], dict[str, float]]:
    """Case features and the mean of the controls' features for one pair."""
    missing = [
        pid for pid in (pair.case_id, *pair.control_ids) if pid not in scores
    ]
    if missing:
        raise KeyError(f"missing productivity scores for: {', '.join(missing)}")
    case_vec = scores[pair.case_id].as_features()
    control_vecs = [scores[pid].as_features() for pid in pair.control_ids]
    k = len(control_vecs)
    control_vec = {
        f: math.fsum(v[f] for v in control_vecs) / k for f in FEATURES
    }
    return case_vec, control_vec


def paired_t_test(
    case_values: Sequence[float], control_values: Sequence[float]
) -> TTestResult:
    """Two-tailed paired t-test on per-pair differences.

    Degenerate samples (zero variance of the differences) are reported
    with p = 0 or p = 1 and flagged instead of raising.
    """
    if len(case_values) != len(control_values):
        raise ValueError(
            f"paired samples differ in length: {len(case_values)} vs {len(control_values)}"
        )
    n = len(case_values)
    if n < 2:
        raise ValueError(f"paired t-test needs at least 2 pairs, got {n}")
    diffs = [a - b for a, b in zip(case_values, control_values)]
    mean = math.fsum(diffs) / n
    var = math.fsum((d - mean) ** 2 for d in diffs) / (n - 1)
    sd = math.sqrt(var)
    df = n - 1
    if sd == 0.0:
        if mean == 0.0:
            return TTestResult(n, 0.0, 0.0, 0.0, df, 1.0, "", degenerate=True)
        t = math.copysign(math.inf, mean)
        return TTestResult(n, mean, 0.0, t, df, 0.0, "**", degenerate=True)
    t = mean / (sd / math.sqrt(n))
    p = student_t_two_tailed_p(t, df)
    return TTestResult(n, mean, sd, t, df, p, stars_for(p))


def summarize_group(values: Sequence[float], feature: str = "") -> GroupSummary:
    """Mean and sample standard deviation (n-1 denominator) of a group."""
    n = len(values)
    if n == 0:
        raise ValueError("cannot summarize an empty group")
    mean = math.fsum(values) / n
    if n == 1:
        return GroupSummary(feature, 1, mean, 0.0)
    sd = math.sqrt(math.fsum((v - mean) ** 2 for v in values) / (n - 1))
    return GroupSummary(feature, n, mean, sd)


@dataclass(frozen=True)
class StratumTest:
    stratum: str
    feature: str
    result: TTestResult


@dataclass(frozen=True)
class StratifiedTests:
    grouping: str
    tests: tuple[StratumTest, ...]
    skipped: tuple[str, ...] = ()


def run_paired_tests(
    pairs: Sequence[MatchedPair],
    scores: Mapping[str, ProductivityScores],
    roster: Mapping[str, FacultyRecord],
    by: str = "all",
) -> StratifiedTests:
    """Paired t-tests per feature, stratified by a case attribute.

    ``by`` is one of ``title``, ``tier``, ``gender`` or ``all``.  Strata
    with fewer than two pairs cannot be tested and are reported in
    ``skipped``.
    """
    if by not in GROUPINGS:
        raise ValueError(f"grouping must be one of {GROUPINGS}, got {by!r}")
    strata: dict[str, list[MatchedPair]] = {}
    for pair in pairs:
        case = roster[pair.case_id]
        key = "all" if by == "all" else str(getattr(case, by))
        strata.setdefault(key, []).append(pair)

    tests: list[StratumTest] = []
    skipped: list[str] = []
    for stratum in sorted(strata):
        bucket = strata[stratum]
        if len(bucket) < 2:
            skipped.append(stratum)
            continue
        collapsed = [collapse_controls(p, scores) for p in bucket]
        for feature in FEATURES:
            case_vals = [c[0][feature] for c in collapsed]
            ctrl_vals = [c[1][feature] for c in collapsed]
            tests.append(
                StratumTest(stratum, feature, paired_t_test(case_vals, ctrl_vals))
            )
    return StratifiedTests(by, tuple(tests), tuple(skipped))
