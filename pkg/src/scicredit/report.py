"""Report tables and their text / CSV / JSON renderings.

Display rounding follows the reporting conventions of the analysis:
means, standard deviations, dollar amounts and dollars-per-index at two
decimals, projects-per-index at three, ratio rows at two.  Ratio rows are
computed from the rounded column values exactly as they are displayed, so
a reader can reproduce every ratio from the printed table alone; the
unrounded ratios stay available from `scicredit.funding`.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .cohort import (
    MatchedPair,
    StratifiedTests,
    summarize_group,
)
from .credit import CreditVector, OracleEstimate
from .funding import METRICS, NORMALIZERS, GroupAggregate, NormalizedRatios
from .productivity import FEATURES, ProductivityScores

SIGNIFICANCE_LEGEND = "* p<0.05, ** p<0.01 (two-tailed paired t-test)"


@dataclass
class ReportTable:
    """A rectangular table of formatted cells plus a footnote."""

    title: str
    headers: list[str]
    rows: list[list[str]] = field(default_factory=list)
    footnote: str = ""

    def __post_init__(self) -> None:
        arity = len(self.headers)
        for i, row in enumerate(self.rows):
            if len(row) != arity:
                raise ValueError(
                    f"row {i} has {len(row)} cells, header has {arity}"
                )

    def add(self, *cells: object) -> None:
        row = [str(c) for c in cells]
        if len(row) != len(self.headers):
            raise ValueError(
                f"row has {len(row)} cells, header has {len(self.headers)}"
            )
        self.rows.append(row)


def to_text(table: ReportTable) -> str:
    widths = [
        max(len(h), *(len(r[i]) for r in table.rows)) if table.rows else len(h)
        for i, h in enumerate(table.headers)
    ]
    lines = [table.title, ""]
    lines.append("  ".join(h.ljust(w) for h, w in zip(table.headers, widths)).rstrip())
    lines.append("  ".join("-" * w for w in widths))
    for row in table.rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    if table.footnote:
        lines.append("")
        lines.append(table.footnote)
    return "\n".join(lines) + "\n"


def to_csv(table: ReportTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.headers)
    writer.writerows(table.rows)
    return buf.getvalue()


def to_json(table: ReportTable) -> dict:
    return {
        "title": table.title,
        "headers": list(table.headers),
        "rows": [list(r) for r in table.rows],
        "footnote": table.footnote,
    }


def render(tables: Sequence[ReportTable], fmt: str) -> str:
    """Render one or more tables in the requested output format."""
    if fmt == "json":
        payload = [to_json(t) for t in tables]
        return json.dumps(payload[0] if len(payload) == 1 else payload, indent=2) + "\n"
    if fmt == "csv":
        parts = []
        for t in tables:
            head = f"# {t.title}\n"
            foot = f"# {t.footnote}\n" if t.footnote else ""
            parts.append(head + to_csv(t) + foot)
        return "\n".join(parts)
    return "\n".join(to_text(t) for t in tables)


def _fmt(value: float, digits: int) -> str:
    return f"{value:.{digits}f}"


# ---------------------------------------------------------------------------
# credit tables


def credit_table(
    vector: CreditVector, oracle: Optional[OracleEstimate] = None
) -> ReportTable:
    headers = ["group", "size", "share"]
    if oracle is not None:
        headers += ["mc_estimate", "mc_stderr"]
    table = ReportTable(
        title=f"Credit shares for pattern {','.join(map(str, vector.pattern.counts))}",
        headers=headers,
    )
    for i, (count, share) in enumerate(
        zip(vector.pattern.counts, vector.group_shares), start=1
    ):
        row: list[object] = [i, count, _fmt(share, 6)]
        if oracle is not None:
            row += [
                _fmt(oracle.estimate.group_shares[i - 1], 6),
                _fmt(oracle.stderr[i - 1], 6),
            ]
        table.add(*row)
    if oracle is not None:
        table.footnote = f"Monte Carlo: {oracle.accepted} accepted of {oracle.budget} draws"
    return table


def score_table(scores: Sequence[ProductivityScores]) -> ReportTable:
    """Full-precision per-person feature rows (machine readable)."""
    table = ReportTable(
        title="Productivity scores",
        headers=["person_id", "papers", "citations", "pr", "pc", "pcif"],
    )
    for s in scores:
        table.add(s.person_id, s.papers, s.citations, repr(s.pr), repr(s.pc), repr(s.pcif))
    return table


# ---------------------------------------------------------------------------
# cohort tables


def pair_table(pairs: Sequence[MatchedPair], unmatched: Sequence[str]) -> ReportTable:
    table = ReportTable(
        title="Matched pairs",
        headers=["case_id", "control_ids", "status"],
    )
    for p in pairs:
        table.add(p.case_id, ";".join(p.control_ids), "matched")
    for pid in unmatched:
        table.add(pid, "", "unmatched")
    return table


def ttest_table(tests: StratifiedTests) -> ReportTable:
    table = ReportTable(
        title=f"Paired t-tests by {tests.grouping}",
        headers=["stratum", "feature", "n_pairs", "mean_diff", "sd_diff",
                 "t", "df", "p", "stars"],
        footnote=SIGNIFICANCE_LEGEND,
    )
    for item in tests.tests:
        r = item.result
        table.add(
            item.stratum, item.feature, r.n_pairs,
            _fmt(r.mean_diff, 4), _fmt(r.sd_diff, 4),
            _fmt(r.t, 4), r.df, _fmt(r.p_two_tailed, 6),
            r.stars + (" (degenerate)" if r.degenerate else ""),
        )
    if tests.skipped:
        note = f"strata skipped (fewer than 2 pairs): {', '.join(tests.skipped)}"
        table.footnote = table.footnote + "; " + note
    return table


def summary_table(
    title: str,
    strata: Sequence[tuple[str, Mapping[str, Sequence[float]], Mapping[str, Sequence[float]], Mapping[str, str]]],
    case_label: str,
    control_label: str,
    ratio_from: Optional[str] = None,
) -> ReportTable:
    """Group summary rows in the ``mean±sd`` style with significance flags.

    ``strata`` holds tuples of (stratum name, case feature values, control
    feature values, stars per feature).  ``ratio_from`` names the stratum
    whose case/control mean quotients form the trailing ratio row.
    """
    table = ReportTable(
        title=title,
        headers=["stratum", "group", "n", *FEATURES],
        footnote=SIGNIFICANCE_LEGEND,
    )
    ratio_row: Optional[list[str]] = None
    for name, case_vals, ctrl_vals, stars in strata:
        case_n = len(case_vals[FEATURES[0]])
        ctrl_n = len(ctrl_vals[FEATURES[0]])
        case_cells = []
        ctrl_cells = []
        for f in FEATURES:
            case_sum = summarize_group(case_vals[f], f)
            ctrl_sum = summarize_group(ctrl_vals[f], f)
            case_cells.append(case_sum.formatted() + stars.get(f, ""))
            ctrl_cells.append(ctrl_sum.formatted())
        table.add(name, case_label, case_n, *case_cells)
        table.add(name, control_label, ctrl_n, *ctrl_cells)
        if ratio_from is not None and name == ratio_from:
            cells = [
                _fmt(case_n / ctrl_n, 2) if ctrl_n else "",
            ]
            for f in FEATURES:
                c = summarize_group(case_vals[f]).mean
                w = summarize_group(ctrl_vals[f]).mean
                cells.append(_fmt(c / w, 2) if w else "")
            ratio_row = ["ratio", "", *cells]
    if ratio_row is not None:
        table.add(*ratio_row)
    return table


# ---------------------------------------------------------------------------
# funding tables

#: display digits per metric: raw value and normalized-by-index columns
_METRIC_DIGITS = {"funding_total": (2, 2), "project_count": (0, 3)}

_METRIC_TITLES = {
    "funding_total": "Funding totals normalized by productivity",
    "project_count": "Funded projects normalized by productivity",
}


def _display_column(agg: GroupAggregate, metric: str, norm: str) -> float:
    raw_digits, norm_digits = _METRIC_DIGITS[metric]
    if norm == "none":
        return round(agg.metric(metric), raw_digits)
    return round(agg.metric(metric) / agg.normalizer(norm), norm_digits)


def display_columns(agg: GroupAggregate, metric: str) -> list[float]:
    """Raw and normalized metric values rounded as displayed.

    Requires positive productivity sums; undefined columns are handled by
    `funding_table` instead.
    """
    return [_display_column(agg, metric, norm) for norm in NORMALIZERS]


def display_ratio_row(
    case: GroupAggregate, control: GroupAggregate, metric: str
) -> list[float]:
    """Case/control quotients of the displayed (rounded) column values."""
    case_cols = display_columns(case, metric)
    ctrl_cols = display_columns(control, metric)
    return [c / w for c, w in zip(case_cols, ctrl_cols)]


def funding_table(ratios: NormalizedRatios, metric: str) -> ReportTable:
    """Two group rows plus a ratio row for one funding metric."""
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}")
    raw_digits, norm_digits = _METRIC_DIGITS[metric]
    table = ReportTable(
        title=_METRIC_TITLES[metric],
        headers=["group", "n", metric,
                 f"{metric}_per_pr", f"{metric}_per_pc", f"{metric}_per_pcif"],
    )
    errors = []
    for agg in (ratios.case, ratios.control):
        cells: list[str] = [_fmt(agg.metric(metric), raw_digits)]
        for norm in NORMALIZERS[1:]:
            cell = ratios.cell(metric, norm)
            if cell.error is not None or agg.normalizer(norm) <= 0:
                cells.append("n/a")
            else:
                value = agg.metric(metric) / agg.normalizer(norm)
                cells.append(_fmt(value, norm_digits))
        table.add(agg.group_label, agg.n_people, *cells)
    ratio_cells: list[str] = []
    for norm in NORMALIZERS:
        cell = ratios.cell(metric, norm)
        if cell.error is not None:
            ratio_cells.append("n/a")
            errors.append(f"{norm}: {cell.error}")
        else:
            case_col = _display_column(ratios.case, metric, norm)
            ctrl_col = _display_column(ratios.control, metric, norm)
            if ctrl_col == 0:
                ratio_cells.append("n/a")
                errors.append(f"{norm}: control column rounds to 0")
            else:
                ratio_cells.append(_fmt(case_col / ctrl_col, 2))
    n_ratio = (
        _fmt(ratios.case.n_people / ratios.control.n_people, 2)
        if ratios.control.n_people
        else ""
    )
    table.add("ratio", n_ratio, *ratio_cells)
    table.footnote = "ratio row computed from the rounded column values"
    if errors:
        table.footnote += "; undefined columns: " + "; ".join(errors)
    return table
