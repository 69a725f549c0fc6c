"""Axiomatic co-author credit shares and matched-cohort productivity analysis.

The package is organised around six building blocks:

- :mod:`scicredit.credit` — closed-form ordered credit shares (the a-index),
  a Monte Carlo rejection-sampling estimator for cross-checking them, and
  the classic inflated / fractional / harmonic baselines.
- :mod:`scicredit.productivity` — per-researcher productivity indices
  aggregated from credit-weighted publication records.
- :mod:`scicredit.cohort` — criteria-matched case/control construction and
  paired t-tests over the productivity features.
- :mod:`scicredit.funding` — productivity-normalized funding comparisons
  between matched groups.
- :mod:`scicredit.ingest` — CSV/JSON dataset loading with strict validation.
- :mod:`scicredit.report` — plain-text / CSV / JSON table rendering.

:mod:`scicredit.cli` wires everything into the ``scicredit`` command.
"""

from .credit import (
    AuthorGroupPattern,
    Byline,
    CreditVector,
    OracleEstimate,
    PatternError,
    SampleBudgetError,
    a_index,
    a_index_oracle,
    all_patterns,
    fractional_credit,
    harmonic_credit,
    inflated_credit,
    pattern_from_byline,
)
from .special import (
    ConvergenceError,
    regularized_incomplete_beta,
    student_t_two_tailed_p,
)
from .productivity import (
    FEATURES,
    ProductivityScores,
    PublicationRecord,
    credit_share,
    score_profile,
)
from .cohort import (
    GROUPINGS,
    MATCH_FIELDS,
    FacultyRecord,
    GroupSummary,
    MatchedPair,
    MatchingError,
    MatchResult,
    StratifiedTests,
    StratumTest,
    TTestResult,
    collapse_controls,
    match_pairs,
    paired_t_test,
    run_paired_tests,
    stars_for,
    summarize_group,
)
from .funding import (
    METRICS,
    NORMALIZERS,
    FundingRecord,
    GroupAggregate,
    NormalizedRatios,
    RatioCell,
    aggregate_group,
    normalized_funding,
)
from .ingest import (
    Corpus,
    CorpusError,
    format_tie_groups,
    load_corpus,
    parse_tie_groups,
    save_corpus,
)
from .report import (
    SIGNIFICANCE_LEGEND,
    ReportTable,
    credit_table,
    display_columns,
    display_ratio_row,
    funding_table,
    pair_table,
    render,
    score_table,
    summary_table,
    ttest_table,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # credit
    "AuthorGroupPattern",
    "Byline",
    "CreditVector",
    "OracleEstimate",
    "PatternError",
    "SampleBudgetError",
    "a_index",
    "a_index_oracle",
    "all_patterns",
    "fractional_credit",
    "harmonic_credit",
    "inflated_credit",
    "pattern_from_byline",
    # special functions
    "ConvergenceError",
    "regularized_incomplete_beta",
    "student_t_two_tailed_p",
    # productivity
    "FEATURES",
    "ProductivityScores",
    "PublicationRecord",
    "credit_share",
    "score_profile",
    # cohort
    "GROUPINGS",
    "MATCH_FIELDS",
    "FacultyRecord",
    "GroupSummary",
    "MatchedPair",
    "MatchingError",
    "MatchResult",
    "StratifiedTests",
    "StratumTest",
    "TTestResult",
    "collapse_controls",
    "match_pairs",
    "paired_t_test",
    "run_paired_tests",
    "stars_for",
    "summarize_group",
    # funding
    "METRICS",
    "NORMALIZERS",
    "FundingRecord",
    "GroupAggregate",
    "NormalizedRatios",
    "RatioCell",
    "aggregate_group",
    "normalized_funding",
    # ingest
    "Corpus",
    "CorpusError",
    "format_tie_groups",
    "load_corpus",
    "parse_tie_groups",
    "save_corpus",
    # report
    "SIGNIFICANCE_LEGEND",
    "ReportTable",
    "credit_table",
    "display_columns",
    "display_ratio_row",
    "funding_table",
    "pair_table",
    "render",
    "score_table",
    "summary_table",
    "ttest_table",
]
