"""Command-line interface for the scicredit toolkit.

Subcommands
-----------
credit
    Closed-form credit shares for an explicit group pattern or a byline,
    optionally cross-checked against the Monte Carlo oracle.
score
    Per-researcher productivity indices from a dataset.
pair
    Criteria-matched case/control pairs from a roster.
ttest
    Paired t-tests over productivity features of a matched cohort.
normalize
    Productivity-normalized funding comparison between two groups.
report
    The full pipeline: summary, pairs, t-tests and funding tables.

Output goes to stdout (or ``--out``) in the encoding selected by
``--format``; diagnostics go to stderr.  Runs are deterministic for a
fixed ``--seed``: identical invocations produce byte-identical output.
When ``--format json`` is selected the input datasets are parsed as JSON
as well, unless ``--input-format`` overrides that.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .cohort import GROUPINGS, match_pairs, run_paired_tests
from .credit import (
    AuthorGroupPattern,
    Byline,
    a_index,
    a_index_oracle,
    pattern_from_byline,
)
from .funding import METRICS, aggregate_group, normalized_funding
from .ingest import Corpus, load_corpus, parse_tie_groups
from .productivity import FEATURES, ProductivityScores, score_profile
from .report import (
    credit_table,
    funding_table,
    pair_table,
    render,
    score_table,
    summary_table,
    ttest_table,
)


# ---------------------------------------------------------------------------
# parser


def _output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        dest="fmt",
        choices=("csv", "json", "text"),
        default="csv",
        help="output encoding (default: csv); json also switches input parsing to JSON",
    )
    parser.add_argument(
        "--out", metavar="PATH", default=None, help="write output to PATH instead of stdout"
    )
    parser.add_argument(
        "--seed", type=int, default=0, help="random seed for sampling and matching (default: 0)"
    )


def _merge_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--no-merge-corresponding",
        action="store_true",
        help="do not merge corresponding authors into the lead tie group",
    )


def _corpus_flags(
    parser: argparse.ArgumentParser,
    *,
    publications: str = "required",
    funding: str = "optional",
) -> None:
    parser.add_argument("--roster", metavar="PATH", required=True, help="roster dataset")
    if publications != "omit":
        parser.add_argument(
            "--publications",
            metavar="PATH",
            required=publications == "required",
            help="publications dataset",
        )
    parser.add_argument(
        "--if-table",
        dest="if_table",
        metavar="PATH",
        help="journal impact-factor table (unresolved journals score 0)",
    )
    if funding != "omit":
        parser.add_argument(
            "--funding",
            metavar="PATH",
            required=funding == "required",
            help="funding dataset",
        )
    parser.add_argument(
        "--input-format",
        dest="input_format",
        choices=("csv", "json"),
        default=None,
        help="dataset encoding (default: json when --format json, csv otherwise)",
    )


def _cohort_flags(parser: argparse.ArgumentParser, *, ratio: bool = True) -> None:
    parser.add_argument("--case", required=True, help="group label of the cases")
    parser.add_argument("--control", required=True, help="group label of the control pool")
    if ratio:
        parser.add_argument(
            "--ratio",
            type=int,
            choices=(1, 2),
            default=1,
            help="controls matched per case (default: 1)",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scicredit",
        description="Axiomatic co-author credit and matched-cohort productivity analysis.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser(
        "credit",
        help="credit shares for a group pattern or byline",
        description="Closed-form credit shares, optionally with a Monte Carlo cross-check.",
    )
    p.add_argument(
        "--pattern",
        metavar="N,N,...",
        help="ordered tie-group sizes, e.g. 1,1,1 (excludes the byline options)",
    )
    p.add_argument("--authors", type=int, metavar="N", help="number of authors on the byline")
    p.add_argument(
        "--position", type=int, metavar="K", help="1-based byline position of the subject author"
    )
    p.add_argument(
        "--corresponding",
        action="store_true",
        help="the subject author is a corresponding author",
    )
    p.add_argument(
        "--ties",
        metavar="SPEC",
        help="explicit equal-credit position groups, e.g. '1;2,3' (must cover every position)",
    )
    _merge_flag(p)
    p.add_argument(
        "--oracle",
        type=int,
        metavar="BUDGET",
        help="also run the rejection-sampling oracle with this total draw budget",
    )
    _output_flags(p)
    p.set_defaults(func=cmd_credit)

    p = sub.add_parser(
        "score",
        help="per-researcher productivity indices",
        description="Credit-weighted productivity indices for every roster member.",
    )
    _corpus_flags(p, publications="required", funding="omit")
    _merge_flag(p)
    _output_flags(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser(
        "pair",
        help="criteria-matched case/control pairs",
        description="Match cases to controls on gender, degree, title, specialty and school.",
    )
    _corpus_flags(p, publications="optional", funding="omit")
    _cohort_flags(p)
    _output_flags(p)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser(
        "ttest",
        help="paired t-tests over a matched cohort",
        description="Match cases to controls, then run paired t-tests per productivity feature.",
    )
    _corpus_flags(p, publications="required", funding="omit")
    _cohort_flags(p)
    p.add_argument(
        "--by",
        choices=GROUPINGS,
        default="all",
        help="stratify tests by this case attribute (default: all)",
    )
    _merge_flag(p)
    _output_flags(p)
    p.set_defaults(func=cmd_ttest)

    p = sub.add_parser(
        "normalize",
        help="productivity-normalized funding comparison",
        description=(
            "Aggregate funding and productivity over the funded members of two "
            "groups and report raw and normalized case/control ratios."
        ),
    )
    _corpus_flags(p, publications="required", funding="required")
    _cohort_flags(p, ratio=False)
    _merge_flag(p)
    _output_flags(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser(
        "report",
        help="full pipeline report",
        description=(
            "Match cases to controls and emit the group summary, pair list, "
            "paired t-tests and (when funding data is given) normalized funding tables."
        ),
    )
    _corpus_flags(p, publications="required", funding="optional")
    _cohort_flags(p)
    p.add_argument(
        "--by",
        choices=GROUPINGS,
        default="all",
        help="stratify the t-tests by this case attribute (default: all)",
    )
    _merge_flag(p)
    _output_flags(p)
    p.set_defaults(func=cmd_report)

    return parser


# ---------------------------------------------------------------------------
# shared helpers


def _input_format(args: argparse.Namespace) -> str:
    if args.input_format is not None:
        return args.input_format
    return "json" if args.fmt == "json" else "csv"


def _load(args: argparse.Namespace) -> Corpus:
    corpus = load_corpus(
        args.roster,
        getattr(args, "publications", None),
        funding_path=getattr(args, "funding", None),
        if_table_path=getattr(args, "if_table", None),
        fmt=_input_format(args),
    )
    for note in corpus.warnings:
        print(f"warning: {note}", file=sys.stderr)
    return corpus


def _score_all(corpus: Corpus, merge: bool) -> dict[str, ProductivityScores]:
    return {
        rec.person_id: score_profile(
            rec.person_id,
            corpus.publications.get(rec.person_id, []),
            merge_corresponding=merge,
        )
        for rec in corpus.roster
    }


def _match(corpus: Corpus, args: argparse.Namespace):
    result = match_pairs(
        corpus.roster, args.case, args.control, ratio=args.ratio, seed=args.seed
    )
    for note in result.warnings:
        print(f"warning: {note}", file=sys.stderr)
    if not result.pairs:
        print("warning: no cases could be matched", file=sys.stderr)
    return result


def _funded_aggregate(corpus: Corpus, scores, label: str):
    members = [
        (scores[rec.person_id], corpus.funding[rec.person_id])
        for rec in corpus.roster
        if rec.group_label == label and rec.person_id in corpus.funding
    ]
    if not members:
        raise ValueError(f"no funded members with group label {label!r}")
    return aggregate_group(members, label)


def _funding_tables(corpus: Corpus, scores, case: str, control: str) -> list:
    ratios = normalized_funding(
        _funded_aggregate(corpus, scores, case),
        _funded_aggregate(corpus, scores, control),
    )
    return [funding_table(ratios, metric) for metric in METRICS]


# ---------------------------------------------------------------------------
# subcommands


def cmd_credit(args: argparse.Namespace) -> str:
    byline_opts = (
        args.authors is not None
        or args.position is not None
        or args.corresponding
        or args.ties is not None
    )
    subject_group: Optional[int] = None
    if args.pattern is not None:
        if byline_opts:
            raise ValueError("--pattern cannot be combined with the byline options")
        parts = [p.strip() for p in args.pattern.split(",") if p.strip()]
        if not parts:
            raise ValueError(f"empty pattern {args.pattern!r}")
        try:
            counts = tuple(int(p) for p in parts)
        except ValueError:
            raise ValueError(
                f"pattern must be comma-separated integers, got {args.pattern!r}"
            ) from None
        pattern = AuthorGroupPattern(counts)
    else:
        if args.authors is None or args.position is None:
            raise ValueError("provide either --pattern or both --authors and --position")
        ties = parse_tie_groups(args.ties) if args.ties else None
        corresponding = frozenset({args.position}) if args.corresponding else frozenset()
        byline = Byline(
            author_count=args.authors,
            subject_position=args.position,
            corresponding=corresponding,
            ties=ties,
        )
        pattern, subject_group = pattern_from_byline(
            byline, merge_corresponding=not args.no_merge_corresponding
        )
    vector = a_index(pattern)
    oracle = None
    if args.oracle is not None:
        oracle = a_index_oracle(pattern, sample_budget=args.oracle, seed=args.seed)
    table = credit_table(vector, oracle)
    if subject_group is not None:
        note = (
            f"subject author is in group {subject_group} "
            f"with share {vector.share(subject_group):.6f}"
        )
        table.footnote = f"{table.footnote}; {note}" if table.footnote else note
    return render([table], args.fmt)


def cmd_score(args: argparse.Namespace) -> str:
    corpus = _load(args)
    merge = not args.no_merge_corresponding
    scores = _score_all(corpus, merge)
    ordered = [scores[pid] for pid in sorted(scores)]
    return render([score_table(ordered)], args.fmt)


def cmd_pair(args: argparse.Namespace) -> str:
    corpus = _load(args)
    result = _match(corpus, args)
    return render([pair_table(result.pairs, result.unmatched)], args.fmt)


def cmd_ttest(args: argparse.Namespace) -> str:
    corpus = _load(args)
    result = _match(corpus, args)
    scores = _score_all(corpus, not args.no_merge_corresponding)
    tests = run_paired_tests(result.pairs, scores, corpus.roster_by_id(), by=args.by)
    return render([ttest_table(tests)], args.fmt)


def cmd_normalize(args: argparse.Namespace) -> str:
    corpus = _load(args)
    scores = _score_all(corpus, not args.no_merge_corresponding)
    tables = _funding_tables(corpus, scores, args.case, args.control)
    return render(tables, args.fmt)


def cmd_report(args: argparse.Namespace) -> str:
    corpus = _load(args)
    result = _match(corpus, args)
    scores = _score_all(corpus, not args.no_merge_corresponding)
    roster_by_id = corpus.roster_by_id()

    tables = []
    tests_all = run_paired_tests(result.pairs, scores, roster_by_id, by="all")
    if result.pairs:
        stars = {
            item.feature: item.result.stars
            for item in tests_all.tests
            if item.stratum == "all"
        }
        case_vals: dict[str, list[float]] = {f: [] for f in FEATURES}
        ctrl_vals: dict[str, list[float]] = {f: [] for f in FEATURES}
        for pair in result.pairs:
            feats = scores[pair.case_id].as_features()
            for f in FEATURES:
                case_vals[f].append(feats[f])
            for cid in pair.control_ids:
                feats = scores[cid].as_features()
                for f in FEATURES:
                    ctrl_vals[f].append(feats[f])
        tables.append(
            summary_table(
                "Group summary (matched cohort)",
                [("all", case_vals, ctrl_vals, stars)],
                args.case,
                args.control,
                ratio_from="all",
            )
        )
    tables.append(pair_table(result.pairs, result.unmatched))
    if args.by == "all":
        tables.append(ttest_table(tests_all))
    else:
        tables.append(
            ttest_table(run_paired_tests(result.pairs, scores, roster_by_id, by=args.by))
        )
    if corpus.funding:
        tables.extend(_funding_tables(corpus, scores, args.case, args.control))
    return render(tables, args.fmt)


# ---------------------------------------------------------------------------
# entry point


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        output = args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out is not None:
        Path(args.out).write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
