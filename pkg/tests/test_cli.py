"""End-to-end CLI tests driving ``scicredit.cli.main`` in process."""

from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from scicredit.cli import main
from scicredit.ingest import load_corpus, save_corpus
from scicredit.special import student_t_two_tailed_p


@pytest.fixture
def run(capsys):
    def invoke(*argv: str) -> tuple[int, str, str]:
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


@pytest.fixture
def demo(demo_dir):
    def flags(*, funding: bool = False, publications: bool = True) -> list[str]:
        argv = ["--roster", str(demo_dir / "roster.csv")]
        if publications:
            argv += ["--publications", str(demo_dir / "publications.csv")]
            argv += ["--if-table", str(demo_dir / "if_table.csv")]
        if funding:
            argv += ["--funding", str(demo_dir / "funding.csv")]
        return argv

    return flags


def write_corpus(directory: Path, roster: list[str], publications: list[str],
                 if_rows: list[str]) -> dict[str, str]:
    paths = {
        "roster": directory / "roster.csv",
        "publications": directory / "publications.csv",
        "if_table": directory / "if_table.csv",
    }
    paths["roster"].write_text(
        "person_id,group_label,gender,degree,title,specialty,school_id,tier\n"
        + "".join(f"{r}\n" for r in roster)
    )
    paths["publications"].write_text(
        "person_id,pub_id,author_count,subject_position,is_corresponding,"
        "tie_groups,journal_key,citations\n"
        + "".join(f"{r}\n" for r in publications)
    )
    paths["if_table"].write_text(
        "journal_key,impact_factor\n" + "".join(f"{r}\n" for r in if_rows)
    )
    return {k: str(v) for k, v in paths.items()}


# ---------------------------------------------------------------------------
# entry point


def test_version_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "scicredit.cli", "--version"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "scicredit 0.1.0"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["score"],  # missing required --roster
        ["credit", "--pattern"],  # flag without a value
        ["pair", "--roster", "r.csv", "--case", "a", "--control", "b", "--ratio", "3"],
    ],
)
def test_argparse_misuse_exits_2(argv, capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == 2
    capsys.readouterr()


# ---------------------------------------------------------------------------
# credit


def test_credit_pattern(run):
    code, out, err = run("credit", "--pattern", "1,1,1")
    assert code == 0 and err == ""
    assert out.startswith("# Credit shares for pattern 1,1,1\n")
    assert "1,1,0.611111\n" in out
    assert "2,1,0.277778\n" in out
    assert "3,1,0.111111\n" in out


def test_credit_byline_merges_corresponding(run):
    code, out, err = run("credit", "--authors", "3", "--position", "3", "--corresponding")
    assert code == 0
    assert "subject author is in group 1 with share 0.416667" in out
    assert "1,2,0.416667\n" in out


def test_credit_byline_without_merge(run):
    code, out, _ = run(
        "credit", "--authors", "3", "--position", "3", "--corresponding",
        "--no-merge-corresponding",
    )
    assert code == 0
    assert "subject author is in group 3 with share 0.111111" in out


def test_credit_explicit_ties(run):
    code, out, _ = run("credit", "--authors", "4", "--position", "2", "--ties", "1;2,3;4")
    assert code == 0
    assert "subject author is in group 2 with share 0.194444" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["credit", "--pattern", "1,1", "--authors", "3", "--position", "1"],
        ["credit"],
        ["credit", "--authors", "3"],  # missing --position
        ["credit", "--pattern", "1,x"],
        ["credit", "--pattern", "0,1"],
        ["credit", "--pattern", ","],
        ["credit", "--authors", "3", "--position", "5"],
        ["credit", "--authors", "4", "--position", "1", "--ties", "1;2"],
    ],
)
def test_credit_rejects_bad_requests(run, argv):
    code, out, err = run(*argv)
    assert code == 1
    assert out == ""
    assert err.startswith("error: ")


def test_credit_oracle_columns_and_determinism(run):
    argv = ("credit", "--pattern", "1,2", "--oracle", "50000", "--seed", "7")
    code, out, err = run(*argv)
    assert code == 0 and err == ""
    assert "mc_estimate,mc_stderr" in out
    assert "accepted of 50000 draws" in out
    code2, out2, _ = run(*argv)
    assert code2 == 0 and out2 == out


# ---------------------------------------------------------------------------
# score


def test_score_demo_rows(run, demo):
    code, out, err = run("score", *demo())
    assert code == 0 and err == ""
    assert out.startswith("# Productivity scores\n")
    assert "person_id,papers,citations,pr,pc,pcif\n" in out
    assert "a1,2,18,6.5,18.0,57.0\n" in out
    assert "b4,1,3,1.25,1.5,3.75\n" in out
    assert "b5,0,0,0.0,0.0,0.0\n" in out
    # rows are sorted by person id
    lines = [ln for ln in out.splitlines() if ln and not ln.startswith("#")]
    ids = [ln.split(",")[0] for ln in lines[1:]]
    assert ids == sorted(ids) and len(ids) == 8


def test_score_no_merge_changes_shared_byline(run, demo):
    code, out, _ = run("score", *demo(), "--no-merge-corresponding")
    assert code == 0
    assert "b4,1,3,0.625,0.75,1.875\n" in out


def test_unknown_journal_warns_and_scores_zero(run, tmp_path):
    paths = write_corpus(
        tmp_path,
        roster=["p1,x,F,MD,assistant,cardiology,s1,1"],
        publications=["p1,q1,1,1,false,,j9,7"],
        if_rows=["j1,4.0"],
    )
    code, out, err = run(
        "score", "--roster", paths["roster"], "--publications", paths["publications"],
        "--if-table", paths["if_table"],
    )
    assert code == 0
    assert "warning:" in err and "'j9'" in err
    assert "p1,1,7,0.0,7.0,0.0\n" in out


# ---------------------------------------------------------------------------
# pair


def test_pair_ratio_two(run, demo):
    code, out, err = run(
        "pair", *demo(publications=False), "--case", "alpha", "--control", "beta",
        "--ratio", "2",
    )
    assert code == 0 and err == ""
    lines = [ln for ln in out.splitlines() if ln and not ln.startswith("#")]
    rows = {ln.split(",")[0]: ln.split(",") for ln in lines[1:]}
    assert set(rows["a1"][1].split(";")) == {"b1", "b2"}
    assert set(rows["a2"][1].split(";")) == {"b3", "b4"}
    assert rows["a1"][2] == rows["a2"][2] == "matched"
    assert rows["a3"] == ["a3", "", "unmatched"]


def test_pair_is_deterministic(run, demo):
    argv = ("pair", *demo(publications=False), "--case", "alpha", "--control", "beta")
    _, first, _ = run(*argv)
    _, second, _ = run(*argv)
    assert first == second


def test_pair_warns_when_nothing_matches(run, tmp_path):
    paths = write_corpus(
        tmp_path,
        roster=[
            "c1,x,F,MD,assistant,cardiology,s1,1",
            "k1,y,F,MD,assistant,neurology,s1,1",
        ],
        publications=[],
        if_rows=["j1,4.0"],
    )
    code, out, err = run(
        "pair", "--roster", paths["roster"], "--case", "x", "--control", "y"
    )
    assert code == 0
    assert "warning: no cases could be matched" in err
    assert "c1,,unmatched\n" in out


def test_pair_rejects_unknown_label(run, demo):
    code, _, err = run(
        "pair", *demo(publications=False), "--case", "gamma", "--control", "beta"
    )
    assert code == 1
    assert err.startswith("error: ")


# ---------------------------------------------------------------------------
# ttest


def test_ttest_demo_rows(run, demo):
    code, out, err = run(
        "ttest", *demo(), "--case", "alpha", "--control", "beta"
    )
    assert code == 0 and err == ""
    assert "stratum,feature,n_pairs,mean_diff,sd_diff,t,df,p,stars\n" in out
    assert "all,papers,2,0.5000,0.7071,1.0000,1,0.500000,\n" in out
    expected_p = f"{student_t_two_tailed_p(21.0, 1):.6f}"
    assert f"all,pr,2,2.6250,0.1768,21.0000,1,{expected_p},*\n" in out
    assert "# * p<0.05, ** p<0.01 (two-tailed paired t-test)" in out


def test_ttest_degenerate_pairs(run, tmp_path):
    roster = [
        "c1,x,F,MD,assistant,cardiology,s1,1",
        "c2,x,F,MD,assistant,cardiology,s1,1",
        "k1,y,F,MD,assistant,cardiology,s1,1",
        "k2,y,F,MD,assistant,cardiology,s1,1",
    ]
    pubs = [f"{pid},q_{pid},1,1,false,,j1,5" for pid in ("c1", "c2", "k1", "k2")]
    paths = write_corpus(tmp_path, roster=roster, publications=pubs, if_rows=["j1,4.0"])
    code, out, _ = run(
        "ttest", "--roster", paths["roster"], "--publications", paths["publications"],
        "--if-table", paths["if_table"], "--case", "x", "--control", "y",
    )
    assert code == 0
    assert "all,papers,2,0.0000,0.0000,0.0000,1,1.000000, (degenerate)\n" in out


def test_ttest_stratified_skips_small_strata(run, demo):
    code, out, _ = run(
        "ttest", *demo(), "--case", "alpha", "--control", "beta", "--by", "title"
    )
    assert code == 0
    assert "# Paired t-tests by title\n" in out
    assert "strata skipped (fewer than 2 pairs): assistant, associate" in out
    assert "\nall," not in out


# ---------------------------------------------------------------------------
# normalize


def test_normalize_demo_tables(run, demo):
    code, out, err = run(
        "normalize", *demo(funding=True), "--case", "alpha", "--control", "beta"
    )
    assert code == 0 and err == ""
    assert "# Funding totals normalized by productivity\n" in out
    assert "# Funded projects normalized by productivity\n" in out
    assert "alpha,2,400000.00,38095.24,18181.82,5479.45\n" in out
    assert "beta,3,450000.00,28571.43,18367.35,6271.78\n" in out
    assert "ratio,0.67,0.89,1.33,0.99,0.87\n" in out
    assert "alpha,2,3,0.286,0.136,0.041\n" in out
    assert "beta,3,4,0.254,0.163,0.056\n" in out
    assert "ratio,0.67,0.75,1.13,0.83,0.73\n" in out
    assert "# ratio row computed from the rounded column values" in out


def test_normalize_rejects_unfunded_label(run, demo):
    code, _, err = run(
        "normalize", *demo(funding=True), "--case", "gamma", "--control", "beta"
    )
    assert code == 1
    assert err == "error: no funded members with group label 'gamma'\n"


# ---------------------------------------------------------------------------
# report


def test_report_full_pipeline(run, demo):
    code, out, err = run(
        "report", *demo(funding=True), "--case", "alpha", "--control", "beta"
    )
    assert code == 0 and err == ""
    for title in (
        "# Group summary (matched cohort)",
        "# Matched pairs",
        "# Paired t-tests by all",
        "# Funding totals normalized by productivity",
        "# Funded projects normalized by productivity",
    ):
        assert title in out
    # the starred pr feature flows into the summary means
    assert "all,alpha,2,1.50±0.71,11.00±9.90,5.25±1.77*" in out
    assert "all,beta,2,1.00±0.00," in out


def test_report_without_funding(run, demo):
    code, out, _ = run(
        "report", *demo(), "--case", "alpha", "--control", "beta"
    )
    assert code == 0
    assert "# Matched pairs" in out
    assert "Funding totals" not in out


# ---------------------------------------------------------------------------
# output plumbing


def test_out_flag_writes_file(run, tmp_path, demo):
    _, stdout_run, _ = run("score", *demo())
    target = tmp_path / "scores.csv"
    code, out, _ = run("score", *demo(), "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text(encoding="utf-8") == stdout_run


def test_text_format(run, demo):
    code, out, _ = run("score", *demo(), "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "Productivity scores"
    assert set(lines[3]) <= {"-", " "}


def test_json_output_and_json_inputs(run, demo, demo_dir, tmp_path):
    corpus = load_corpus(
        demo_dir / "roster.csv",
        demo_dir / "publications.csv",
        funding_path=demo_dir / "funding.csv",
        if_table_path=demo_dir / "if_table.csv",
    )
    paths = save_corpus(corpus, tmp_path, fmt="json")
    # --format json implies JSON input parsing
    code, out, err = run(
        "score", "--roster", str(paths["roster"]),
        "--publications", str(paths["publications"]),
        "--if-table", str(paths["if_table"]), "--format", "json",
    )
    assert code == 0 and err == ""
    payload = json.loads(out)
    assert payload["title"] == "Productivity scores"
    assert ["a1", "2", "18", "6.5", "18.0", "57.0"] in payload["rows"]
    # explicit --input-format json with csv output matches the csv-input run
    _, csv_reference, _ = run("score", *demo())
    code, csv_from_json, _ = run(
        "score", "--roster", str(paths["roster"]),
        "--publications", str(paths["publications"]),
        "--if-table", str(paths["if_table"]),
        "--input-format", "json", "--format", "csv",
    )
    assert code == 0
    assert csv_from_json == csv_reference


def test_json_output_multiple_tables(run, demo):
    code, out, _ = run(
        "report", *demo(funding=True), "--case", "alpha", "--control", "beta",
        "--format", "json", "--input-format", "csv",
    )
    assert code == 0
    payload = json.loads(out)
    assert isinstance(payload, list) and len(payload) == 5
    assert payload[1]["title"] == "Matched pairs"


def test_missing_file_reports_error(run, tmp_path):
    code, out, err = run(
        "score", "--roster", str(tmp_path / "absent.csv"),
        "--publications", str(tmp_path / "absent2.csv"),
    )
    assert code == 1
    assert out == ""
    assert err.startswith("error: ")
