"""Dataset loading and validation.

Four local files feed the analysis: a faculty roster, a publication list,
an optional funding table and an optional journal impact-factor table.
Both CSV (RFC 4180, required header row, UTF-8) and a JSON mirror of the
same schemas are supported.  Every malformed value is rejected with the
file, line and column named; cross-file references are checked so that
downstream modules can assume a consistent corpus.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterator, Optional, Sequence

from .cohort import FacultyRecord
from .credit import Byline, PatternError
from .funding import FundingRecord
from .productivity import PublicationRecord

ROSTER_HEADER = [
    "person_id", "group_label", "gender", "degree", "title",
    "specialty", "school_id", "tier",
]
PUBLICATIONS_HEADER = [
    "person_id", "pub_id", "author_count", "subject_position",
    "is_corresponding", "tie_groups", "journal_key", "citations",
]
FUNDING_HEADER = ["person_id", "project_count", "funding_total"]
IF_TABLE_HEADER = ["journal_key", "impact_factor"]


class CorpusError(ValueError):
    """A dataset file violates its schema or referential integrity."""

    def __init__(self, message: str, path: str = "", line: int = 0, column: str = ""):
        self.path = path
        self.line = line
        self.column = column
        where = path
        if line:
            where += f":{line}"
        if column:
            where += f" (column {column!r})"
        super().__init__(f"{where}: {message}" if where else message)


@dataclass
class Corpus:
    """Validated, cross-referenced view of the four input datasets."""

    roster: list[FacultyRecord]
    publications: dict[str, list[PublicationRecord]]
    funding: dict[str, FundingRecord]
    if_table: dict[str, float]
    warnings: list[str] = field(default_factory=list)

    def roster_by_id(self) -> dict[str, FacultyRecord]:
        return {rec.person_id: rec for rec in self.roster}


def _rows_from_csv(path: Path, header: list[str]) -> Iterator[tuple[int, dict[str, str]]]:
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            first = next(reader)
        except StopIteration:
            raise CorpusError("file is empty, expected a header row", str(path), 1)
        if first != header:
            raise CorpusError(
                f"bad header {first!r}, expected {header!r}", str(path), 1
            )
        for row in reader:
            if not row:
                continue
            if len(row) != len(header):
                raise CorpusError(
                    f"expected {len(header)} fields, got {len(row)}",
                    str(path), reader.line_num,
                )
            yield reader.line_num, dict(zip(header, row))


def _rows_from_json(path: Path, header: list[str]) -> Iterator[tuple[int, dict[str, Any]]]:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CorpusError(f"invalid JSON: {exc.msg}", str(path), exc.lineno) from exc
    if not isinstance(data, list):
        raise CorpusError("top-level JSON value must be an array of objects", str(path), 1)
    for i, obj in enumerate(data, start=1):
        if not isinstance(obj, dict):
            raise CorpusError(f"entry {i} is not an object", str(path), i)
        missing = [k for k in header if k not in obj]
        if missing:
            raise CorpusError(
                f"entry {i} is missing fields {missing}", str(path), i
            )
        extra = [k for k in obj if k not in header]
        if extra:
            raise CorpusError(f"entry {i} has unknown fields {extra}", str(path), i)
        yield i, obj


def _rows(path: Path, header: list[str], fmt: str) -> Iterator[tuple[int, dict[str, Any]]]:
    if fmt == "json":
        return _rows_from_json(path, header)
    return _rows_from_csv(path, header)


def _parse_int(value: Any, path: str, line: int, column: str, minimum: int = 0) -> int:
    try:
        if isinstance(value, bool):
            raise ValueError
        out = int(str(value).strip())
    except (TypeError, ValueError):
        raise CorpusError(f"not an integer: {value!r}", path, line, column) from None
    if out < minimum:
        raise CorpusError(f"must be >= {minimum}, got {out}", path, line, column)
    return out


def _parse_float(value: Any, path: str, line: int, column: str, minimum: float = 0.0) -> float:
    try:
        out = float(str(value).strip())
    except (TypeError, ValueError):
        raise CorpusError(f"not a number: {value!r}", path, line, column) from None
    if out != out or out in (float("inf"), float("-inf")):
        raise CorpusError(f"not finite: {value!r}", path, line, column)
    if out < minimum:
        raise CorpusError(f"must be >= {minimum}, got {out}", path, line, column)
    return out


def _parse_bool(value: Any, path: str, line: int, column: str) -> bool:
    if isinstance(value, bool):
        return value
    token = str(value).strip().lower()
    if token == "true":
        return True
    if token == "false":
        return False
    raise CorpusError(f"expected true or false, got {value!r}", path, line, column)


def _parse_id(value: Any, path: str, line: int, column: str) -> str:
    out = str(value).strip()
    if not out:
        raise CorpusError("must not be empty", path, line, column)
    return out


def parse_tie_groups(text: str) -> tuple[tuple[int, ...], ...]:
    """Parse the tie encoding ``"1;2,3;4"`` into position groups."""
    groups = []
    for part in text.split(";"):
        positions = tuple(int(p.strip()) for p in part.split(",") if p.strip())
        if not positions:
            raise ValueError(f"empty tie group in {text!r}")
        groups.append(positions)
    return tuple(groups)


def format_tie_groups(ties: Sequence[Sequence[int]]) -> str:
    return ";".join(",".join(str(p) for p in grp) for grp in ties)


def _parse_ties(value: Any, path: str, line: int, column: str):
    if value is None:
        return None
    if isinstance(value, list):
        try:
            return tuple(tuple(int(p) for p in grp) for grp in value)
        except (TypeError, ValueError):
            raise CorpusError(
                f"tie groups must be lists of positions: {value!r}", path, line, column
            ) from None
    text = str(value).strip()
    if not text:
        return None
    try:
        return parse_tie_groups(text)
    except ValueError as exc:
        raise CorpusError(str(exc), path, line, column) from None


def _load_roster(path: Path, fmt: str) -> list[FacultyRecord]:
    roster: list[FacultyRecord] = []
    seen: set[str] = set()
    p = str(path)
    for line, row in _rows(path, ROSTER_HEADER, fmt):
        pid = _parse_id(row["person_id"], p, line, "person_id")
        if pid in seen:
            raise CorpusError(f"duplicate person_id {pid!r}", p, line, "person_id")
        seen.add(pid)
        tier = _parse_int(row["tier"], p, line, "tier", minimum=1)
        if tier not in (1, 2, 3):
            raise CorpusError(f"tier must be 1, 2 or 3, got {tier}", p, line, "tier")
        roster.append(
            FacultyRecord(
                person_id=pid,
                group_label=_parse_id(row["group_label"], p, line, "group_label"),
                gender=_parse_id(row["gender"], p, line, "gender"),
                degree=_parse_id(row["degree"], p, line, "degree"),
                title=_parse_id(row["title"], p, line, "title"),
                specialty=_parse_id(row["specialty"], p, line, "specialty"),
                school_id=_parse_id(row["school_id"], p, line, "school_id"),
                tier=tier,
            )
        )
    return roster


def _load_if_table(path: Path, fmt: str) -> dict[str, float]:
    table: dict[str, float] = {}
    p = str(path)
    for line, row in _rows(path, IF_TABLE_HEADER, fmt):
        key = _parse_id(row["journal_key"], p, line, "journal_key")
        if key in table:
            raise CorpusError(f"duplicate journal_key {key!r}", p, line, "journal_key")
        table[key] = _parse_float(row["impact_factor"], p, line, "impact_factor")
    return table


def _load_publications(
    path: Path,
    fmt: str,
    roster_ids: set[str],
    if_table: dict[str, float],
    warnings: list[str],
) -> dict[str, list[PublicationRecord]]:
    pubs: dict[str, list[PublicationRecord]] = {}
    seen: set[tuple[str, str]] = set()
    unresolved: dict[str, int] = {}
    p = str(path)
    for line, row in _rows(path, PUBLICATIONS_HEADER, fmt):
        pid = _parse_id(row["person_id"], p, line, "person_id")
        if pid not in roster_ids:
            raise CorpusError(
                f"person_id {pid!r} not present in the roster", p, line, "person_id"
            )
        pub_id = _parse_id(row["pub_id"], p, line, "pub_id")
        if (pid, pub_id) in seen:
            raise CorpusError(
                f"duplicate publication {pub_id!r} for person {pid!r}", p, line, "pub_id"
            )
        seen.add((pid, pub_id))
        author_count = _parse_int(row["author_count"], p, line, "author_count", minimum=1)
        position = _parse_int(row["subject_position"], p, line, "subject_position", minimum=1)
        corresponding = _parse_bool(row["is_corresponding"], p, line, "is_corresponding")
        ties = _parse_ties(row.get("tie_groups"), p, line, "tie_groups")
        journal_key = _parse_id(row["journal_key"], p, line, "journal_key")
        citations = _parse_int(row["citations"], p, line, "citations")
        try:
            byline = Byline(
                author_count=author_count,
                subject_position=position,
                corresponding=frozenset({position}) if corresponding else frozenset(),
                ties=ties,
            )
        except PatternError as exc:
            raise CorpusError(str(exc), p, line, "byline") from exc
        impact_factor = if_table.get(journal_key)
        if impact_factor is None:
            impact_factor = 0.0
            unresolved[journal_key] = unresolved.get(journal_key, 0) + 1
        pubs.setdefault(pid, []).append(
            PublicationRecord(
                pub_id=pub_id,
                byline=byline,
                impact_factor=impact_factor,
                citations=citations,
                journal_key=journal_key,
            )
        )
    for key in sorted(unresolved):
        warnings.append(
            f"journal_key {key!r} not in the impact-factor table; "
            f"{unresolved[key]} record(s) scored with impact factor 0"
        )
    return pubs


def _load_funding(path: Path, fmt: str, roster_ids: set[str]) -> dict[str, FundingRecord]:
    funding: dict[str, FundingRecord] = {}
    p = str(path)
    for line, row in _rows(path, FUNDING_HEADER, fmt):
        pid = _parse_id(row["person_id"], p, line, "person_id")
        if pid not in roster_ids:
            raise CorpusError(
                f"person_id {pid!r} not present in the roster", p, line, "person_id"
            )
        if pid in funding:
            raise CorpusError(f"duplicate funding row for {pid!r}", p, line, "person_id")
        projects = _parse_int(row["project_count"], p, line, "project_count")
        total = _parse_float(row["funding_total"], p, line, "funding_total")
        try:
            funding[pid] = FundingRecord(pid, projects, total)
        except ValueError as exc:
            raise CorpusError(str(exc), p, line, "funding_total") from exc
    return funding


def load_corpus(
    roster_path: str | Path,
    publications_path: str | Path | None = None,
    funding_path: str | Path | None = None,
    if_table_path: str | Path | None = None,
    fmt: str = "csv",
) -> Corpus:
    """Load and cross-validate the datasets.

    Everything but the roster is optional: a missing publications file
    yields an empty publications map, a missing funding file an empty
    funding map, and a missing impact-factor table scores every journal
    at 0 (each unresolved key is reported in ``warnings``).
    """
    if fmt not in ("csv", "json"):
        raise CorpusError(f"unsupported format {fmt!r}, expected csv or json")
    warnings: list[str] = []
    roster = _load_roster(Path(roster_path), fmt)
    roster_ids = {rec.person_id for rec in roster}
    if_table: dict[str, float] = {}
    if if_table_path is not None:
        if_table = _load_if_table(Path(if_table_path), fmt)
    publications: dict[str, list[PublicationRecord]] = {}
    if publications_path is not None:
        publications = _load_publications(
            Path(publications_path), fmt, roster_ids, if_table, warnings
        )
    funding: dict[str, FundingRecord] = {}
    if funding_path is not None:
        funding = _load_funding(Path(funding_path), fmt, roster_ids)
    return Corpus(roster, publications, funding, if_table, warnings)


def _dump(path: Path, header: list[str], rows: list[list[Any]], fmt: str) -> None:
    if fmt == "json":
        records = [dict(zip(header, row)) for row in rows]
        path.write_text(json.dumps(records, indent=2) + "\n", encoding="utf-8")
        return
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def save_corpus(corpus: Corpus, directory: str | Path, fmt: str = "csv") -> dict[str, Path]:
    """Write a corpus back to the four dataset files; returns the paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    ext = "json" if fmt == "json" else "csv"
    paths = {
        name: directory / f"{name}.{ext}"
        for name in ("roster", "publications", "funding", "if_table")
    }
    _dump(
        paths["roster"],
        ROSTER_HEADER,
        [
            [r.person_id, r.group_label, r.gender, r.degree, r.title,
             r.specialty, r.school_id, r.tier]
            for r in corpus.roster
        ],
        fmt,
    )
    pub_rows: list[list[Any]] = []
    for pid in corpus.publications:
        for rec in corpus.publications[pid]:
            b = rec.byline
            is_corr: Any = b.subject_position in b.corresponding
            if fmt == "json":
                ties: Any = [list(grp) for grp in b.ties] if b.ties else ""
            else:
                ties = format_tie_groups(b.ties) if b.ties else ""
                is_corr = "true" if is_corr else "false"
            pub_rows.append(
                [pid, rec.pub_id, b.author_count, b.subject_position,
                 is_corr, ties, rec.journal_key, rec.citations]
            )
    _dump(paths["publications"], PUBLICATIONS_HEADER, pub_rows, fmt)
    _dump(
        paths["funding"],
        FUNDING_HEADER,
        [
            [f.person_id, f.project_count, f.funding_total]
            for f in corpus.funding.values()
        ],
        fmt,
    )
    _dump(
        paths["if_table"],
        IF_TABLE_HEADER,
        [[k, v] for k, v in corpus.if_table.items()],
        fmt,
    )
    return paths
