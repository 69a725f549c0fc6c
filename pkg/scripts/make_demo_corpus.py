#!/usr/bin/env python3
"""Generate a seeded synthetic dataset in the scicredit input schema.

Writes roster, publications, funding and impact-factor files to a directory
so the CLI can be exercised end to end, e.g.::

    python3 scripts/make_demo_corpus.py --out-dir /tmp/demo --seed 1
    scicredit report --roster /tmp/demo/roster.csv \
        --publications /tmp/demo/publications.csv \
        --if-table /tmp/demo/if_table.csv --funding /tmp/demo/funding.csv \
        --case case --control control
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from scicredit import Byline, Corpus, FundingRecord, PublicationRecord, save_corpus
from scicredit.cohort import FacultyRecord

GENDERS = ("F", "M")
DEGREES = ("MD", "PhD")
TITLES = ("assistant", "associate", "professor")
SPECIALTIES = ("cardiology", "oncology", "neurology", "dermatology")
SCHOOLS = ("s1", "s2", "s3", "s4")


def _random_ties(rng: random.Random, n: int) -> tuple[tuple[int, ...], ...] | None:
    if n < 2 or rng.random() > 0.3:
        return None
    groups: list[list[int]] = [[1]]
    for pos in range(2, n + 1):
        if rng.random() < 0.5:
            groups[-1].append(pos)
        else:
            groups.append([pos])
    if len(groups) == n:
        return None  # every group is a singleton; same as no ties
    return tuple(tuple(g) for g in groups)


def _random_publication(rng: random.Random, pub_id: str, journals: dict[str, float]) -> PublicationRecord:
    n = rng.randint(1, 8)
    position = rng.randint(1, n)
    corresponding = frozenset({position}) if rng.random() < 0.2 else frozenset()
    byline = Byline(
        author_count=n,
        subject_position=position,
        corresponding=corresponding,
        ties=_random_ties(rng, n),
    )
    journal = rng.choice(sorted(journals))
    return PublicationRecord(
        pub_id=pub_id,
        byline=byline,
        impact_factor=journals[journal],
        citations=rng.randint(0, 80),
        journal_key=journal,
    )


def build_corpus(people: int, seed: int) -> Corpus:
    rng = random.Random(seed)
    journals = {f"j{i:02d}": round(rng.uniform(0.4, 15.0), 1) for i in range(1, 13)}

    roster: list[FacultyRecord] = []
    publications: dict[str, list[PublicationRecord]] = {}
    funding: dict[str, FundingRecord] = {}
    serial = 0
    for i in range(1, people + 1):
        pid = f"p{i:03d}"
        roster.append(
            FacultyRecord(
                person_id=pid,
                group_label="case" if i % 3 == 0 else "control",
                gender=rng.choice(GENDERS),
                degree=rng.choice(DEGREES),
                title=rng.choice(TITLES),
                specialty=rng.choice(SPECIALTIES),
                school_id=rng.choice(SCHOOLS),
                tier=rng.randint(1, 3),
            )
        )
        pubs = []
        for _ in range(rng.randint(0, 6)):
            serial += 1
            pubs.append(_random_publication(rng, f"pub{serial:04d}", journals))
        publications[pid] = pubs
        if pubs and rng.random() < 0.4:
            funding[pid] = FundingRecord(
                person_id=pid,
                project_count=rng.randint(1, 4),
                funding_total=float(rng.randrange(50_000, 800_000, 500)),
            )
    return Corpus(roster=roster, publications=publications, funding=funding, if_table=journals)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", required=True, help="directory to write the dataset into")
    parser.add_argument("--people", type=int, default=60,
                        help="number of roster members (default: 60)")
    parser.add_argument("--seed", type=int, default=0, help="random seed (default: 0)")
    parser.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv",
                        help="dataset encoding (default: csv)")
    args = parser.parse_args(argv)

    corpus = build_corpus(args.people, args.seed)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = save_corpus(corpus, out_dir, fmt=args.fmt)

    n_pubs = sum(len(v) for v in corpus.publications.values())
    print(f"wrote {len(corpus.roster)} people, {n_pubs} publications, "
          f"{len(corpus.funding)} funding rows, {len(corpus.if_table)} journals")
    for kind, path in paths.items():
        print(f"  {kind}: {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
