#!/usr/bin/env python3
"""Rebuild the normalized funding comparison from frozen reference aggregates.

The group aggregates below are fixed constants (dollar totals, funded project
counts and the productivity-index sums implied by the reference per-index
columns).  Running the script regenerates the dollars-per-index and
projects-per-index tables, including the ratio rows computed from the rounded
column values; the expected outputs are pinned in tests/test_acceptance.py.
"""

from __future__ import annotations

import argparse
import sys

from scicredit import GroupAggregate, funding_table, normalized_funding, render

CASE = GroupAggregate(
    group_label="case",
    n_people=22,
    funding_total=20_140_082.0,
    project_count=22,
    pr_sum=20_140_082.0 / 164_565.69,
    pc_sum=20_140_082.0 / 122_423.76,
    pcif_sum=20_140_082.0 / 20_247.54,
)
CONTROL = GroupAggregate(
    group_label="control",
    n_people=37,
    funding_total=43_796_537.0,
    project_count=37,
    pr_sum=43_796_537.0 / 220_860.92,
    pc_sum=43_796_537.0 / 115_781.91,
    pcif_sum=43_796_537.0 / 12_503.74,
)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--format", dest="fmt", choices=("csv", "json", "text"),
                        default="text", help="output encoding (default: text)")
    args = parser.parse_args(argv)

    ratios = normalized_funding(CASE, CONTROL)
    tables = [
        funding_table(ratios, "funding_total"),
        funding_table(ratios, "project_count"),
    ]
    sys.stdout.write(render(tables, args.fmt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
