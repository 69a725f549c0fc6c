"""Shared fixtures: demo dataset paths and roster builders."""

from __future__ import annotations

from pathlib import Path

import pytest

from scicredit import FacultyRecord

DATA = Path(__file__).parent / "data"


@pytest.fixture
def demo_dir() -> Path:
    """Directory with the small hand-written CSV corpus."""
    return DATA / "demo"


def make_faculty(person_id: str, group_label: str, **overrides) -> FacultyRecord:
    """A roster member with sane defaults, overridable per matching field."""
    fields = {
        "gender": "F",
        "degree": "MD",
        "title": "assistant",
        "specialty": "cardiology",
        "school_id": "s1",
        "tier": 1,
    }
    fields.update(overrides)
    return FacultyRecord(person_id=person_id, group_label=group_label, **fields)


def synthetic_values(mean: float, sd: float, n: int) -> list[float]:
    """A vector of n values whose sample mean and sd (n-1) equal the targets.

    Even n: half the values at mean+d, half at mean-d with
    d = sd * sqrt((n-1)/n).  Odd n: (n-1)/2 at mean+sd, (n-1)/2 at
    mean-sd, one at the mean.
    """
    if n < 1:
        raise ValueError("need at least one value")
    if n == 1:
        return [mean]
    if n % 2 == 0:
        d = sd * ((n - 1) / n) ** 0.5
        return [mean + d] * (n // 2) + [mean - d] * (n // 2)
    k = (n - 1) // 2
    return [mean + sd] * k + [mean - sd] * k + [mean]
