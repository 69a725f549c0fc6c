"""Co-author credit shares under an ordering + normalization axiom system.

A byline is modeled as ordered tie groups: ``m`` groups of sizes
``c_1..c_m``, every author inside a group holding the same share, group 1
the most credited.  Admissible share vectors satisfy

    x_1 >= x_2 >= ... >= x_m > 0          (ordering)
    c_1*x_1 + c_2*x_2 + ... + c_m*x_m = 1 (normalization)

and the fair share of group ``k`` is defined as the expectation of ``x_k``
under the uniform distribution over that domain (maximum entropy: every
admissible vector is equally likely).

Closed form.  Write the spacings ``y_j = x_j - x_{j+1}`` (with
``x_{m+1} = 0``); ordering is exactly ``y_j >= 0``.  With cumulative group
sizes ``C_j = c_1 + ... + c_j`` the normalization becomes
``sum_j C_j * y_j = 1``, so ``z_j = C_j * y_j`` maps the admissible set by
a linear bijection onto the standard ``(m-1)``-simplex.  A linear bijection
carries the uniform law to the uniform law, the coordinates of a uniform
point on the simplex are exchangeable, hence ``E[z_j] = 1/m`` and

    E[x_k] = sum_{j>=k} E[z_j] / C_j = (1/m) * sum_{j>=k} 1/C_j.

`a_index` evaluates this expression; `a_index_oracle` estimates the same
expectation by direct rejection sampling of the uniform law and serves as
an independent cross-check.  The classic inflated, fractional and harmonic
counting baselines are provided for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Optional, Sequence

import numpy as np

#: absolute tolerance on sum(c_k * x_k) == 1 enforced by CreditVector
CONSERVATION_TOL = 1e-12

#: rows drawn per sampling chunk in the Monte Carlo oracle (memory bound)
_CHUNK_ROWS = 1 << 18


class PatternError(ValueError):
    """Byline or group-pattern input violates the domain contract."""


class SampleBudgetError(RuntimeError):
    """A rejection-sampling run accepted no draws within its budget."""


@dataclass(frozen=True)
class AuthorGroupPattern:
    """Ordered tie-group sizes of a byline, highest-credit group first."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        try:
            counts = tuple(int(c) for c in self.counts)
        except (TypeError, ValueError) as exc:
            raise PatternError(f"group sizes must be integers: {self.counts!r}") from exc
        if not counts:
            raise PatternError("pattern needs at least one group")
        if any(c < 1 for c in counts):
            raise PatternError(f"group sizes must be positive: {counts}")
        object.__setattr__(self, "counts", counts)

    @property
    def m(self) -> int:
        """Number of tie groups."""
        return len(self.counts)

    @property
    def n(self) -> int:
        """Total number of authors."""
        return sum(self.counts)

    @property
    def cumulative(self) -> tuple[int, ...]:
        """Cumulative group sizes C_1 < C_2 < ... < C_m = n."""
        return tuple(accumulate(self.counts))


@dataclass(frozen=True)
class CreditVector:
    """Per-group credit shares for a given pattern.

    Invariants are enforced at construction: shares are non-increasing,
    strictly positive, and conserve total credit
    (``sum(c_k * x_k) == 1`` within `CONSERVATION_TOL`).
    """

    group_shares: tuple[float, ...]
    pattern: AuthorGroupPattern

    def __post_init__(self) -> None:
        shares = tuple(float(s) for s in self.group_shares)
        object.__setattr__(self, "group_shares", shares)
        if len(shares) != self.pattern.m:
            raise PatternError(
                f"{len(shares)} shares for {self.pattern.m} groups"
            )
        if any(b > a for a, b in zip(shares, shares[1:])):
            raise PatternError(f"shares must be non-increasing: {shares}")
        if shares[-1] <= 0.0:
            raise PatternError(f"shares must be positive: {shares}")
        total = math.fsum(c * s for c, s in zip(self.pattern.counts, shares))
        if abs(total - 1.0) > CONSERVATION_TOL:
            raise PatternError(f"credit not conserved: sum={total!r}")

    def share(self, group: int) -> float:
        """Share of the 1-based tie group ``group``."""
        if not 1 <= group <= self.pattern.m:
            raise PatternError(f"group {group} out of range 1..{self.pattern.m}")
        return self.group_shares[group - 1]

    def per_author(self) -> tuple[float, ...]:
        """Shares expanded to one entry per author, byline order."""
        out: list[float] = []
        for c, s in zip(self.pattern.counts, self.group_shares):
            out.extend([s] * c)
        return tuple(out)


@dataclass(frozen=True)
class Byline:
    """Authorship roles of one paper as seen from one author (the subject).

    ``corresponding`` lists the 1-based positions flagged as corresponding
    authors.  ``ties`` optionally declares explicit equal-credit position
    groups and must partition ``1..author_count`` when given.
    """

    author_count: int
    subject_position: int
    corresponding: frozenset[int] = frozenset()
    ties: Optional[tuple[tuple[int, ...], ...]] = None

    def __post_init__(self) -> None:
        if self.author_count < 1:
            raise PatternError(f"author_count must be >= 1, got {self.author_count}")
        if not 1 <= self.subject_position <= self.author_count:
            raise PatternError(
                f"subject position {self.subject_position} outside 1..{self.author_count}"
            )
        corresponding = frozenset(int(p) for p in self.corresponding)
        if any(not 1 <= p <= self.author_count for p in corresponding):
            raise PatternError(
                f"corresponding positions {sorted(corresponding)} outside 1..{self.author_count}"
            )
        object.__setattr__(self, "corresponding", corresponding)
        if self.ties is not None:
            ties = tuple(tuple(int(p) for p in grp) for grp in self.ties)
            flat = sorted(p for grp in ties for p in grp)
            if flat != list(range(1, self.author_count + 1)):
                raise PatternError(
                    f"tie groups {ties} do not partition 1..{self.author_count}"
                )
            object.__setattr__(self, "ties", ties)


def a_index(pattern: AuthorGroupPattern) -> CreditVector:
    """Expected ordered shares: ``x_k = (1/m) * sum_{j>=k} 1/C_j``.

    See the module docstring for the derivation.  The result satisfies the
    `CreditVector` invariants by construction.
    """
    m = pattern.m
    suffix = 0.0
    shares = [0.0] * m
    for k in range(m - 1, -1, -1):
        suffix += 1.0 / pattern.cumulative[k]
        shares[k] = suffix / m
    return CreditVector(tuple(shares), pattern)


@dataclass(frozen=True)
class OracleEstimate:
    """Monte Carlo estimate of the expected ordered shares."""

    estimate: CreditVector
    stderr: tuple[float, ...]
    accepted: int
    budget: int


def a_index_oracle(
    pattern: AuthorGroupPattern, sample_budget: int, seed: int = 0
) -> OracleEstimate:
    """Estimate expected shares by rejection sampling the uniform law.

    Draws ``w`` uniform on the standard simplex (unit-rate exponentials
    normalized by their sum), maps ``x_i = w_i / c_i`` (a linear bijection
    onto the normalization hyperplane, so uniformity is preserved), and
    keeps only draws with non-increasing coordinates.  Means and standard
    errors are computed over the accepted draws.  Deterministic for a
    fixed ``seed``.

    ``sample_budget`` is the total number of draws attempted; raises
    `SampleBudgetError` when none are accepted.
    """
    if sample_budget < 1:
        raise PatternError(f"sample_budget must be >= 1, got {sample_budget}")
    m = pattern.m
    if m == 1:
        # zero-dimensional domain: every draw is the single point 1/c_1
        exact = a_index(pattern)
        return OracleEstimate(exact, (0.0,), sample_budget, sample_budget)

    counts = np.asarray(pattern.counts, dtype=np.float64)
    rng = np.random.default_rng(seed)
    sums = np.zeros(m)
    sumsq = np.zeros(m)
    accepted = 0
    remaining = sample_budget
    while remaining > 0:
        rows = min(remaining, _CHUNK_ROWS)
        remaining -= rows
        draws = rng.standard_exponential((rows, m))
        draws /= draws.sum(axis=1, keepdims=True)
        draws /= counts
        kept = draws[np.all(draws[:, :-1] >= draws[:, 1:], axis=1)]
        if kept.shape[0]:
            accepted += kept.shape[0]
            sums += kept.sum(axis=0)
            sumsq += np.square(kept).sum(axis=0)
    if accepted == 0:
        raise SampleBudgetError(
            f"no draws accepted for pattern {pattern.counts} within budget "
            f"{sample_budget}; raise the budget"
        )
    means = sums / accepted
    if accepted > 1:
        var = np.maximum(sumsq - accepted * means**2, 0.0) / (accepted - 1)
        stderr = tuple(np.sqrt(var / accepted).tolist())
    else:
        stderr = (math.inf,) * m
    estimate = CreditVector(tuple(means.tolist()), pattern)
    return OracleEstimate(estimate, stderr, accepted, sample_budget)


def pattern_from_byline(
    byline: Byline, merge_corresponding: bool = True
) -> tuple[AuthorGroupPattern, int]:
    """Turn authorship roles into a group pattern.

    Base grouping is the explicit tie partition when given, otherwise
    singleton groups in byline order.  With ``merge_corresponding`` the
    group holding position 1 and every group holding a corresponding
    author merge into group 1 (first and corresponding authors carry equal
    weight; equal-credit ties merge as a whole).  Remaining groups keep
    byline order.  Returns the pattern and the 1-based index of the group
    containing the subject.
    """
    n = byline.author_count
    if byline.ties is not None:
        # partition of 1..n validated by the Byline constructor
        groups = sorted((sorted(grp) for grp in byline.ties), key=lambda grp: grp[0])
    else:
        groups = [[p] for p in range(1, n + 1)]

    if merge_corresponding and byline.corresponding:
        lead = set(byline.corresponding) | {1}
        merged = sorted(
            {p for grp in groups if lead.intersection(grp) for p in grp}
        )
        rest = [grp for grp in groups if not lead.intersection(grp)]
        groups = [merged] + rest

    counts = AuthorGroupPattern(tuple(len(grp) for grp in groups))
    subject_group = next(
        i for i, grp in enumerate(groups, start=1) if byline.subject_position in grp
    )
    return counts, subject_group


def harmonic_credit(n: int) -> CreditVector:
    """Harmonic counting: author ``k`` gets ``(1/k) / sum_j 1/j``."""
    if n < 1:
        raise PatternError(f"author count must be >= 1, got {n}")
    denom = math.fsum(1.0 / j for j in range(1, n + 1))
    shares = tuple((1.0 / k) / denom for k in range(1, n + 1))
    return CreditVector(shares, AuthorGroupPattern((1,) * n))


def fractional_credit(n: int) -> CreditVector:
    """Fractional counting: every author gets ``1/n``."""
    if n < 1:
        raise PatternError(f"author count must be >= 1, got {n}")
    return CreditVector((1.0 / n,), AuthorGroupPattern((n,)))


def inflated_credit(n: int) -> tuple[float, ...]:
    """Inflated counting: every author gets full credit 1.

    The result deliberately does not conserve credit, so it is returned as
    a raw per-author list rather than a `CreditVector`.
    """
    if n < 1:
        raise PatternError(f"author count must be >= 1, got {n}")
    return (1.0,) * n


def all_patterns(max_authors: int) -> Iterable[AuthorGroupPattern]:
    """Every composition of 1..max_authors as a group pattern."""
    for n in range(1, max_authors + 1):
        yield from _compositions(n)


def _compositions(n: int) -> Iterable[AuthorGroupPattern]:
    def rec(rest: int, prefix: tuple[int, ...]):
        if rest == 0:
            yield AuthorGroupPattern(prefix)
            return
        for first in range(1, rest + 1):
            yield from rec(rest - first, prefix + (first,))

    yield from rec(n, ())
