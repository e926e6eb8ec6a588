"""Inter-rater agreement and descriptive statistics over reading passes.

Agreement is measured per paper with Fleiss' kappa over the union of items
the two blind rounds mentioned, rated present/absent by each round. Papers
are summarized by the median kappa rather than a pooled statistic, so papers
with many claims cannot dominate the result.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from dor.errors import CoverageError, EmptyDataError, ShapeError
from dor.identity import CanonicalKey
from dor.ingest import ClaimLedger, ClaimLedgerEntry
from dor.model import ReadingPass, ReuseKind


@dataclass(frozen=True)
class RatingMatrix:
    """Item-by-category counts of rater assignments.

    Row i, column j holds how many raters put item i in category j. Every
    item must have been rated by the same number of raters (the row sum).
    """

    counts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.counts) < 1:
            raise ShapeError("rating matrix needs at least one item row")
        width = len(self.counts[0])
        if width < 2:
            raise ShapeError("rating matrix needs at least two categories")
        row_sums = set()
        for row in self.counts:
            if len(row) != width:
                raise ShapeError("rating matrix rows must have equal length")
            for cell in row:
                if not isinstance(cell, int) or cell < 0:
                    raise ShapeError(f"cell counts must be nonnegative integers, got {cell!r}")
            row_sums.add(sum(row))
        if len(row_sums) != 1:
            raise ShapeError(f"every item needs the same number of ratings, saw sums {sorted(row_sums)}")
        if row_sums.pop() < 2:
            raise ShapeError("rating matrix needs at least two raters per item")

    @property
    def raters_per_item(self) -> int:
        return sum(self.counts[0])


class _EmptyAgreement:
    """Marker for a paper where both rounds found nothing to claim.

    There are no items to rate, but the rounds agree perfectly, so the
    marker is scored as kappa = 1.
    """

    def __repr__(self) -> str:
        return "EMPTY_AGREEMENT"


EMPTY_AGREEMENT = _EmptyAgreement()

PaperAgreement = Union[RatingMatrix, _EmptyAgreement]


def fleiss_kappa(matrix: RatingMatrix) -> float:
    """Fleiss' chance-corrected multi-rater agreement coefficient.

    Per-item agreement is the fraction of concordant rater pairs,
    (sum_j n_ij^2 - n) / (n (n - 1)); expected agreement comes from the
    squared marginal category proportions. When every rating landed in a
    single category the expected agreement is 1 and the usual ratio is
    0/0; that is unanimous rating, so the result is 1 by convention.
    """
    counts = np.asarray(matrix.counts, dtype=np.float64)
    n = matrix.raters_per_item
    per_item = (np.square(counts).sum(axis=1) - n) / (n * (n - 1))
    p_observed = float(per_item.mean())
    proportions = counts.sum(axis=0) / counts.sum()
    p_expected = float(np.square(proportions).sum())
    if p_expected == 1.0:
        return 1.0
    return (p_observed - p_expected) / (1.0 - p_expected)


def _round_items(passes: Sequence[ReadingPass], round_number: int) -> set[tuple[CanonicalKey, ReuseKind]]:
    items: set[tuple[CanonicalKey, ReuseKind]] = set()
    for p in passes:
        if p.round == round_number:
            items.update(
                (CanonicalKey(ref.source_type, ref.key), kind) for ref, kind in p.claims
            )
    return items


def paper_agreement(
    passes: Sequence[ReadingPass], rounds: tuple[int, int] = (1, 2)
) -> PaperAgreement:
    """Present/absent rating matrix for one paper's two reading rounds.

    Items are the union of (source, kind) claims across the two rounds; each
    round rates every item present or absent. Two passes that both found no
    reuse have an empty union and return :data:`EMPTY_AGREEMENT`.
    """
    first, second = rounds
    covered = {p.round for p in passes}
    if first not in covered or second not in covered:
        raise CoverageError(
            f"need passes in rounds {first} and {second}, have rounds {sorted(covered)}"
        )
    items_first = _round_items(passes, first)
    items_second = _round_items(passes, second)
    union = items_first | items_second
    if not union:
        return EMPTY_AGREEMENT
    ordered = sorted(union, key=lambda item: (item[0].source_type.value, item[0].key, item[1].value))
    rows = []
    for item in ordered:
        present = int(item in items_first) + int(item in items_second)
        rows.append((present, 2 - present))
    return RatingMatrix(counts=tuple(rows))


def agreement_kappa(agreement: PaperAgreement) -> float:
    if isinstance(agreement, _EmptyAgreement):
        return 1.0
    return fleiss_kappa(agreement)


@dataclass(frozen=True)
class AgreementReport:
    """Per-paper kappa values over the blind double-read, with their median.

    Kappa here measures agreement on mentioned items only: sources neither
    reader brought up do not form an absent/absent universe to rate.
    """

    per_paper_kappa: dict[str, float]
    median_kappa: Optional[float]
    papers_skipped: list[str]


def agreement_report(
    passes: Sequence[ReadingPass], rounds: tuple[int, int] = (1, 2)
) -> AgreementReport:
    """Compute kappa per paper covered by both rounds; skip the rest.

    Round-3 passes never enter: agreement is a property of the blind
    double-read, not of dispute resolution.
    """
    by_paper: dict[str, list[ReadingPass]] = {}
    for p in passes:
        by_paper.setdefault(p.paper_doi, []).append(p)
    per_paper: dict[str, float] = {}
    skipped: list[str] = []
    for doi in sorted(by_paper):
        paper_passes = by_paper[doi]
        covered = {p.round for p in paper_passes}
        if rounds[0] not in covered or rounds[1] not in covered:
            skipped.append(doi)
            continue
        per_paper[doi] = agreement_kappa(paper_agreement(paper_passes, rounds))
    median = statistics.median(per_paper.values()) if per_paper else None
    return AgreementReport(per_paper_kappa=per_paper, median_kappa=median, papers_skipped=skipped)


@dataclass
class ReadingTimeStats:
    """Quartiles of recorded reading minutes plus per-reader learning curves."""

    median: float
    q1: float
    q3: float
    per_reader: dict[str, list[int]]


def reading_time_stats(passes: Sequence[ReadingPass]) -> ReadingTimeStats:
    """Median and quartiles over all timed passes; untimed passes are excluded.

    The learning curve is each reader's sequence of minutes in pass order,
    which is where the drop from first-paper times shows up.
    """
    timed = [p for p in passes if p.minutes is not None]
    if not timed:
        raise EmptyDataError("no passes have recorded minutes")
    minutes = sorted(p.minutes for p in timed)
    if len(minutes) == 1:
        q1 = med = q3 = float(minutes[0])
    else:
        q1, med, q3 = statistics.quantiles(minutes, n=4, method="inclusive")
    per_reader: dict[str, list[int]] = {}
    for p in timed:
        per_reader.setdefault(p.reader, []).append(p.minutes)
    return ReadingTimeStats(median=med, q1=q1, q3=q3, per_reader=per_reader)


def year_histogram(
    ledger: ClaimLedger, items: Iterable[ClaimLedgerEntry]
) -> dict[Optional[int], int]:
    """Count reuse items by the year their source was created.

    Items whose source has no recorded year land in the ``None`` bucket.
    """
    histogram: dict[Optional[int], int] = {}
    for entry in items:
        year = ledger.source_year(entry.source)
        histogram[year] = histogram.get(year, 0) + 1
    return histogram
