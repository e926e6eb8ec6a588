"""Domain types: reuse kinds, source types, papers, reading passes, packets.

All values are immutable after construction and safe to share between
threads; validation happens in ``__post_init__`` so an instance that exists
is an instance that holds its invariants.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from enum import Enum
from typing import IO, Iterable, Optional

from dor.errors import IntegrityError, ParseError, VocabularyError

MIN_PAPER_YEAR = 1950

DEFAULT_VENUES = frozenset({"ICSE", "ASE", "ESECFSE", "ICSME", "MSR", "ESEM"})

PAPERS_HEADER = ["doi", "venue", "year", "title", "authors"]


class ReuseKind(Enum):
    """The closed vocabulary of reuse categories readers record."""

    STEPPING_STONE = "stepping_stone"
    STATISTICAL_METHOD = "statistical_method"
    METRIC_METHOD = "metric_method"
    DATASET = "dataset"
    SANITY_CHECK = "sanity_check"
    TOOL_REPLICATION = "tool_replication"


class SourceType(Enum):
    """What a reused source is: peer-reviewed paper, preprint, website, repo."""

    DOI = "doi"
    PREPRINT = "preprint"
    WEBSITE = "website"
    REPO = "repo"


_KINDS_BY_TOKEN = {kind.value: kind for kind in ReuseKind}
_SOURCE_TYPES_BY_TOKEN = {st.value: st for st in SourceType}


def parse_kind(token: str) -> ReuseKind:
    """Map a kind token to its ReuseKind, case-insensitively.

    Raises VocabularyError for anything outside the six legal values.
    """
    kind = _KINDS_BY_TOKEN.get(token.strip().lower())
    if kind is None:
        legal = ", ".join(sorted(_KINDS_BY_TOKEN))
        raise VocabularyError(f"unknown reuse kind {token!r}; legal values: {legal}")
    return kind


def render_kind(kind: ReuseKind) -> str:
    return kind.value


def parse_source_type(token: str) -> SourceType:
    source_type = _SOURCE_TYPES_BY_TOKEN.get(token.strip().lower())
    if source_type is None:
        legal = ", ".join(sorted(_SOURCE_TYPES_BY_TOKEN))
        raise VocabularyError(f"unknown source type {token!r}; legal values: {legal}")
    return source_type


@dataclass(frozen=True)
class SourceRef:
    """A reused artifact as one reader submitted it.

    ``raw`` is the string the reader typed; ``key`` is the canonical identity
    produced by :mod:`dor.identity`. Construct through
    :func:`dor.identity.make_source_ref` so the key is always filled in.
    """

    source_type: SourceType
    raw: str
    key: str
    year: Optional[int] = None

    def __post_init__(self) -> None:
        if not self.key:
            raise IntegrityError("source key must be nonempty")
        if self.source_type is SourceType.DOI and "://" in self.key:
            raise IntegrityError(f"doi key {self.key!r} carries a URL scheme")
        if self.source_type is SourceType.REPO and self.key.count("/") != 2:
            raise IntegrityError(f"repo key {self.key!r} is not host/owner/name")


@dataclass(frozen=True)
class PaperRecord:
    """One paper under study, as listed in the venue catalog."""

    doi: str
    venue: str
    year: int
    title: str
    authors: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.doi:
            raise IntegrityError("paper doi must be nonempty")
        if self.year < MIN_PAPER_YEAR:
            raise IntegrityError(f"paper year {self.year} predates {MIN_PAPER_YEAR}")


@dataclass(frozen=True)
class ReadingPass:
    """One reader's complete pass over one paper in one round.

    ``claims`` may be empty: a pass that found no reuse is a meaningful
    record, not missing data.
    """

    paper_doi: str
    reader: str
    round: int
    minutes: Optional[int] = None
    claims: frozenset[tuple[SourceRef, ReuseKind]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.round not in (1, 2, 3):
            raise IntegrityError(f"round {self.round} outside {{1, 2, 3}}")
        if self.minutes is not None and self.minutes <= 0:
            raise IntegrityError(f"minutes must be positive, got {self.minutes}")


@dataclass(frozen=True)
class WorkPacket:
    """A chunk of the catalog assigned to one reader via the issue tracker."""

    packet_id: int
    papers: tuple[PaperRecord, ...]

    def __post_init__(self) -> None:
        if self.packet_id < 1:
            raise IntegrityError(f"packet id must be >= 1, got {self.packet_id}")


def load_catalog(stream: IO[str], venues: frozenset[str] = DEFAULT_VENUES) -> list[PaperRecord]:
    """Parse a ``papers.csv`` stream into PaperRecords, in file order.

    DOIs are canonicalized on load. Duplicate DOIs and malformed rows are
    errors that name the offending line numbers.
    """
    from dor.identity import normalize_doi  # model is imported by identity

    reader = csv.reader(stream)
    header = next(reader, None)
    if header != PAPERS_HEADER:
        raise ParseError(f"line 1: expected header {','.join(PAPERS_HEADER)!r}, got {header!r}")

    records: list[PaperRecord] = []
    seen_lines: dict[str, int] = {}
    for row in reader:
        line = reader.line_num
        if not row:
            raise ParseError(f"line {line}: empty row")
        if len(row) != len(PAPERS_HEADER):
            raise ParseError(f"line {line}: expected {len(PAPERS_HEADER)} fields, got {len(row)}")
        raw_doi, venue, year_text, title, authors_field = row
        try:
            doi = normalize_doi(raw_doi).key
        except Exception as exc:
            raise ParseError(f"line {line}: bad doi {raw_doi!r}: {exc}") from exc
        if doi in seen_lines:
            raise IntegrityError(
                f"duplicate doi {doi!r} on lines {seen_lines[doi]} and {line}"
            )
        seen_lines[doi] = line
        if venue not in venues:
            legal = ", ".join(sorted(venues))
            raise ParseError(f"line {line}: venue {venue!r} not in configured set ({legal})")
        try:
            year = int(year_text)
        except ValueError as exc:
            raise ParseError(f"line {line}: year {year_text!r} is not an integer") from exc
        if year < MIN_PAPER_YEAR:
            raise ParseError(f"line {line}: year {year} predates {MIN_PAPER_YEAR}")
        authors = tuple(a.strip() for a in authors_field.split(";") if a.strip())
        records.append(PaperRecord(doi=doi, venue=venue, year=year, title=title, authors=authors))
    return records


def write_catalog(records: Iterable[PaperRecord], stream: IO[str]) -> None:
    """Serialize records back to the ``papers.csv`` format (UTF-8, LF)."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(PAPERS_HEADER)
    for record in records:
        writer.writerow(
            [record.doi, record.venue, str(record.year), record.title, ";".join(record.authors)]
        )
