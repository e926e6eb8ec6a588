"""Reading-log ingestion and the claim verification ledger.

Every reported reuse item is double checked: a second pass over the same
paper either confirms or disputes it, and disputed items go to a third,
tie-breaking pass. The ledger tracks each (paper, source, kind) item through
those states. Claims are canonicalized before they enter the ledger, so two
spellings of one source can never manufacture a dispute.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import IO, Iterable, Optional, Protocol, Sequence

from dor.errors import (
    IntegrityError,
    NormalizationError,
    ParseError,
    RangeError,
    ReferentialError,
    SequencingError,
    SyncError,
    VocabularyError,
)
from dor.identity import CanonicalKey, make_source_ref, normalize_doi
from dor.model import (
    PaperRecord,
    ReadingPass,
    ReuseKind,
    SourceRef,
    WorkPacket,
    parse_kind,
    parse_source_type,
    render_kind,
)

READINGS_HEADER = ["paper_doi", "reader", "round", "minutes"]
CLAIMS_HEADER = ["paper_doi", "reader", "round", "kind", "source_type", "source_raw", "source_year"]

LEGAL_ROUNDS = (1, 2, 3)


class ClaimStatus(Enum):
    SINGLE = "single"
    CONFIRMED = "confirmed"
    DISPUTED = "disputed"
    RESOLVED_ACCEPT = "resolved_accept"
    RESOLVED_REJECT = "resolved_reject"


ACCEPTED_STATUSES = frozenset({ClaimStatus.CONFIRMED, ClaimStatus.RESOLVED_ACCEPT})


def claim_status(asserting_rounds: frozenset[int], covering_rounds: frozenset[int]) -> ClaimStatus:
    """Status of one item given which rounds asserted it and which rounds
    cover its paper.

    One covering round means the item is still awaiting its second read.
    Two rounds: both asserted it (confirmed) or only one did (disputed).
    Three rounds: majority of the three decides.
    """
    if not asserting_rounds or not asserting_rounds <= covering_rounds:
        raise IntegrityError("asserting rounds must be a nonempty subset of covering rounds")
    covered = len(covering_rounds)
    asserted = len(asserting_rounds)
    if covered == 1:
        return ClaimStatus.SINGLE
    if covered == 2:
        return ClaimStatus.CONFIRMED if asserted == 2 else ClaimStatus.DISPUTED
    if covered == 3:
        return ClaimStatus.RESOLVED_ACCEPT if asserted >= 2 else ClaimStatus.RESOLVED_REJECT
    raise IntegrityError(f"impossible covering round count {covered}")


@dataclass(frozen=True)
class ClaimLedgerEntry:
    """Verification state of one (paper, source, kind) item."""

    paper_doi: str
    source: CanonicalKey
    kind: ReuseKind
    status: ClaimStatus
    asserting_rounds: frozenset[int]
    covering_rounds: frozenset[int]


@dataclass
class _PaperState:
    rounds: set[int] = field(default_factory=set)
    max_round: int = 0
    items: dict[tuple[CanonicalKey, ReuseKind], set[int]] = field(default_factory=dict)
    passes: dict[tuple[str, int], ReadingPass] = field(default_factory=dict)


class ClaimLedger:
    """Single-writer record of all passes and the items they claimed.

    Merging the same pass twice is a no-op, so re-ingesting the same files
    leaves the ledger unchanged. Statuses are derived on demand from which
    rounds asserted each item versus which rounds cover the paper.
    """

    def __init__(self) -> None:
        self._papers: dict[str, _PaperState] = {}
        self._source_years: dict[CanonicalKey, set[int]] = {}
        self.passes: list[ReadingPass] = []
        self.warnings: list[str] = []

    def merge_pass(self, reading: ReadingPass) -> None:
        state = self._papers.setdefault(reading.paper_doi, _PaperState())
        pass_id = (reading.reader, reading.round)
        previous = state.passes.get(pass_id)
        if previous is not None:
            if previous == reading:
                return
            raise IntegrityError(
                f"pass ({reading.paper_doi}, {reading.reader}, {reading.round}) "
                "already merged with different content"
            )
        if reading.round < state.max_round:
            raise SequencingError(
                f"round {reading.round} for {reading.paper_doi} arrived after "
                f"round {state.max_round}"
            )
        if reading.round == 3 and not self._has_disputed(reading.paper_doi):
            self.warnings.append(
                f"round-3 pass for {reading.paper_doi} but no items are disputed"
            )
        state.passes[pass_id] = reading
        state.rounds.add(reading.round)
        state.max_round = max(state.max_round, reading.round)
        self.passes.append(reading)
        for ref, kind in reading.claims:
            source = CanonicalKey(ref.source_type, ref.key)
            state.items.setdefault((source, kind), set()).add(reading.round)
            if ref.year is not None:
                self._source_years.setdefault(source, set()).add(ref.year)

    def _has_disputed(self, paper_doi: str) -> bool:
        return any(
            entry.status is ClaimStatus.DISPUTED
            for entry in self.entries_for(paper_doi)
        )

    def papers(self) -> list[str]:
        """DOIs of all papers covered by at least one pass, sorted."""
        return sorted(self._papers)

    def entries_for(self, paper_doi: str) -> list[ClaimLedgerEntry]:
        state = self._papers.get(paper_doi)
        if state is None:
            return []
        covering = frozenset(state.rounds)
        entries = [
            ClaimLedgerEntry(
                paper_doi=paper_doi,
                source=source,
                kind=kind,
                status=claim_status(frozenset(rounds), covering),
                asserting_rounds=frozenset(rounds),
                covering_rounds=covering,
            )
            for (source, kind), rounds in state.items.items()
        ]
        entries.sort(key=_entry_sort_key)
        return entries

    def entries(self) -> list[ClaimLedgerEntry]:
        return [entry for doi in self.papers() for entry in self.entries_for(doi)]

    def accepted(self, include_single: bool = False) -> list[ClaimLedgerEntry]:
        wanted = set(ACCEPTED_STATUSES)
        if include_single:
            wanted.add(ClaimStatus.SINGLE)
        return [entry for entry in self.entries() if entry.status in wanted]

    def disputed(self) -> list[ClaimLedgerEntry]:
        return [entry for entry in self.entries() if entry.status is ClaimStatus.DISPUTED]

    def source_year(self, source: CanonicalKey) -> Optional[int]:
        """Earliest year any reader recorded for the source, or None."""
        years = self._source_years.get(source)
        return min(years) if years else None


def _entry_sort_key(entry: ClaimLedgerEntry):
    return (entry.paper_doi, entry.source.source_type.value, entry.source.key, entry.kind.value)


def merge_pass(ledger: ClaimLedger, reading: ReadingPass) -> ClaimLedger:
    """Functional spelling of :meth:`ClaimLedger.merge_pass`."""
    ledger.merge_pass(reading)
    return ledger


def _check_header(actual: Optional[list[str]], expected: list[str]) -> None:
    if actual != expected:
        raise ParseError(f"line 1: expected header {','.join(expected)!r}, got {actual!r}")


def parse_readings(stream: IO[str]) -> list[ReadingPass]:
    """Parse ``readings.csv`` into passes with empty claim sets, file order."""
    reader = csv.reader(stream)
    _check_header(next(reader, None), READINGS_HEADER)
    passes: list[ReadingPass] = []
    seen: dict[tuple[str, str, int], int] = {}
    for row in reader:
        line = reader.line_num
        if not row:
            raise ParseError(f"line {line}: empty row")
        if len(row) != len(READINGS_HEADER):
            raise ParseError(f"line {line}: expected {len(READINGS_HEADER)} fields, got {len(row)}")
        raw_doi, reader_id, round_text, minutes_text = row
        paper_doi = _parse_doi_field(raw_doi, line)
        if not reader_id.strip():
            raise ParseError(f"line {line}: empty reader")
        round_number = _parse_round_field(round_text, line)
        minutes = _parse_minutes_field(minutes_text, line)
        triple = (paper_doi, reader_id, round_number)
        if triple in seen:
            raise IntegrityError(
                f"duplicate pass ({paper_doi}, {reader_id}, {round_number}) "
                f"on lines {seen[triple]} and {line}"
            )
        seen[triple] = line
        passes.append(
            ReadingPass(paper_doi=paper_doi, reader=reader_id, round=round_number, minutes=minutes)
        )
    return passes


def parse_claims(stream: IO[str], passes: Sequence[ReadingPass]) -> list[ReadingPass]:
    """Attach ``claims.csv`` rows to their passes.

    Every row must reference an existing (paper, reader, round); identical
    rows within one pass collapse to a single claim.
    """
    by_triple = {(p.paper_doi, p.reader, p.round): index for index, p in enumerate(passes)}
    claim_sets: dict[int, set[tuple[SourceRef, ReuseKind]]] = {
        index: set(p.claims) for index, p in enumerate(passes)
    }
    reader = csv.reader(stream)
    _check_header(next(reader, None), CLAIMS_HEADER)
    for row in reader:
        line = reader.line_num
        if not row:
            raise ParseError(f"line {line}: empty row")
        if len(row) != len(CLAIMS_HEADER):
            raise ParseError(f"line {line}: expected {len(CLAIMS_HEADER)} fields, got {len(row)}")
        raw_doi, reader_id, round_text, kind_token, type_token, source_raw, year_text = row
        paper_doi = _parse_doi_field(raw_doi, line)
        round_number = _parse_round_field(round_text, line)
        triple = (paper_doi, reader_id, round_number)
        index = by_triple.get(triple)
        if index is None:
            raise ReferentialError(f"line {line}: claim references unknown pass {triple}")
        try:
            kind = parse_kind(kind_token)
            source_type = parse_source_type(type_token)
        except VocabularyError as exc:
            raise VocabularyError(f"line {line}: {exc}") from exc
        year = _parse_year_field(year_text, line)
        try:
            ref = make_source_ref(source_type, source_raw, year)
        except NormalizationError as exc:
            raise type(exc)(f"line {line}: {exc}") from exc
        claim_sets[index].add((ref, kind))
    return [
        replace(p, claims=frozenset(claim_sets[index]))
        for index, p in enumerate(passes)
    ]


def _parse_doi_field(raw: str, line: int) -> str:
    try:
        return normalize_doi(raw).key
    except NormalizationError as exc:
        raise ParseError(f"line {line}: bad paper doi {raw!r}: {exc}") from exc


def _parse_round_field(text: str, line: int) -> int:
    try:
        round_number = int(text)
    except ValueError as exc:
        raise ParseError(f"line {line}: round {text!r} is not an integer") from exc
    if round_number not in LEGAL_ROUNDS:
        raise RangeError(f"line {line}: round {round_number} outside {{1, 2, 3}}")
    return round_number


def _parse_minutes_field(text: str, line: int) -> Optional[int]:
    if not text.strip():
        return None
    try:
        minutes = int(text)
    except ValueError as exc:
        raise ParseError(f"line {line}: minutes {text!r} is not an integer") from exc
    if minutes <= 0:
        raise RangeError(f"line {line}: minutes must be positive, got {minutes}")
    return minutes


def _parse_year_field(text: str, line: int) -> Optional[int]:
    if not text.strip():
        return None
    try:
        return int(text)
    except ValueError as exc:
        raise ParseError(f"line {line}: source year {text!r} is not an integer") from exc


def write_readings(passes: Iterable[ReadingPass], stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(READINGS_HEADER)
    for p in passes:
        writer.writerow(
            [p.paper_doi, p.reader, str(p.round), "" if p.minutes is None else str(p.minutes)]
        )


def write_claims(passes: Iterable[ReadingPass], stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CLAIMS_HEADER)
    for p in passes:
        for ref, kind in sorted(
            p.claims, key=lambda c: (c[0].source_type.value, c[0].key, c[1].value, c[0].raw)
        ):
            writer.writerow(
                [
                    p.paper_doi,
                    p.reader,
                    str(p.round),
                    render_kind(kind),
                    ref.source_type.value,
                    ref.raw,
                    "" if ref.year is None else str(ref.year),
                ]
            )


def make_packets(catalog: Sequence[PaperRecord], packet_size: int = 10) -> list[WorkPacket]:
    """Partition the catalog into work packets of ``packet_size`` papers.

    Papers are sorted by (venue, doi) first so the partition is deterministic;
    the last packet may be shorter.
    """
    if packet_size < 1:
        raise RangeError(f"packet size must be >= 1, got {packet_size}")
    ordered = sorted(catalog, key=lambda record: (record.venue, record.doi))
    return [
        WorkPacket(packet_id=index + 1, papers=tuple(ordered[start:start + packet_size]))
        for index, start in enumerate(range(0, len(ordered), packet_size))
    ]


def packet_title(packet: WorkPacket) -> str:
    venues = ", ".join(sorted({paper.venue for paper in packet.papers}))
    return f"Packet {packet.packet_id}: {venues} ({len(packet.papers)} papers)"


def render_packet_issue(packet: WorkPacket) -> str:
    """Markdown issue text: title line plus one checklist line per paper."""
    lines = [packet_title(packet), ""]
    lines.extend(f"- [ ] {paper.doi} — {paper.title}" for paper in packet.papers)
    return "\n".join(lines) + "\n"


class IssueTrackerClient(Protocol):
    """Anything that can list issue titles and create issues is pluggable."""

    def list_titles(self) -> set[str]: ...

    def create(self, title: str, body: str) -> int: ...


@dataclass
class SyncReport:
    created: list[int] = field(default_factory=list)
    skipped: list[int] = field(default_factory=list)


def sync_issues(client: IssueTrackerClient, packets: Sequence[WorkPacket]) -> SyncReport:
    """Create one issue per packet not already present; never mutate existing.

    Matching is by exact title, so re-running is idempotent. On a transport
    failure the raised SyncError carries the partial report and the packet id
    at which sync stopped.
    """
    report = SyncReport()
    try:
        existing = client.list_titles()
    except Exception as exc:
        first = packets[0].packet_id if packets else 0
        raise SyncError(f"could not list existing issues: {exc}", first, report) from exc
    for packet in packets:
        title = packet_title(packet)
        if title in existing:
            report.skipped.append(packet.packet_id)
            continue
        text = render_packet_issue(packet)
        body = text.split("\n", 2)[2] if text.count("\n") >= 2 else ""
        try:
            client.create(title, body)
        except Exception as exc:
            raise SyncError(
                f"issue creation failed at packet {packet.packet_id}: {exc}",
                packet.packet_id,
                report,
            ) from exc
        report.created.append(packet.packet_id)
    return report


class GitHubIssuesClient:
    """Live client for the GitHub Issues REST surface.

    Reads its token from ``DOR_TOKEN`` unless one is passed explicitly.
    """

    def __init__(self, repo: str, token: Optional[str] = None,
                 api_url: str = "https://api.github.com", session=None) -> None:
        import requests

        if repo.count("/") != 1:
            raise ValueError(f"repo must be owner/name, got {repo!r}")
        self.repo = repo
        self.api_url = api_url.rstrip("/")
        self.token = token if token is not None else os.environ.get("DOR_TOKEN")
        self._session = session if session is not None else requests.Session()

    def _headers(self) -> dict[str, str]:
        headers = {"Accept": "application/vnd.github+json"}
        if self.token:
            headers["Authorization"] = f"Bearer {self.token}"
        return headers

    def list_titles(self) -> set[str]:
        titles: set[str] = set()
        page = 1
        while True:
            response = self._session.get(
                f"{self.api_url}/repos/{self.repo}/issues",
                params={"state": "all", "per_page": 100, "page": page},
                headers=self._headers(),
                timeout=30,
            )
            response.raise_for_status()
            batch = response.json()
            if not batch:
                return titles
            titles.update(issue["title"] for issue in batch)
            page += 1

    def create(self, title: str, body: str) -> int:
        response = self._session.post(
            f"{self.api_url}/repos/{self.repo}/issues",
            json={"title": title, "body": body},
            headers=self._headers(),
            timeout=30,
        )
        response.raise_for_status()
        return int(response.json()["number"])
