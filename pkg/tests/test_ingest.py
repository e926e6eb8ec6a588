from __future__ import annotations

import io
import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dor.errors import (
    IntegrityError,
    ParseError,
    RangeError,
    ReferentialError,
    SequencingError,
    SyncError,
    VocabularyError,
)
from dor.identity import make_source_ref
from dor.ingest import (
    ClaimLedger,
    ClaimStatus,
    make_packets,
    packet_title,
    parse_claims,
    parse_readings,
    render_packet_issue,
    sync_issues,
    write_claims,
    write_readings,
)
from dor.model import PaperRecord, ReadingPass, ReuseKind, SourceType

READINGS_HEADER = "paper_doi,reader,round,minutes\n"
CLAIMS_HEADER = "paper_doi,reader,round,kind,source_type,source_raw,source_year\n"


def _readings(rows: list[str]) -> io.StringIO:
    return io.StringIO(READINGS_HEADER + "".join(row + "\n" for row in rows))


def _claims(rows: list[str]) -> io.StringIO:
    return io.StringIO(CLAIMS_HEADER + "".join(row + "\n" for row in rows))


class TestParseReadings:
    def test_basic_row(self):
        passes = parse_readings(_readings(["10.1/a,reader1,1,12"]))
        assert passes == [ReadingPass(paper_doi="10.1/a", reader="reader1", round=1, minutes=12)]

    def test_round_out_of_range(self):
        with pytest.raises(RangeError, match="round 4"):
            parse_readings(_readings(["10.1/a,reader1,4,12"]))

    def test_duplicate_triple_cites_both_lines(self):
        rows = ["10.1/a,r1,1,12", "10.1/b,r1,1,9", "10.1/a,r1,1,15"]
        with pytest.raises(IntegrityError, match="lines 2 and 4"):
            parse_readings(_readings(rows))

    def test_empty_minutes_allowed(self):
        passes = parse_readings(_readings(["10.1/a,r1,1,"]))
        assert passes[0].minutes is None

    def test_nonpositive_minutes_rejected(self):
        with pytest.raises(RangeError):
            parse_readings(_readings(["10.1/a,r1,1,0"]))

    def test_paper_doi_canonicalized(self):
        passes = parse_readings(_readings(["doi:10.1/UP,r1,1,5"]))
        assert passes[0].paper_doi == "10.1/up"

    def test_header_enforced(self):
        with pytest.raises(ParseError, match="line 1"):
            parse_readings(io.StringIO("paper,reader,round,minutes\n"))


class TestParseClaims:
    def _base_passes(self):
        return parse_readings(_readings(["10.1/a,r1,1,12", "10.1/a,r2,2,9"]))

    def test_claim_attaches_to_pass(self):
        passes = parse_claims(
            _claims(["10.1/a,r1,1,dataset,website,https://example.org/d,2019"]),
            self._base_passes(),
        )
        assert len(passes[0].claims) == 1
        ((ref, kind),) = passes[0].claims
        assert kind is ReuseKind.DATASET
        assert ref.key == "example.org/d"
        assert ref.year == 2019

    def test_identical_rows_collapse(self):
        row = "10.1/a,r1,1,dataset,website,https://example.org/d,2019"
        passes = parse_claims(_claims([row, row]), self._base_passes())
        assert len(passes[0].claims) == 1

    def test_orphan_claim_rejected(self):
        with pytest.raises(ReferentialError, match="line 2"):
            parse_claims(
                _claims(["10.1/zzz,r1,1,dataset,website,example.org/d,"]),
                self._base_passes(),
            )

    def test_bad_kind_propagates_with_line(self):
        with pytest.raises(VocabularyError, match="line 2"):
            parse_claims(
                _claims(["10.1/a,r1,1,benchmark,website,example.org/d,"]),
                self._base_passes(),
            )

    def test_round_trip(self):
        rows = [
            "10.1/a,r1,1,dataset,website,https://example.org/d,2019",
            "10.1/a,r1,1,stepping_stone,doi,10.1/base,",
            "10.1/a,r2,2,tool_replication,repo,github.com/x/y,2020",
        ]
        passes = parse_claims(_claims(rows), self._base_passes())
        readings_out, claims_out = io.StringIO(), io.StringIO()
        write_readings(passes, readings_out)
        write_claims(passes, claims_out)
        reparsed = parse_claims(
            io.StringIO(claims_out.getvalue()),
            parse_readings(io.StringIO(readings_out.getvalue())),
        )
        assert reparsed == passes


_raw_sources = st.sampled_from(
    [
        (SourceType.DOI, "10.1/base"),
        (SourceType.DOI, "https://doi.org/10.99/Tool"),
        (SourceType.WEBSITE, "https://example.org/data?v=2"),
        (SourceType.WEBSITE, "www.Example.com/a/b/"),
        (SourceType.REPO, "github.com/owner/name"),
        (SourceType.PREPRINT, "A Study of State-of-the-Art Models"),
    ]
)
_claim = st.builds(
    lambda src, kind, year: (make_source_ref(src[0], src[1], year), kind),
    src=_raw_sources,
    kind=st.sampled_from(list(ReuseKind)),
    year=st.one_of(st.none(), st.integers(min_value=1990, max_value=2021)),
)
_passes = st.lists(
    st.builds(
        ReadingPass,
        paper_doi=st.sampled_from(["10.1/a", "10.1/b", "10.1/c"]),
        reader=st.sampled_from(["r1", "r2", "r3"]),
        round=st.sampled_from([1, 2, 3]),
        minutes=st.one_of(st.none(), st.integers(min_value=1, max_value=90)),
        claims=st.frozensets(_claim, max_size=3),
    ),
    max_size=6,
    unique_by=lambda p: (p.paper_doi, p.reader, p.round),
)


@given(_passes)
def test_readings_and_claims_round_trip(passes):
    readings_out, claims_out = io.StringIO(), io.StringIO()
    write_readings(passes, readings_out)
    write_claims(passes, claims_out)
    reparsed = parse_claims(
        io.StringIO(claims_out.getvalue()),
        parse_readings(io.StringIO(readings_out.getvalue())),
    )
    assert reparsed == passes


# Independent statement of the status rules, straight from the verification
# protocol: one read pending, two reads agree/disagree, three reads majority.
STATUS_ORACLE = {
    ((1,), (1,)): ClaimStatus.SINGLE,
    ((1,), (1, 2)): ClaimStatus.DISPUTED,
    ((2,), (1, 2)): ClaimStatus.DISPUTED,
    ((1, 2), (1, 2)): ClaimStatus.CONFIRMED,
    ((1,), (1, 2, 3)): ClaimStatus.RESOLVED_REJECT,
    ((2,), (1, 2, 3)): ClaimStatus.RESOLVED_REJECT,
    ((3,), (1, 2, 3)): ClaimStatus.RESOLVED_REJECT,
    ((1, 2), (1, 2, 3)): ClaimStatus.RESOLVED_ACCEPT,
    ((1, 3), (1, 2, 3)): ClaimStatus.RESOLVED_ACCEPT,
    ((2, 3), (1, 2, 3)): ClaimStatus.RESOLVED_ACCEPT,
    ((1, 2, 3), (1, 2, 3)): ClaimStatus.RESOLVED_ACCEPT,
}


def _item():
    return (make_source_ref(SourceType.WEBSITE, "example.org/x"), ReuseKind.DATASET)


def _ledger_for_pattern(asserting: tuple[int, ...], covering: tuple[int, ...]) -> ClaimLedger:
    ledger = ClaimLedger()
    for round_number in covering:
        claims = frozenset([_item()]) if round_number in asserting else frozenset()
        ledger.merge_pass(
            ReadingPass(paper_doi="10.1/p", reader=f"r{round_number}", round=round_number, claims=claims)
        )
    return ledger


class TestMergePass:
    def test_confirmed_by_double_read(self):
        ledger = _ledger_for_pattern((1, 2), (1, 2))
        (entry,) = ledger.entries()
        assert entry.status is ClaimStatus.CONFIRMED

    def test_dispute_then_rejection(self):
        ledger = _ledger_for_pattern((1,), (1, 2))
        (entry,) = ledger.entries()
        assert entry.status is ClaimStatus.DISPUTED
        ledger.merge_pass(ReadingPass(paper_doi="10.1/p", reader="r3", round=3))
        (entry,) = ledger.entries()
        assert entry.status is ClaimStatus.RESOLVED_REJECT

    def test_all_patterns_match_oracle(self):
        for (asserting, covering), expected in STATUS_ORACLE.items():
            ledger = _ledger_for_pattern(asserting, covering)
            (entry,) = ledger.entries()
            assert entry.status is expected, (asserting, covering)
            assert entry.asserting_rounds == frozenset(asserting)
            assert entry.covering_rounds == frozenset(covering)

    def test_out_of_order_round_rejected(self):
        ledger = ClaimLedger()
        ledger.merge_pass(ReadingPass(paper_doi="10.1/p", reader="a", round=2))
        with pytest.raises(SequencingError):
            ledger.merge_pass(ReadingPass(paper_doi="10.1/p", reader="b", round=1))

    def test_remerging_same_pass_is_noop(self):
        reading = ReadingPass(paper_doi="10.1/p", reader="a", round=1, claims=frozenset([_item()]))
        ledger = ClaimLedger()
        ledger.merge_pass(reading)
        before = ledger.entries()
        ledger.merge_pass(reading)
        assert ledger.entries() == before
        assert len(ledger.passes) == 1

    def test_same_triple_different_content_rejected(self):
        ledger = ClaimLedger()
        ledger.merge_pass(ReadingPass(paper_doi="10.1/p", reader="a", round=1))
        with pytest.raises(IntegrityError):
            ledger.merge_pass(
                ReadingPass(paper_doi="10.1/p", reader="a", round=1, claims=frozenset([_item()]))
            )

    def test_round3_without_disputes_records_warning(self):
        ledger = _ledger_for_pattern((1, 2), (1, 2))
        ledger.merge_pass(ReadingPass(paper_doi="10.1/p", reader="c", round=3))
        assert any("no items are disputed" in warning for warning in ledger.warnings)

    def test_round3_with_disputes_is_silent(self):
        ledger = _ledger_for_pattern((1,), (1, 2))
        ledger.merge_pass(ReadingPass(paper_doi="10.1/p", reader="c", round=3))
        assert ledger.warnings == []

    def test_spelling_variants_cannot_manufacture_disputes(self):
        first = make_source_ref(SourceType.WEBSITE, "https://example.org/d/")
        second = make_source_ref(SourceType.WEBSITE, "EXAMPLE.org/d")
        ledger = ClaimLedger()
        ledger.merge_pass(
            ReadingPass(paper_doi="10.1/p", reader="a", round=1,
                        claims=frozenset([(first, ReuseKind.DATASET)]))
        )
        ledger.merge_pass(
            ReadingPass(paper_doi="10.1/p", reader="b", round=2,
                        claims=frozenset([(second, ReuseKind.DATASET)]))
        )
        (entry,) = ledger.entries()
        assert entry.status is ClaimStatus.CONFIRMED

    def test_same_source_different_kind_disagrees(self):
        ref = make_source_ref(SourceType.WEBSITE, "example.org/d")
        ledger = ClaimLedger()
        ledger.merge_pass(
            ReadingPass(paper_doi="10.1/p", reader="a", round=1,
                        claims=frozenset([(ref, ReuseKind.DATASET)]))
        )
        ledger.merge_pass(
            ReadingPass(paper_doi="10.1/p", reader="b", round=2,
                        claims=frozenset([(ref, ReuseKind.SANITY_CHECK)]))
        )
        statuses = {entry.status for entry in ledger.entries()}
        assert statuses == {ClaimStatus.DISPUTED}
        assert len(ledger.entries()) == 2


_pattern = st.sampled_from(sorted(STATUS_ORACLE))


@given(patterns=st.dictionaries(st.integers(min_value=1, max_value=6), _pattern, min_size=1, max_size=4),
       seed=st.randoms(use_true_random=False))
def test_interleaving_across_papers_is_irrelevant(patterns, seed):
    """Statuses depend on the multiset of passes, not cross-paper arrival order."""
    passes = []
    for paper_index, (asserting, covering) in patterns.items():
        doi = f"10.1/p{paper_index}"
        for round_number in covering:
            claims = frozenset([_item()]) if round_number in asserting else frozenset()
            passes.append(
                ReadingPass(paper_doi=doi, reader=f"r{round_number}", round=round_number, claims=claims)
            )
    by_round = sorted(passes, key=lambda p: p.round)
    shuffled = sorted(passes, key=lambda p: (p.round, seed.random()))
    first, second = ClaimLedger(), ClaimLedger()
    for reading in by_round:
        first.merge_pass(reading)
    for reading in shuffled:
        second.merge_pass(reading)
    assert first.entries() == second.entries()
    for ledger in (first, second):
        for entry in ledger.entries():
            key = (tuple(sorted(entry.asserting_rounds)), tuple(sorted(entry.covering_rounds)))
            assert entry.status is STATUS_ORACLE[key]


def _paper(i: int, venue: str = "ICSE") -> PaperRecord:
    return PaperRecord(doi=f"10.1/p{i:03d}", venue=venue, year=2020, title=f"Paper {i}", authors=())


class TestMakePackets:
    def test_25_papers_chunk_into_10_10_5(self):
        packets = make_packets([_paper(i) for i in range(25)], 10)
        assert [len(p.papers) for p in packets] == [10, 10, 5]
        assert [p.packet_id for p in packets] == [1, 2, 3]

    def test_exact_fit_single_packet(self):
        packets = make_packets([_paper(i) for i in range(10)], 10)
        assert len(packets) == 1

    def test_empty_catalog(self):
        assert make_packets([], 10) == []

    def test_packet_size_below_one_rejected(self):
        with pytest.raises(RangeError):
            make_packets([_paper(1)], 0)

    def test_partition_covers_every_paper_once(self):
        catalog = [_paper(i, venue) for i, venue in zip(range(23), itertools.cycle(["MSR", "ASE", "ICSE"]))]
        packets = make_packets(catalog, 7)
        seen = [paper.doi for packet in packets for paper in packet.papers]
        assert sorted(seen) == sorted(p.doi for p in catalog)
        assert len(set(seen)) == len(catalog)

    def test_sorted_by_venue_then_doi(self):
        catalog = [_paper(2, "MSR"), _paper(1, "ASE"), _paper(3, "ASE")]
        packets = make_packets(catalog, 10)
        assert [p.doi for p in packets[0].papers] == ["10.1/p001", "10.1/p003", "10.1/p002"]


class TestRenderPacketIssue:
    def test_title_and_checklist(self):
        packet = make_packets([_paper(1), _paper(2)], 10)[0]
        text = render_packet_issue(packet)
        lines = text.splitlines()
        assert lines[0] == "Packet 1: ICSE (2 papers)"
        assert lines[1] == ""
        assert lines[2] == "- [ ] 10.1/p001 — Paper 1"
        assert len(lines) == 4

    def test_multi_venue_title_sorted(self):
        packet = make_packets([_paper(1, "MSR"), _paper(2, "ASE")], 10)[0]
        assert packet_title(packet) == "Packet 1: ASE, MSR (2 papers)"

    def test_byte_deterministic(self):
        packet = make_packets([_paper(i) for i in range(5)], 10)[0]
        assert render_packet_issue(packet) == render_packet_issue(packet)


class FakeTracker:
    def __init__(self, titles=(), fail_on: str | None = None):
        self.titles = set(titles)
        self.fail_on = fail_on
        self.created: list[tuple[str, str]] = []

    def list_titles(self) -> set[str]:
        return set(self.titles)

    def create(self, title: str, body: str) -> int:
        if self.fail_on and self.fail_on in title:
            raise ConnectionError("boom")
        self.created.append((title, body))
        self.titles.add(title)
        return len(self.created)


class TestSyncIssues:
    def _packets(self, n: int):
        return make_packets([_paper(i) for i in range(n * 2)], 2)

    def test_empty_tracker_creates_all(self):
        tracker = FakeTracker()
        report = sync_issues(tracker, self._packets(3))
        assert report.created == [1, 2, 3]
        assert report.skipped == []

    def test_existing_title_skipped(self):
        packets = self._packets(3)
        tracker = FakeTracker(titles={packet_title(packets[1])})
        report = sync_issues(tracker, packets)
        assert report.created == [1, 3]
        assert report.skipped == [2]

    def test_rerun_is_idempotent(self):
        packets = self._packets(3)
        tracker = FakeTracker()
        sync_issues(tracker, packets)
        report = sync_issues(tracker, packets)
        assert report.created == []
        assert report.skipped == [1, 2, 3]
        assert len(tracker.created) == 3

    def test_failure_reports_partial_progress(self):
        packets = self._packets(3)
        tracker = FakeTracker(fail_on="Packet 2:")
        with pytest.raises(SyncError) as err:
            sync_issues(tracker, packets)
        assert err.value.packet_id == 2
        assert err.value.report.created == [1]

    def test_issue_body_is_the_checklist(self):
        packets = self._packets(1)
        tracker = FakeTracker()
        sync_issues(tracker, packets)
        (title, body), = tracker.created
        assert title.startswith("Packet 1:")
        assert body.startswith("- [ ]")
