#!/usr/bin/env python3
"""Regenerate the CSV fixtures under data/fixtures/.

The fixtures are committed; rerunning this script must reproduce them
byte-for-byte. Layout of the mixed fixture: papers 1-19 carry one confirmed
item each, paper 20 two, papers 21-23 one disputed item each (the three
outstanding disputes), papers 24-25 go through round-3 resolution.
"""

from __future__ import annotations

import csv
import statistics
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "data" / "fixtures"

VENUES = ["ICSE"] * 5 + ["ASE"] * 4 + ["ESECFSE"] * 4 + ["ICSME"] * 4 + ["MSR"] * 4 + ["ESEM"] * 4

AUTHOR_POOL = [
    "Ada Lovelace", "Grace Hopper", "Alan Turing", "Edsger Dijkstra",
    "Barbara Liskov", "Donald Knuth", "Margaret Hamilton", "John Backus",
]

TITLES = {
    1: "Mining, Measuring, and Modeling Defects",
    2: "State-of-the-Art Defect Models",
}

READERS = ["alice", "bob", "carol", "dave"]

# Shared sources. None year means the readers never recorded one.
ALPHA = ("website", "https://example.org/data/alpha", 2019)
STATS_GUIDE = ("doi", "10.5555/src.stats", 2011)
FLOWTOOL = ("repo", "https://github.com/hopper-lab/flowtool", 2020)
DL_PRE = ("preprint", "Deep Learning for Defect Prediction", 2019)
BENCH = ("website", "https://bench.example.com/suite?v=2", 2020)
OLD_METRIC = ("doi", "10.5555/src.metric", 2008)
NO_YEAR_SITE = ("website", "https://docs.example.net/guide", None)

# Deliberate spelling variants of ALPHA: all must collapse to one node.
ALPHA_VARIANTS = [
    "https://example.org/data/alpha",
    "example.org/data/alpha/",
    "http://www.example.org/data/alpha",
]


def write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def mixed_papers() -> list[list[str]]:
    rows = []
    for i in range(1, 26):
        doi = f"10.5555/mixed.{i:04d}"
        title = TITLES.get(i, f"An Empirical Study of Topic {i:02d}")
        authors = ";".join([AUTHOR_POOL[(i - 1) % 8], AUTHOR_POOL[(i + 2) % 8]])
        rows.append([doi, VENUES[i - 1], "2020", title, authors])
    return rows


def mixed_claims_plan():
    """Per paper: list of (rounds, kind, source). Source = (type, raw, year)."""
    def doi_src(i, year):
        return ("doi", f"10.5555/src.{i:04d}", year)

    plan: dict[int, list[tuple[tuple[int, ...], str, tuple]]] = {}
    # Papers 1-5 confirm the same popular dataset page (spelling varies).
    for i in range(1, 6):
        raw = ALPHA_VARIANTS[(i - 1) % len(ALPHA_VARIANTS)]
        plan[i] = [((1, 2), "dataset", ("website", raw, 2019))]
    # Paper 1 additionally goes through paper 2's artifact? No: keep 1 item
    # per paper here; paper 6 reuses a paper under study instead.
    plan[6] = [((1, 2), "stepping_stone", ("doi", "10.5555/mixed.0002", 2020))]
    plan[7] = [((1, 2), "statistical_method", STATS_GUIDE)]
    plan[8] = [((1, 2), "statistical_method", STATS_GUIDE)]
    plan[9] = [((1, 2), "tool_replication", FLOWTOOL)]
    plan[10] = [((1, 2), "tool_replication", FLOWTOOL)]
    plan[11] = [((1, 2), "stepping_stone", DL_PRE)]
    plan[12] = [((1, 2), "metric_method", OLD_METRIC)]
    plan[13] = [((1, 2), "sanity_check", NO_YEAR_SITE)]
    plan[14] = [((1, 2), "dataset", BENCH)]
    plan[15] = [((1, 2), "dataset", BENCH)]
    for i in range(16, 20):
        plan[i] = [((1, 2), "stepping_stone", doi_src(i, 2016 + (i % 4)))]
    plan[20] = [
        ((1, 2), "stepping_stone", doi_src(20, 2018)),
        ((1, 2), "dataset", ("website", "https://data.example.org/corpus", 2017)),
    ]
    # The three outstanding disputes live on papers 21-23.
    plan[21] = [
        ((1, 2), "stepping_stone", doi_src(21, 2019)),
        ((1,), "sanity_check", ("website", "https://example.org/notes/extra", None)),
    ]
    plan[22] = [
        ((1, 2), "metric_method", doi_src(22, 2015)),
        ((2,), "tool_replication", ("repo", "github.com/acme/widget", 2020)),
    ]
    plan[23] = [
        ((1, 2), "stepping_stone", doi_src(23, 2019)),
        ((1, 2), "dataset", ("website", "https://data.example.org/corpus", 2017)),
        ((1,), "stepping_stone", ("doi", "10.5555/src.dispute", 2014)),
    ]
    # Papers 24-25 exercise round-3 resolution.
    plan[24] = [
        ((1, 2), "stepping_stone", doi_src(24, 2019)),
        ((1, 3), "dataset", ("website", "https://data.example.org/extra", 2018)),
    ]
    plan[25] = [
        ((1,), "sanity_check", ("website", "https://example.org/shaky", None)),
        ((2, 3), "tool_replication", ("repo", "https://github.com/hopper-lab/parser.git", 2020)),
    ]
    return plan


def mixed_minutes() -> list:
    low = [6, 7, 7, 8, 8, 8, 9, 9, 9, 10, 10, 10, 10, 10, 11, 11, 11, 11]
    mid = [12] * 10
    high = [13, 13, 13, 14, 14, 15, 16, 17, 18, 20, 22, 25, 28, 30, 33, 38, 45, 52, 57, 60]
    values = high[::-1] + mid + low  # first passes slow, later ones fast
    assert len(values) == 48
    assert statistics.median(sorted(values)) == 12
    return values


def build_mixed() -> None:
    plan = mixed_claims_plan()
    readings: list[list[str]] = []
    claims: list[list[str]] = []
    minutes = mixed_minutes()
    timed = 0
    for i in range(1, 26):
        doi = f"10.5555/mixed.{i:04d}"
        reader1 = READERS[(i - 1) % 4]
        reader2 = READERS[i % 4]
        rounds = {1: reader1, 2: reader2}
        if i in (24, 25):
            rounds[3] = "erin"
        for round_number in sorted(rounds):
            reader = rounds[round_number]
            untimed = round_number == 3 or (i, round_number) in ((13, 2), (17, 1))
            if untimed:
                recorded = ""  # adjudication passes and two forgetful readers
            else:
                recorded = str(minutes[timed])
                timed += 1
            readings.append([doi, reader, str(round_number), recorded])
            for claim_rounds, kind, (stype, raw, year) in plan[i]:
                if round_number in claim_rounds:
                    claims.append(
                        [doi, reader, str(round_number), kind, stype, raw,
                         "" if year is None else str(year)]
                    )
    assert timed == 48, timed
    assert len(readings) == 52, len(readings)
    assert len(claims) == 60, len(claims)

    out = FIXTURES / "mixed"
    write_csv(out / "papers.csv", ["doi", "venue", "year", "title", "authors"], mixed_papers())
    write_csv(out / "readings.csv", ["paper_doi", "reader", "round", "minutes"], readings)
    write_csv(
        out / "claims.csv",
        ["paper_doi", "reader", "round", "kind", "source_type", "source_raw", "source_year"],
        claims,
    )
    write_csv(
        out / "owners.csv",
        ["source_key", "owner_name"],
        [
            ["github.com/hopper-lab/flowtool", "Grace Hopper"],
            ["github.com/hopper-lab/parser", "Grace Hopper"],
            ["example.org/data/alpha", "Margaret Hamilton"],
            ["example.org/data/alpha", "Tool Consortium"],
            ["bench.example.com/suite?v=2", "Tool Consortium"],
        ],
    )


def build_all_agreement() -> None:
    papers: list[list[str]] = []
    readings: list[list[str]] = []
    claims: list[list[str]] = []
    venues = sorted(["ICSE", "ASE", "ESECFSE", "ICSME", "MSR", "ESEM"])
    for i in range(1, 21):
        doi = f"10.5555/agree.{i:04d}"
        papers.append(
            [doi, venues[(i - 1) % 6], "2020", f"Replication Report {i:02d}",
             AUTHOR_POOL[(i - 1) % 8]]
        )
        if i <= 14:
            items = [
                ("stepping_stone", "doi", f"10.5555/base.{i:04d}", "2018"),
                ("dataset", "website", f"https://data.example.org/set{i:02d}", "2019"),
            ]
        elif i <= 18:
            items = [("tool_replication", "repo", f"github.com/lab{i:02d}/kit", "2020")]
        else:
            items = []  # both rounds agree there is nothing to report
        for round_number, reader in ((1, "reader_a"), (2, "reader_b")):
            readings.append([doi, reader, str(round_number), str(9 + (i + round_number) % 12)])
            for kind, stype, raw, year in items:
                claims.append([doi, reader, str(round_number), kind, stype, raw, year])

    out = FIXTURES / "all_agreement"
    write_csv(out / "papers.csv", ["doi", "venue", "year", "title", "authors"], papers)
    write_csv(out / "readings.csv", ["paper_doi", "reader", "round", "minutes"], readings)
    write_csv(
        out / "claims.csv",
        ["paper_doi", "reader", "round", "kind", "source_type", "source_raw", "source_year"],
        claims,
    )


if __name__ == "__main__":
    build_mixed()
    build_all_agreement()
    print(f"fixtures written under {FIXTURES}")
