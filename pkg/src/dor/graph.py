"""The typed reuse graph: accepted ledger items as edges, plus exports.

Only verified items become edges: confirmed ones and disputes resolved in
favor. Unverified single-read items can be pulled in explicitly, but never
by default, because the published graph promises that everything in it was
double checked.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import IO, Optional, Sequence

from dor.analytics import agreement_report, reading_time_stats, year_histogram
from dor.errors import EmptyDataError, IntegrityError, ParseError, RangeError
from dor.ingest import ClaimLedger, ClaimStatus
from dor.model import PaperRecord, ReuseKind

PAPER_CLASS = "paper"

NODE_CLASSES = (PAPER_CLASS, "doi", "preprint", "website", "repo")

DOT_COLORS = {
    PAPER_CLASS: "black",
    "doi": "blue",
    "preprint": "red",
    "website": "gray",
    "repo": "green",
}

OWNERS_HEADER = ["source_key", "owner_name"]


@dataclass(frozen=True)
class GraphNode:
    id: str
    node_class: str
    year: Optional[int] = None
    label: Optional[str] = None
    venue: Optional[str] = None


@dataclass(frozen=True)
class GraphEdge:
    src: str
    dst: str
    kind: ReuseKind
    status: ClaimStatus


@dataclass(frozen=True)
class GraphSnapshot:
    """Immutable node/edge arrays in their serialized order, plus statistics."""

    nodes: tuple[GraphNode, ...]
    edges: tuple[GraphEdge, ...]
    stats: dict


def build_graph(
    ledger: ClaimLedger,
    catalog: Sequence[PaperRecord],
    include_unverified: bool = False,
) -> GraphSnapshot:
    """Assemble the snapshot from a merged ledger and the paper catalog.

    Nodes are every paper covered by at least one pass plus every source an
    edge points at. A reused DOI that is itself a paper under study collapses
    into that paper's node; the same key text claimed under two different
    source types has no single identity and is rejected.
    """
    by_doi = {record.doi: record for record in catalog}
    items = ledger.accepted(include_single=include_unverified)

    paper_nodes: dict[str, GraphNode] = {}
    for doi in ledger.papers():
        record = by_doi.get(doi)
        paper_nodes[doi] = GraphNode(
            id=doi,
            node_class=PAPER_CLASS,
            year=record.year if record else None,
            label=record.title if record else None,
            venue=record.venue if record else None,
        )

    source_nodes: dict[str, GraphNode] = {}
    source_types: dict[str, str] = {}
    edges: list[GraphEdge] = []
    for entry in items:
        if entry.paper_doi not in by_doi:
            raise IntegrityError(
                f"accepted item for {entry.paper_doi} references a paper absent from the catalog"
            )
        key_text = entry.source.key
        node_class = entry.source.source_type.value
        if key_text in paper_nodes:
            if node_class != "doi":
                raise IntegrityError(
                    f"source key {key_text!r} ({node_class}) collides with a paper under study"
                )
        elif key_text in source_types:
            if source_types[key_text] != node_class:
                raise IntegrityError(
                    f"source key {key_text!r} claimed as both "
                    f"{source_types[key_text]} and {node_class}"
                )
        else:
            source_types[key_text] = node_class
            source_nodes[key_text] = GraphNode(
                id=key_text,
                node_class=node_class,
                year=ledger.source_year(entry.source),
            )
        edges.append(
            GraphEdge(src=entry.paper_doi, dst=key_text, kind=entry.kind, status=entry.status)
        )

    nodes = sorted(
        list(paper_nodes.values()) + list(source_nodes.values()), key=lambda node: node.id
    )
    edges.sort(key=lambda edge: (edge.src, edge.dst, edge.kind.value))
    stats = _compute_stats(ledger, nodes, edges, items)
    return GraphSnapshot(nodes=tuple(nodes), edges=tuple(edges), stats=stats)


def _compute_stats(ledger, nodes, edges, items) -> dict:
    node_counts = {node_class: 0 for node_class in NODE_CLASSES}
    for node in nodes:
        node_counts[node.node_class] += 1
    report = agreement_report(ledger.passes)
    try:
        times = reading_time_stats(ledger.passes)
        minutes_block = {"median": times.median, "q1": times.q1, "q3": times.q3}
    except EmptyDataError:
        minutes_block = {"median": None, "q1": None, "q3": None}
    histogram = year_histogram(ledger, items)
    return {
        "node_counts": node_counts,
        "edge_count": len(edges),
        "kappa": {
            "median": report.median_kappa,
            "per_paper_count": len(report.per_paper_kappa),
        },
        "reading_minutes": minutes_block,
        "year_histogram": {
            "unknown" if year is None else str(year): count
            for year, count in histogram.items()
        },
    }


@dataclass(frozen=True)
class DegreeRankings:
    top_reused: tuple[tuple[str, int], ...]
    top_reusers: tuple[tuple[str, int], ...]


def degree_rankings(snapshot: GraphSnapshot, k: int) -> DegreeRankings:
    """Top-k sources by in-degree and top-k papers by out-degree.

    Rankings are stable: ties break by key ascending.
    """
    if k < 1:
        raise RangeError(f"k must be >= 1, got {k}")
    in_degree: dict[str, int] = {}
    out_degree: dict[str, int] = {}
    for edge in snapshot.edges:
        in_degree[edge.dst] = in_degree.get(edge.dst, 0) + 1
        out_degree[edge.src] = out_degree.get(edge.src, 0) + 1
    rank = lambda degrees: tuple(
        sorted(degrees.items(), key=lambda pair: (-pair[1], pair[0]))[:k]
    )
    return DegreeRankings(top_reused=rank(in_degree), top_reusers=rank(out_degree))


def _author_key(name: str) -> str:
    return " ".join(name.casefold().split())


def _accepted_edges(snapshot: GraphSnapshot) -> list[GraphEdge]:
    return [
        edge
        for edge in snapshot.edges
        if edge.status in (ClaimStatus.CONFIRMED, ClaimStatus.RESOLVED_ACCEPT)
    ]


def r_index(author: str, snapshot: GraphSnapshot, catalog: Sequence[PaperRecord]) -> int:
    """Distinct sources reused across the catalog papers listing the author.

    An author with no catalog papers scores zero; that is an answer, not an
    error. Matching is exact on the normalized name.
    """
    wanted = _author_key(author)
    authored = {
        record.doi
        for record in catalog
        if any(_author_key(name) == wanted for name in record.authors)
    }
    return len({edge.dst for edge in _accepted_edges(snapshot) if edge.src in authored})


def r_plus_index(
    author: str,
    snapshot: GraphSnapshot,
    catalog: Sequence[PaperRecord],
    owners: dict[str, set[str]],
) -> int:
    """Distinct papers reusing anything the author wrote or owns.

    DOI sources are attributed through the catalog's author lists; websites
    and repositories through the owners mapping. Sources with unknown
    ownership accrue to nobody.
    """
    wanted = _author_key(author)
    owned = {
        record.doi
        for record in catalog
        if any(_author_key(name) == wanted for name in record.authors)
    }
    owned.update(
        key
        for key, names in owners.items()
        if any(_author_key(name) == wanted for name in names)
    )
    return len({edge.src for edge in _accepted_edges(snapshot) if edge.dst in owned})


def author_known(author: str, catalog: Sequence[PaperRecord], owners: Optional[dict[str, set[str]]] = None) -> bool:
    """Whether the name appears anywhere in the catalog or owners mapping."""
    wanted = _author_key(author)
    if any(_author_key(name) == wanted for record in catalog for name in record.authors):
        return True
    if owners:
        return any(_author_key(name) == wanted for names in owners.values() for name in names)
    return False


def load_owners(stream: IO[str]) -> dict[str, set[str]]:
    """Parse ``owners.csv`` into a source key to owner names mapping."""
    reader = csv.reader(stream)
    header = next(reader, None)
    if header != OWNERS_HEADER:
        raise ParseError(f"line 1: expected header {','.join(OWNERS_HEADER)!r}, got {header!r}")
    owners: dict[str, set[str]] = {}
    for row in reader:
        line = reader.line_num
        if not row:
            raise ParseError(f"line {line}: empty row")
        if len(row) != len(OWNERS_HEADER):
            raise ParseError(f"line {line}: expected {len(OWNERS_HEADER)} fields, got {len(row)}")
        key, owner = row
        if not key.strip() or not owner.strip():
            raise ParseError(f"line {line}: source_key and owner_name must be nonempty")
        owners.setdefault(key.strip(), set()).add(owner.strip())
    return owners


def snapshot_document(snapshot: GraphSnapshot) -> dict:
    """The snapshot as a JSON-ready document (schema version 1)."""
    nodes = []
    for node in snapshot.nodes:
        item: dict = {"id": node.id, "class": node.node_class}
        if node.year is not None:
            item["year"] = node.year
        if node.label is not None:
            item["label"] = node.label
        if node.venue is not None:
            item["venue"] = node.venue
        nodes.append(item)
    edges = [
        {"from": edge.src, "to": edge.dst, "kind": edge.kind.value, "status": edge.status.value}
        for edge in snapshot.edges
    ]
    return {"schema_version": 1, "nodes": nodes, "edges": edges, "stats": snapshot.stats}


def export_json(snapshot: GraphSnapshot) -> bytes:
    """Canonical JSON bytes: sorted keys, fixed array orders, UTF-8, LF.

    A pure function of the snapshot; identical input gives identical bytes.
    """
    text = json.dumps(snapshot_document(snapshot), sort_keys=True, indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(snapshot: GraphSnapshot) -> bytes:
    """DOT digraph with the node coloring used on the public site."""
    lines = ["digraph reuse {"]
    for node in snapshot.nodes:
        lines.append(f"  {_dot_quote(node.id)} [color={DOT_COLORS[node.node_class]}];")
    for edge in snapshot.edges:
        lines.append(
            f"  {_dot_quote(edge.src)} -> {_dot_quote(edge.dst)} [label={_dot_quote(edge.kind.value)}];"
        )
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")
