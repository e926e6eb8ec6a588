"""End-to-end build: files in, snapshot and report out.

Shared by the build and check commands and by the service tests. Outputs
are computed fully in memory before anything is written, so a failing input
never leaves a half-written snapshot behind.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from dor.errors import DorError
from dor.graph import GraphSnapshot, build_graph, export_dot, export_json, load_owners
from dor.ingest import ClaimLedger, parse_claims, parse_readings
from dor.model import PaperRecord, load_catalog


@dataclass
class RunConfig:
    catalog_path: Path
    readings_path: Optional[Path] = None
    claims_path: Optional[Path] = None
    owners_path: Optional[Path] = None
    output_dir: Path = Path("out")
    packet_size: int = 10
    include_unverified: bool = False
    serve_port: Optional[int] = None
    assets_dir: Optional[Path] = None


@dataclass
class BuildResult:
    catalog: list[PaperRecord]
    ledger: ClaimLedger
    snapshot: GraphSnapshot
    owners: dict[str, set[str]] = field(default_factory=dict)

    @property
    def report_text(self) -> str:
        return render_report(self.snapshot, self.ledger)


def _parse_file(path: Path, parser):
    """Run a stream parser over a file, putting the path into diagnostics."""
    try:
        with open(path, encoding="utf-8", newline="") as stream:
            return parser(stream)
    except DorError as exc:
        raise type(exc)(f"{path}: {exc}") from exc


def build_ledger(readings_path: Path, claims_path: Path) -> ClaimLedger:
    """Parse readings and claims, then merge every pass into a fresh ledger.

    Passes are merged in round order (stable within a round), which satisfies
    the per-paper sequencing rule regardless of row order in the files.
    """
    passes = _parse_file(readings_path, parse_readings)
    passes = _parse_file(claims_path, lambda stream: parse_claims(stream, passes))
    ledger = ClaimLedger()
    for reading in sorted(passes, key=lambda p: p.round):
        ledger.merge_pass(reading)
    return ledger


def run_build(config: RunConfig) -> BuildResult:
    catalog = _parse_file(config.catalog_path, load_catalog)
    ledger = build_ledger(config.readings_path, config.claims_path)
    owners: dict[str, set[str]] = {}
    if config.owners_path is not None:
        owners = _parse_file(config.owners_path, load_owners)
    snapshot = build_graph(ledger, catalog, include_unverified=config.include_unverified)
    return BuildResult(catalog=catalog, ledger=ledger, snapshot=snapshot, owners=owners)


def _fmt(value, precision: Optional[int] = None) -> str:
    if value is None:
        return "n/a"
    if precision is not None:
        return f"{value:.{precision}f}"
    return f"{value:g}"


def render_report(snapshot: GraphSnapshot, ledger: ClaimLedger) -> str:
    """Human-readable summary written next to the snapshot."""
    stats = snapshot.stats
    counts = stats["node_counts"]
    kappa = stats["kappa"]
    minutes = stats["reading_minutes"]
    disputes = ledger.disputed()
    lines = [
        f"papers under study: {counts['paper']}",
        "source nodes: "
        + " ".join(f"{cls}={counts[cls]}" for cls in ("doi", "preprint", "website", "repo")),
        f"edges: {stats['edge_count']}",
        f"median kappa: {_fmt(kappa['median'], precision=3)}",
        f"kappa papers: {kappa['per_paper_count']}",
        f"median minutes: {_fmt(minutes['median'])}",
        f"minutes q1: {_fmt(minutes['q1'])}",
        f"minutes q3: {_fmt(minutes['q3'])}",
        f"disputes outstanding: {len(disputes)}",
    ]
    lines.extend(
        f"dispute: {entry.paper_doi} {entry.kind.value} "
        f"{entry.source.source_type.value}:{entry.source.key}"
        for entry in disputes
    )
    return "\n".join(lines) + "\n"


def write_outputs(result: BuildResult, output_dir: Path) -> list[Path]:
    """Render snapshot.json, graph.dot, and report.txt into the output dir.

    All three byte streams are produced before the first write.
    """
    snapshot_bytes = export_json(result.snapshot)
    dot_bytes = export_dot(result.snapshot)
    report_bytes = result.report_text.encode("utf-8")
    output_dir.mkdir(parents=True, exist_ok=True)
    targets = {
        output_dir / "snapshot.json": snapshot_bytes,
        output_dir / "graph.dot": dot_bytes,
        output_dir / "report.txt": report_bytes,
    }
    for path, payload in targets.items():
        path.write_bytes(payload)
    return list(targets)
