"""Command-line entry point.

Thin wiring only: commands parse options, call into the core modules, and
map failures to exit codes. 0 means clean, 1 means disputes outstanding
(check), 2 means a configuration problem, 3 means bad input data.
"""

from __future__ import annotations

import os
import socket
import sys
from pathlib import Path

import click

from dor.errors import DorError, SyncError
from dor.ingest import GitHubIssuesClient, make_packets, render_packet_issue, sync_issues
from dor.model import load_catalog
from dor.pipeline import RunConfig, run_build, write_outputs

EXIT_DISPUTES = 1
EXIT_CONFIG = 2
EXIT_DATA = 3


def _require_file(path: Path, label: str) -> Path:
    if not path.is_file():
        click.echo(f"error: {label} {path} does not exist", err=True)
        sys.exit(EXIT_CONFIG)
    return path


def _data_error(context: str, exc: DorError) -> None:
    click.echo(f"error: {context}: {exc}", err=True)
    sys.exit(EXIT_DATA)


def _load_catalog_checked(catalog_path: Path):
    try:
        with open(catalog_path, encoding="utf-8", newline="") as stream:
            return load_catalog(stream)
    except DorError as exc:
        _data_error(str(catalog_path), exc)


@click.group()
def main() -> None:
    """Build and publish crowdsourced reuse graphs."""


@main.command()
@click.option("--catalog", "catalog_path", type=Path, required=True, help="papers.csv path")
@click.option("--out", "output_dir", type=Path, default=Path("out"), show_default=True)
@click.option("--packet-size", type=int, default=10, show_default=True)
def packets(catalog_path: Path, output_dir: Path, packet_size: int) -> None:
    """Write one Markdown work-packet file per chunk of the catalog."""
    _require_file(catalog_path, "catalog")
    if packet_size < 1:
        click.echo(f"error: --packet-size must be >= 1, got {packet_size}", err=True)
        sys.exit(EXIT_CONFIG)
    catalog = _load_catalog_checked(catalog_path)
    chunks = make_packets(catalog, packet_size)
    output_dir.mkdir(parents=True, exist_ok=True)
    for packet in chunks:
        text = render_packet_issue(packet)
        (output_dir / f"packet_{packet.packet_id}.md").write_bytes(text.encode("utf-8"))
    click.echo(f"{len(chunks)} packets, {len(catalog)} papers")


def _config_from_options(catalog_path, readings_path, claims_path, owners_path,
                         output_dir, include_unverified) -> RunConfig:
    _require_file(catalog_path, "catalog")
    _require_file(readings_path, "readings")
    _require_file(claims_path, "claims")
    if owners_path is not None:
        _require_file(owners_path, "owners")
    return RunConfig(
        catalog_path=catalog_path,
        readings_path=readings_path,
        claims_path=claims_path,
        owners_path=owners_path,
        output_dir=output_dir,
        include_unverified=include_unverified,
    )


_PIPELINE_OPTIONS = [
    click.option("--catalog", "catalog_path", type=Path, required=True, help="papers.csv path"),
    click.option("--readings", "readings_path", type=Path, required=True, help="readings.csv path"),
    click.option("--claims", "claims_path", type=Path, required=True, help="claims.csv path"),
    click.option("--owners", "owners_path", type=Path, default=None, help="owners.csv path"),
    click.option("--include-unverified", is_flag=True, default=False,
                 help="also admit single-read items into the graph"),
]


def _with_pipeline_options(command):
    for option in reversed(_PIPELINE_OPTIONS):
        command = option(command)
    return command


@main.command()
@_with_pipeline_options
@click.option("--out", "output_dir", type=Path, default=Path("out"), show_default=True)
def build(catalog_path, readings_path, claims_path, owners_path, include_unverified, output_dir):
    """Run the full pipeline and write snapshot.json, graph.dot, report.txt."""
    config = _config_from_options(
        catalog_path, readings_path, claims_path, owners_path, output_dir, include_unverified
    )
    try:
        result = run_build(config)
    except DorError as exc:
        _data_error("build", exc)
    for warning in result.ledger.warnings:
        click.echo(f"warning: {warning}", err=True)
    written = write_outputs(result, output_dir)
    click.echo(f"wrote {', '.join(str(path) for path in written)}")


@main.command()
@_with_pipeline_options
def check(catalog_path, readings_path, claims_path, owners_path, include_unverified):
    """Validate inputs and report disputes without writing anything."""
    config = _config_from_options(
        catalog_path, readings_path, claims_path, owners_path, Path("out"), include_unverified
    )
    try:
        result = run_build(config)
    except DorError as exc:
        _data_error("check", exc)
    for warning in result.ledger.warnings:
        click.echo(f"warning: {warning}", err=True)
    click.echo(result.report_text, nl=False)
    if result.ledger.disputed():
        sys.exit(EXIT_DISPUTES)


@main.command()
@click.option("--out", "output_dir", type=Path, default=Path("out"), show_default=True,
              help="directory holding snapshot.json")
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--assets", "assets_dir", type=Path, default=None,
              help="static explorer assets to serve at /")
def serve(output_dir: Path, port: int, host: str, assets_dir: Path | None) -> None:
    """Serve the built snapshot read-only for the explorer."""
    import uvicorn

    from dor.server import create_app

    snapshot_path = output_dir / "snapshot.json"
    _require_file(snapshot_path, "snapshot")
    if assets_dir is not None and not assets_dir.is_dir():
        click.echo(f"error: assets directory {assets_dir} does not exist", err=True)
        sys.exit(EXIT_CONFIG)
    try:
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
        probe.close()
    except OSError as exc:
        click.echo(f"error: cannot bind {host}:{port}: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    try:
        app = create_app(snapshot_path, assets_dir)
    except ValueError as exc:
        click.echo(f"error: invalid snapshot {snapshot_path}: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    uvicorn.run(app, host=host, port=port, log_level="info")


@main.command()
@click.option("--catalog", "catalog_path", type=Path, required=True, help="papers.csv path")
@click.option("--packet-size", type=int, default=10, show_default=True)
@click.option("--repo", required=True, help="issue tracker repository, owner/name")
@click.option("--api-url", default="https://api.github.com", show_default=True)
def sync(catalog_path: Path, packet_size: int, repo: str, api_url: str) -> None:
    """Create one tracker issue per work packet; existing titles are skipped."""
    _require_file(catalog_path, "catalog")
    token = os.environ.get("DOR_TOKEN")
    if not token:
        click.echo("error: DOR_TOKEN is not set", err=True)
        sys.exit(EXIT_CONFIG)
    catalog = _load_catalog_checked(catalog_path)
    chunks = make_packets(catalog, packet_size)
    client = GitHubIssuesClient(repo=repo, token=token, api_url=api_url)
    try:
        report = sync_issues(client, chunks)
    except SyncError as exc:
        click.echo(
            f"error: {exc} (created: {exc.report.created}, skipped: {exc.report.skipped})",
            err=True,
        )
        sys.exit(EXIT_DATA)
    click.echo(f"created: {len(report.created)}, skipped: {len(report.skipped)}")


if __name__ == "__main__":
    main()
