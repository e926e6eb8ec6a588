"""Read-only HTTP surface for the published snapshot.

The service loads one immutable snapshot at startup and serves it to the
explorer and to anyone auditing the graph. There are no mutating routes:
corrections flow through the issue tracker, never through this API.
"""

from __future__ import annotations

from pathlib import Path
from typing import Literal, Optional

from fastapi import FastAPI
from fastapi.responses import Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, ConfigDict, Field

SNAPSHOT_SCHEMA_VERSION = 1


class NodeOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    id: str
    node_class: str = Field(alias="class")
    year: Optional[int] = None
    label: Optional[str] = None
    venue: Optional[str] = None


class EdgeOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    src: str = Field(alias="from")
    to: str
    kind: str
    status: str


class KappaBlock(BaseModel):
    median: Optional[float]
    per_paper_count: int


class MinutesBlock(BaseModel):
    median: Optional[float]
    q1: Optional[float]
    q3: Optional[float]


class StatsBlock(BaseModel):
    node_counts: dict[str, int]
    edge_count: int
    kappa: KappaBlock
    reading_minutes: MinutesBlock
    year_histogram: dict[str, int]


class SnapshotDocument(BaseModel):
    schema_version: Literal[1]
    nodes: list[NodeOut]
    edges: list[EdgeOut]
    stats: StatsBlock


def load_snapshot(path: Path) -> tuple[bytes, SnapshotDocument]:
    """Read and validate snapshot bytes; the raw bytes are what gets served."""
    raw = path.read_bytes()
    document = SnapshotDocument.model_validate_json(raw)
    return raw, document


def create_app(snapshot_path: Path, assets_dir: Optional[Path] = None) -> FastAPI:
    raw, document = load_snapshot(snapshot_path)
    app = FastAPI(title="reuse graph snapshot", docs_url=None, redoc_url=None, openapi_url=None)

    @app.get("/api/snapshot")
    def api_snapshot() -> Response:
        # Exact canonical bytes, not a re-serialization.
        return Response(content=raw, media_type="application/json")

    @app.get("/api/stats", response_model=StatsBlock)
    def api_stats() -> StatsBlock:
        return document.stats

    if assets_dir is not None:
        app.mount("/", StaticFiles(directory=assets_dir, html=True), name="explorer")
    return app
