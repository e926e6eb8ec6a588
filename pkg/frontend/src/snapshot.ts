/** Loading and validating published snapshots.
 *
 * A schema mismatch is surfaced to the caller as a SchemaError, never
 * silently coerced: the audit site must not render data it cannot vouch for.
 */

import {
  NODE_CLASSES,
  NodeClass,
  Snapshot,
  SnapshotEdge,
  SnapshotNode,
  SNAPSHOT_SCHEMA_VERSION,
} from "./types.js";

export class SchemaError extends Error {}

export class LoadError extends Error {}

export interface GraphView {
  snapshot: Snapshot;
  nodesById: Map<string, SnapshotNode>;
  incoming: Map<string, SnapshotEdge[]>;
  outgoing: Map<string, SnapshotEdge[]>;
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function checkNode(value: unknown, index: number): SnapshotNode {
  if (!isRecord(value) || typeof value.id !== "string") {
    throw new SchemaError(`node ${index} is malformed`);
  }
  if (!NODE_CLASSES.includes(value.class as NodeClass)) {
    throw new SchemaError(`node ${index} has unknown class ${String(value.class)}`);
  }
  return value as unknown as SnapshotNode;
}

function checkEdge(value: unknown, index: number): SnapshotEdge {
  if (
    !isRecord(value) ||
    typeof value.from !== "string" ||
    typeof value.to !== "string" ||
    typeof value.kind !== "string" ||
    typeof value.status !== "string"
  ) {
    throw new SchemaError(`edge ${index} is malformed`);
  }
  return value as unknown as SnapshotEdge;
}

export function parseSnapshot(data: unknown): Snapshot {
  if (!isRecord(data)) {
    throw new SchemaError("snapshot is not an object");
  }
  if (data.schema_version !== SNAPSHOT_SCHEMA_VERSION) {
    throw new SchemaError(
      `unsupported schema_version ${String(data.schema_version)}, ` +
        `expected ${SNAPSHOT_SCHEMA_VERSION}`,
    );
  }
  if (!Array.isArray(data.nodes) || !Array.isArray(data.edges) || !isRecord(data.stats)) {
    throw new SchemaError("snapshot is missing nodes, edges, or stats");
  }
  const nodes = data.nodes.map(checkNode);
  const edges = data.edges.map(checkEdge);
  return {
    schema_version: SNAPSHOT_SCHEMA_VERSION,
    nodes,
    edges,
    stats: data.stats as unknown as Snapshot["stats"],
  };
}

export function buildView(snapshot: Snapshot): GraphView {
  const nodesById = new Map<string, SnapshotNode>();
  for (const node of snapshot.nodes) {
    nodesById.set(node.id, node);
  }
  const incoming = new Map<string, SnapshotEdge[]>();
  const outgoing = new Map<string, SnapshotEdge[]>();
  for (const edge of snapshot.edges) {
    if (!nodesById.has(edge.from) || !nodesById.has(edge.to)) {
      throw new SchemaError(`edge ${edge.from} -> ${edge.to} references a missing node`);
    }
    const into = incoming.get(edge.to) ?? [];
    into.push(edge);
    incoming.set(edge.to, into);
    const outof = outgoing.get(edge.from) ?? [];
    outof.push(edge);
    outgoing.set(edge.from, outof);
  }
  return { snapshot, nodesById, incoming, outgoing };
}

export type FetchLike = (url: string) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

/** Fetch /api/snapshot from the given base URL and build the in-memory view. */
export async function loadSnapshot(
  endpointBase: string,
  fetchImpl: FetchLike = fetch,
): Promise<GraphView> {
  let payload: unknown;
  try {
    const response = await fetchImpl(`${endpointBase}/api/snapshot`);
    if (!response.ok) {
      throw new LoadError(`snapshot request failed with status ${response.status}`);
    }
    payload = await response.json();
  } catch (error) {
    if (error instanceof LoadError) throw error;
    throw new LoadError(`snapshot request failed: ${String(error)}`);
  }
  return buildView(parseSnapshot(payload));
}
