/** Per-node detail panel data: metadata plus every incident edge. */

import { GraphView } from "./snapshot.js";
import { SnapshotEdge, SnapshotNode } from "./types.js";

export interface NodeDetail {
  node: SnapshotNode;
  incoming: SnapshotEdge[];
  outgoing: SnapshotEdge[];
  inDegree: number;
  outDegree: number;
}

export function nodeDetail(view: GraphView, id: string): NodeDetail | null {
  const node = view.nodesById.get(id);
  if (node === undefined) {
    return null;
  }
  const incoming = view.incoming.get(id) ?? [];
  const outgoing = view.outgoing.get(id) ?? [];
  return {
    node,
    incoming,
    outgoing,
    inDegree: incoming.length,
    outDegree: outgoing.length,
  };
}

/** Outgoing edges grouped by reuse kind, for the paper-node panel. */
export function edgesByKind(edges: SnapshotEdge[]): Map<string, SnapshotEdge[]> {
  const groups = new Map<string, SnapshotEdge[]>();
  for (const edge of [...edges].sort((a, b) => a.kind.localeCompare(b.kind))) {
    const group = groups.get(edge.kind) ?? [];
    group.push(edge);
    groups.set(edge.kind, group);
  }
  return groups;
}

export function displayYear(node: SnapshotNode): string {
  return node.year === undefined ? "unknown" : String(node.year);
}
