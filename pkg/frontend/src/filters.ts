/** Filtering the loaded graph.
 *
 * The displayed counts are computed here from the surviving arrays, so they
 * are equal to a recount over the raw snapshot by construction. An edge
 * survives only when both of its endpoints do.
 */

import { GraphView } from "./snapshot.js";
import { SnapshotEdge, SnapshotNode, ViewState } from "./types.js";

export interface FilteredGraph {
  nodes: SnapshotNode[];
  edges: SnapshotEdge[];
  nodeCount: number;
  edgeCount: number;
  /** Ids matching the search query, for highlighting. */
  matches: Set<string>;
}

export function nodePasses(node: SnapshotNode, state: ViewState): boolean {
  if (!state.classes.has(node.class)) {
    return false;
  }
  if (node.year !== undefined) {
    if (state.yearMin !== null && node.year < state.yearMin) return false;
    if (state.yearMax !== null && node.year > state.yearMax) return false;
  }
  if (state.venues !== null && node.venue !== undefined && !state.venues.has(node.venue)) {
    return false;
  }
  if (state.query !== "") {
    const query = state.query.toLowerCase();
    const inId = node.id.toLowerCase().includes(query);
    const inLabel = node.label !== undefined && node.label.toLowerCase().includes(query);
    if (!inId && !inLabel) return false;
  }
  return true;
}

export function applyFilters(view: GraphView, state: ViewState): FilteredGraph {
  const nodes = view.snapshot.nodes.filter((node) => nodePasses(node, state));
  const kept = new Set(nodes.map((node) => node.id));
  const edges = view.snapshot.edges.filter((edge) => kept.has(edge.from) && kept.has(edge.to));
  const matches = new Set<string>();
  if (state.query !== "") {
    for (const node of nodes) {
      matches.add(node.id);
    }
  }
  return { nodes, edges, nodeCount: nodes.length, edgeCount: edges.length, matches };
}

/** Distinct venues present in the snapshot, for building the venue filter UI. */
export function availableVenues(view: GraphView): string[] {
  const venues = new Set<string>();
  for (const node of view.snapshot.nodes) {
    if (node.venue !== undefined) {
      venues.add(node.venue);
    }
  }
  return [...venues].sort();
}

/** Known year range across nodes, or null when no node has a year. */
export function yearExtent(view: GraphView): [number, number] | null {
  let min: number | null = null;
  let max: number | null = null;
  for (const node of view.snapshot.nodes) {
    if (node.year === undefined) continue;
    min = min === null ? node.year : Math.min(min, node.year);
    max = max === null ? node.year : Math.max(max, node.year);
  }
  return min === null || max === null ? null : [min, max];
}
