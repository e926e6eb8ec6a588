/** Wire types for snapshot schema version 1 and the explorer's view state. */

export const SNAPSHOT_SCHEMA_VERSION = 1;

export const NODE_CLASSES = ["paper", "doi", "preprint", "website", "repo"] as const;

export type NodeClass = (typeof NODE_CLASSES)[number];

export interface SnapshotNode {
  id: string;
  class: NodeClass;
  year?: number;
  label?: string;
  venue?: string;
}

export interface SnapshotEdge {
  from: string;
  to: string;
  kind: string;
  status: string;
}

export interface SnapshotStats {
  node_counts: Record<NodeClass, number>;
  edge_count: number;
  kappa: { median: number | null; per_paper_count: number };
  reading_minutes: { median: number | null; q1: number | null; q3: number | null };
  year_histogram: Record<string, number>;
}

export interface Snapshot {
  schema_version: number;
  nodes: SnapshotNode[];
  edges: SnapshotEdge[];
  stats: SnapshotStats;
}

/** Filters applied to the loaded snapshot. Display always reflects exactly
 * the nodes/edges these rules admit, never a cached approximation. */
export interface ViewState {
  /** Node classes currently shown; an empty set shows nothing. */
  classes: Set<NodeClass>;
  /** Inclusive year bounds; null means unbounded. Nodes without a year
   * always pass (there is nothing to compare). */
  yearMin: number | null;
  yearMax: number | null;
  /** Venues currently shown; null means "no venue filter". Nodes without a
   * venue (all sources) always pass. */
  venues: Set<string> | null;
  /** Case-insensitive substring match against node id and label. */
  query: string;
  selected: string | null;
}

export function defaultViewState(): ViewState {
  return {
    classes: new Set<NodeClass>(NODE_CLASSES),
    yearMin: null,
    yearMax: null,
    venues: null,
    query: "",
    selected: null,
  };
}
