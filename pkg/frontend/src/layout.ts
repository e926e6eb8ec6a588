/** Small force-directed layout: spring edges, pairwise repulsion, centering.
 *
 * Positions are intentionally non-deterministic presentation state; nothing
 * contractual is derived from them.
 */

import { SnapshotEdge, SnapshotNode } from "./types.js";

export interface LayoutPoint {
  id: string;
  x: number;
  y: number;
  vx: number;
  vy: number;
}

export function initialLayout(nodes: SnapshotNode[], width: number, height: number): LayoutPoint[] {
  return nodes.map((node, index) => {
    const angle = (index / Math.max(nodes.length, 1)) * 2 * Math.PI;
    const radius = Math.min(width, height) * 0.35 * (0.6 + 0.4 * Math.random());
    return {
      id: node.id,
      x: width / 2 + radius * Math.cos(angle),
      y: height / 2 + radius * Math.sin(angle),
      vx: 0,
      vy: 0,
    };
  });
}

export function tick(
  points: LayoutPoint[],
  edges: SnapshotEdge[],
  width: number,
  height: number,
): void {
  const byId = new Map(points.map((point) => [point.id, point]));
  const repulsion = 1800;
  const springLength = 70;
  const springStrength = 0.02;
  const centering = 0.005;
  const damping = 0.85;

  for (let i = 0; i < points.length; i++) {
    const a = points[i]!;
    for (let j = i + 1; j < points.length; j++) {
      const b = points[j]!;
      const dx = a.x - b.x;
      const dy = a.y - b.y;
      const distSq = Math.max(dx * dx + dy * dy, 25);
      const force = repulsion / distSq;
      const dist = Math.sqrt(distSq);
      const fx = (dx / dist) * force;
      const fy = (dy / dist) * force;
      a.vx += fx;
      a.vy += fy;
      b.vx -= fx;
      b.vy -= fy;
    }
  }
  for (const edge of edges) {
    const from = byId.get(edge.from);
    const to = byId.get(edge.to);
    if (!from || !to) continue;
    const dx = to.x - from.x;
    const dy = to.y - from.y;
    const dist = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
    const stretch = (dist - springLength) * springStrength;
    const fx = (dx / dist) * stretch;
    const fy = (dy / dist) * stretch;
    from.vx += fx;
    from.vy += fy;
    to.vx -= fx;
    to.vy -= fy;
  }
  for (const point of points) {
    point.vx += (width / 2 - point.x) * centering;
    point.vy += (height / 2 - point.y) * centering;
    point.vx *= damping;
    point.vy *= damping;
    point.x += point.vx;
    point.y += point.vy;
    point.x = Math.min(Math.max(point.x, 10), width - 10);
    point.y = Math.min(Math.max(point.y, 10), height - 10);
  }
}
