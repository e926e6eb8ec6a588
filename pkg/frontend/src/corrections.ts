/** Prefilled issue-tracker links for proposing corrections.
 *
 * The explorer never writes anywhere: it only builds a new-issue URL whose
 * body embeds the node's current data and the visitor's note. Opening the
 * link (and submitting the issue) is the visitor's own action.
 */

import { NodeDetail } from "./detail.js";

export function correctionTitle(nodeId: string): string {
  return `Correction: ${nodeId}`;
}

export function correctionBody(detail: NodeDetail, note: string): string {
  const lines = [
    "## Current entry",
    "",
    "```json",
    JSON.stringify(detail.node, null, 2),
    "```",
    "",
    `Incoming edges: ${detail.inDegree}, outgoing edges: ${detail.outDegree}.`,
  ];
  if (note !== "") {
    lines.push("", "## Proposed correction", "", note);
  }
  return lines.join("\n");
}

export function proposeCorrectionUrl(trackerBase: string, detail: NodeDetail, note: string): string {
  const base = trackerBase.replace(/\/+$/, "");
  const title = encodeURIComponent(correctionTitle(detail.node.id));
  const body = encodeURIComponent(correctionBody(detail, note));
  return `${base}/issues/new?title=${title}&body=${body}`;
}
