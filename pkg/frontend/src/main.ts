/** Explorer application shell: wiring between the DOM and the pure modules. */

import { proposeCorrectionUrl } from "./corrections.js";
import { displayYear, edgesByKind, nodeDetail } from "./detail.js";
import { applyFilters, availableVenues, FilteredGraph } from "./filters.js";
import { initialLayout, LayoutPoint, tick } from "./layout.js";
import { GraphView, loadSnapshot } from "./snapshot.js";
import { defaultViewState, NODE_CLASSES, NodeClass, ViewState } from "./types.js";

const CLASS_COLORS: Record<NodeClass, string> = {
  paper: "#222222",
  doi: "#2166c8",
  preprint: "#c0392b",
  website: "#8a8a8a",
  repo: "#1e8449",
};

const DEFAULT_TRACKER = "https://github.com/example/reuse-graph";

const WIDTH = 900;
const HEIGHT = 620;

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

class ExplorerApp {
  private view: GraphView | null = null;
  private state: ViewState = defaultViewState();
  private filtered: FilteredGraph | null = null;
  private points: LayoutPoint[] = [];
  private animation: number | null = null;

  async start(): Promise<void> {
    el<HTMLDivElement>("error-banner").hidden = true;
    try {
      this.view = await loadSnapshot("");
    } catch (error) {
      this.showError(String(error));
      return;
    }
    this.buildControls();
    this.refresh();
  }

  private showError(message: string): void {
    const banner = el<HTMLDivElement>("error-banner");
    banner.hidden = false;
    el<HTMLSpanElement>("error-text").textContent = message;
  }

  private buildControls(): void {
    if (!this.view) return;
    const classBox = el<HTMLDivElement>("class-filters");
    classBox.innerHTML = "";
    for (const nodeClass of NODE_CLASSES) {
      const label = document.createElement("label");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.checked = true;
      box.addEventListener("change", () => {
        if (box.checked) this.state.classes.add(nodeClass);
        else this.state.classes.delete(nodeClass);
        this.refresh();
      });
      const swatch = document.createElement("span");
      swatch.className = "swatch";
      swatch.style.background = CLASS_COLORS[nodeClass];
      label.append(box, swatch, ` ${nodeClass}`);
      classBox.append(label);
    }

    const venueSelect = el<HTMLSelectElement>("venue-filter");
    venueSelect.innerHTML = "";
    const everything = document.createElement("option");
    everything.value = "";
    everything.textContent = "all venues";
    venueSelect.append(everything);
    for (const venue of availableVenues(this.view)) {
      const option = document.createElement("option");
      option.value = venue;
      option.textContent = venue;
      venueSelect.append(option);
    }
    venueSelect.addEventListener("change", () => {
      this.state.venues = venueSelect.value === "" ? null : new Set([venueSelect.value]);
      this.refresh();
    });

    const hook = (id: string, apply: (value: string) => void) => {
      const input = el<HTMLInputElement>(id);
      input.addEventListener("input", () => {
        apply(input.value.trim());
        this.refresh();
      });
    };
    hook("year-min", (value) => (this.state.yearMin = value === "" ? null : Number(value)));
    hook("year-max", (value) => (this.state.yearMax = value === "" ? null : Number(value)));
    hook("search", (value) => (this.state.query = value));

    el<HTMLInputElement>("tracker-base").value = DEFAULT_TRACKER;
  }

  private refresh(): void {
    if (!this.view) return;
    this.filtered = applyFilters(this.view, this.state);
    el<HTMLSpanElement>("counts").textContent =
      `${this.filtered.nodeCount} nodes, ${this.filtered.edgeCount} edges shown ` +
      `(of ${this.view.snapshot.nodes.length} / ${this.view.snapshot.edges.length})`;
    const empty = el<HTMLDivElement>("empty-state");
    empty.hidden = this.view.snapshot.nodes.length > 0;
    this.points = initialLayout(this.filtered.nodes, WIDTH, HEIGHT);
    this.renderDetail();
    this.animate();
  }

  private animate(): void {
    if (this.animation !== null) cancelAnimationFrame(this.animation);
    let steps = 0;
    const run = () => {
      if (!this.filtered) return;
      tick(this.points, this.filtered.edges, WIDTH, HEIGHT);
      this.draw();
      if (++steps < 180) {
        this.animation = requestAnimationFrame(run);
      }
    };
    run();
  }

  private draw(): void {
    if (!this.filtered) return;
    const svg = el<HTMLElement>("graph");
    const positions = new Map(this.points.map((point) => [point.id, point]));
    const parts: string[] = [];
    for (const edge of this.filtered.edges) {
      const from = positions.get(edge.from);
      const to = positions.get(edge.to);
      if (!from || !to) continue;
      parts.push(
        `<line x1="${from.x.toFixed(1)}" y1="${from.y.toFixed(1)}"` +
          ` x2="${to.x.toFixed(1)}" y2="${to.y.toFixed(1)}"` +
          ` stroke="#c8c8c8" stroke-width="1"><title>${escapeXml(
            `${edge.from} -[${edge.kind}]-> ${edge.to}`,
          )}</title></line>`,
      );
    }
    for (const node of this.filtered.nodes) {
      const point = positions.get(node.id);
      if (!point) continue;
      const highlighted = this.filtered.matches.has(node.id) && this.state.query !== "";
      const selected = this.state.selected === node.id;
      const radius = node.class === "paper" ? 6 : 5;
      const stroke = selected ? "#f39c12" : highlighted ? "#d4ac0d" : "none";
      parts.push(
        `<circle data-node="${escapeXml(node.id)}" cx="${point.x.toFixed(1)}"` +
          ` cy="${point.y.toFixed(1)}" r="${radius}" fill="${CLASS_COLORS[node.class]}"` +
          ` stroke="${stroke}" stroke-width="2.5" cursor="pointer">` +
          `<title>${escapeXml(node.label ?? node.id)}</title></circle>`,
      );
    }
    svg.innerHTML = parts.join("");
    svg.querySelectorAll("circle").forEach((circle) => {
      circle.addEventListener("click", () => {
        this.state.selected = circle.getAttribute("data-node");
        this.renderDetail();
        this.draw();
      });
    });
  }

  private renderDetail(): void {
    const panel = el<HTMLDivElement>("detail");
    if (!this.view || this.state.selected === null) {
      panel.innerHTML = "<p>Select a node to inspect its entry.</p>";
      return;
    }
    const detail = nodeDetail(this.view, this.state.selected);
    if (!detail) {
      panel.innerHTML = `<p>No entry for <code>${escapeXml(this.state.selected)}</code>.</p>`;
      return;
    }
    const rows: string[] = [
      `<h2>${escapeXml(detail.node.label ?? detail.node.id)}</h2>`,
      `<p><code>${escapeXml(detail.node.id)}</code></p>`,
      `<p>class <b>${detail.node.class}</b> · year <b>${displayYear(detail.node)}</b>` +
        (detail.node.venue ? ` · venue <b>${escapeXml(detail.node.venue)}</b>` : "") +
        `</p>`,
      `<p>reused by <b>${detail.inDegree}</b> · reuses <b>${detail.outDegree}</b></p>`,
    ];
    if (detail.outgoing.length > 0) {
      rows.push("<h3>Reuses</h3>");
      for (const [kind, edges] of edgesByKind(detail.outgoing)) {
        rows.push(`<h4>${escapeXml(kind)}</h4><ul>`);
        for (const edge of edges) {
          rows.push(
            `<li><code>${escapeXml(edge.to)}</code> <i>(${escapeXml(edge.status)})</i></li>`,
          );
        }
        rows.push("</ul>");
      }
    }
    if (detail.incoming.length > 0) {
      rows.push("<h3>Reused by</h3><ul>");
      for (const edge of detail.incoming) {
        rows.push(
          `<li><code>${escapeXml(edge.from)}</code> as ${escapeXml(edge.kind)}` +
            ` <i>(${escapeXml(edge.status)})</i></li>`,
        );
      }
      rows.push("</ul>");
    }
    rows.push(
      '<h3>Propose a correction</h3>',
      '<textarea id="correction-note" rows="3" placeholder="What is wrong with this entry?"></textarea>',
      '<a id="correction-link" target="_blank" rel="noopener">Open prefilled issue</a>',
    );
    panel.innerHTML = rows.join("");
    const note = panel.querySelector<HTMLTextAreaElement>("#correction-note")!;
    const link = panel.querySelector<HTMLAnchorElement>("#correction-link")!;
    const update = () => {
      const tracker = el<HTMLInputElement>("tracker-base").value.trim() || DEFAULT_TRACKER;
      link.href = proposeCorrectionUrl(tracker, detail, note.value);
    };
    note.addEventListener("input", update);
    update();
  }
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const app = new ExplorerApp();
el<HTMLButtonElement>("retry").addEventListener("click", () => void app.start());
void app.start();
