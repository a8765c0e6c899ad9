/** Pure SVG markup builder for a fetched view.
 *
 * Nodes are drawn exactly where the service placed them and edges exactly as
 * thick as the service said; the only geometry added here is presentational
 * (sector wedge angles, label offsets, view box framing).
 */

import type { View, ViewNode } from "./api.js";

export const NODE_RADIUS = 16;
const MARGIN = 48;

export interface RenderOptions {
  selected?: ReadonlySet<number>;
  /** Objective values per original solution id, used for hover titles. */
  objectiveValues?: ReadonlyMap<number, readonly number[]>;
  objectiveNames?: readonly string[];
}

/** A human-readable description of what is wrong with a view document, or
 * null when it can be rendered. */
export function describeViewProblem(view: unknown): string | null {
  if (typeof view !== "object" || view === null) {
    return "view is not an object";
  }
  const v = view as Partial<View>;
  if (!Array.isArray(v.nodes) || !Array.isArray(v.edges)) {
    return "view is missing its nodes or edges array";
  }
  for (const node of v.nodes) {
    if (
      typeof node?.id !== "number" ||
      !Number.isFinite(node?.x) ||
      !Number.isFinite(node?.y) ||
      !Array.isArray(node?.sectors) ||
      node.sectors.length === 0
    ) {
      return `node ${JSON.stringify(node?.id)} is malformed`;
    }
  }
  const ids = new Set(v.nodes.map((n) => n.id));
  for (const edge of v.edges) {
    if (!ids.has(edge?.a) || !ids.has(edge?.b)) {
      return `edge ${JSON.stringify(edge?.a)}-${JSON.stringify(edge?.b)} references a missing node`;
    }
    if (!Number.isFinite(edge?.thickness)) {
      return `edge ${edge.a}-${edge.b} has no usable thickness`;
    }
  }
  return null;
}

export function renderPlaceholder(problem: string): string {
  return `<div class="placeholder">cannot draw this view: ${escapeText(problem)}</div>`;
}

export function renderNetwork(view: View, options: RenderOptions = {}): string {
  const selected = options.selected ?? new Set<number>();
  const byId = new Map(view.nodes.map((n) => [n.id, n]));

  const xs = view.nodes.map((n) => n.x);
  const ys = view.nodes.map((n) => n.y);
  const minX = Math.min(...xs) - MARGIN;
  const minY = Math.min(...ys) - MARGIN;
  const width = Math.max(...xs) - minX + MARGIN;
  const height = Math.max(...ys) - minY + MARGIN;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" class="network" ` +
      `viewBox="${fmt(minX)} ${fmt(minY)} ${fmt(width)} ${fmt(height)}">`,
  );

  for (const edge of view.edges) {
    const a = byId.get(edge.a)!;
    const b = byId.get(edge.b)!;
    parts.push(
      `<g class="edge" data-edge="${edge.a}-${edge.b}">` +
        `<line x1="${fmt(a.x)}" y1="${fmt(a.y)}" x2="${fmt(b.x)}" y2="${fmt(b.y)}" ` +
        `stroke="#555555" stroke-width="${fmt(edge.thickness)}" stroke-linecap="round"/>` +
        `<text class="edge-label" x="${fmt((a.x + b.x) / 2)}" y="${fmt((a.y + b.y) / 2 - 4)}">` +
        `${escapeText(edge.label)}</text></g>`,
    );
  }

  for (const node of view.nodes) {
    parts.push(renderNode(node, selected.has(node.id), options));
  }

  parts.push("</svg>");
  return parts.join("\n");
}

function renderNode(node: ViewNode, isSelected: boolean, options: RenderOptions): string {
  const { x, y } = node;
  const parts: string[] = [];
  const cls = isSelected ? "node selected" : "node";
  parts.push(`<g class="${cls}" data-node-id="${node.id}">`);

  const values = options.objectiveValues?.get(node.id);
  if (values) {
    const names = options.objectiveNames ?? [];
    const text = values
      .map((v, i) => `${names[i] ?? `f${i + 1}`}=${v}`)
      .join(", ");
    parts.push(`<title>solution ${node.id}: ${escapeText(text)}</title>`);
  }

  parts.push(
    `<circle class="backing" cx="${fmt(x)}" cy="${fmt(y)}" r="${NODE_RADIUS}" fill="#FFFFFF" stroke="#333333" stroke-width="1"/>`,
  );

  const k = node.sectors.length;
  if (k === 1) {
    const only = node.sectors[0]!;
    parts.push(
      `<circle class="sector" cx="${fmt(x)}" cy="${fmt(y)}" r="${NODE_RADIUS}" ` +
        `fill="${only.color}" fill-opacity="${only.alpha.toFixed(4)}"/>`,
    );
  } else {
    // equal wedges, first starting at 12 o'clock and sweeping clockwise
    for (let i = 0; i < k; i++) {
      const a0 = -Math.PI / 2 + (2 * Math.PI * i) / k;
      const a1 = -Math.PI / 2 + (2 * Math.PI * (i + 1)) / k;
      const x0 = x + NODE_RADIUS * Math.cos(a0);
      const y0 = y + NODE_RADIUS * Math.sin(a0);
      const x1 = x + NODE_RADIUS * Math.cos(a1);
      const y1 = y + NODE_RADIUS * Math.sin(a1);
      const sector = node.sectors[i]!;
      parts.push(
        `<path class="sector" d="M ${fmt(x)} ${fmt(y)} L ${fmt(x0)} ${fmt(y0)} ` +
          `A ${NODE_RADIUS} ${NODE_RADIUS} 0 0 1 ${fmt(x1)} ${fmt(y1)} Z" ` +
          `fill="${sector.color}" fill-opacity="${sector.alpha.toFixed(4)}"/>`,
      );
    }
  }

  if (isSelected) {
    parts.push(
      `<circle class="selection-ring" cx="${fmt(x)}" cy="${fmt(y)}" r="${NODE_RADIUS + 4}" ` +
        `fill="none" stroke="#D62728" stroke-width="2" stroke-dasharray="4 3"/>`,
    );
  }

  parts.push(
    `<text class="node-label" x="${fmt(x)}" y="${fmt(y + NODE_RADIUS + 14)}">${node.id}</text>`,
  );
  parts.push("</g>");
  return parts.join("");
}

function fmt(v: number): string {
  return v.toFixed(2);
}

function escapeText(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
