// SVG rendering of the map model from /api/map display hints.  Routing
// semantics never live here; the drawing is just nodes, edges, and an
// optional highlighted walk.

import type { MapModel, MapNodeView } from "./types.js";

const CELL = 64;
const MARGIN = 40;
const SVG_NS = "http://www.w3.org/2000/svg";

export interface MapBounds {
  minX: number;
  minY: number;
  width: number;
  height: number;
}

export function mapBounds(model: MapModel): MapBounds {
  const xs = model.nodes.map((n) => n.x ?? 0);
  const ys = model.nodes.map((n) => n.y ?? 0);
  const minX = Math.min(...xs);
  const minY = Math.min(...ys);
  return {
    minX,
    minY,
    width: Math.max(...xs) - minX + 1,
    height: Math.max(...ys) - minY + 1,
  };
}

function place(node: MapNodeView, bounds: MapBounds): [number, number] {
  return [
    MARGIN + ((node.x ?? 0) - bounds.minX) * CELL,
    MARGIN + ((node.y ?? 0) - bounds.minY) * CELL,
  ];
}

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

export function renderMap(model: MapModel, highlight: string[]): SVGSVGElement {
  const bounds = mapBounds(model);
  const svg = el("svg", {
    viewBox: `0 0 ${bounds.width * CELL + 2 * MARGIN} ${bounds.height * CELL + 2 * MARGIN}`,
    class: "office-map",
  });
  const byId = new Map(model.nodes.map((n) => [n.id, n] as const));

  for (const edge of model.edges) {
    const from = byId.get(edge.from);
    const to = byId.get(edge.to);
    if (!from || !to) {
      continue;
    }
    const [x1, y1] = place(from, bounds);
    const [x2, y2] = place(to, bounds);
    svg.appendChild(el("line", {
      x1: String(x1), y1: String(y1), x2: String(x2), y2: String(y2),
      class: edge.action === "enter" ? "edge edge-enter" : "edge",
    }));
    if (edge.landmark !== null) {
      const label = el("text", {
        x: String((x1 + x2) / 2),
        y: String((y1 + y2) / 2 - 6),
        class: "landmark-label",
      });
      label.textContent = edge.landmark;
      svg.appendChild(label);
    }
  }

  if (highlight.length > 1) {
    const points = highlight
      .map((id) => byId.get(id))
      .filter((n): n is MapNodeView => n !== undefined)
      .map((n) => place(n, bounds).join(","))
      .join(" ");
    svg.appendChild(el("polyline", { points, class: "route-highlight" }));
  }

  for (const node of model.nodes) {
    const [x, y] = place(node, bounds);
    const highlighted = highlight.includes(node.id);
    if (node.kind === "room") {
      svg.appendChild(el("rect", {
        x: String(x - 22), y: String(y - 16), width: "44", height: "32", rx: "5",
        class: `room${node.id === model.start ? " start" : ""}${highlighted ? " on-route" : ""}`,
      }));
      const label = el("text", { x: String(x), y: String(y + 4), class: "room-label" });
      label.textContent = node.room_number !== null ? String(node.room_number) : (node.label ?? node.id);
      svg.appendChild(label);
    } else {
      svg.appendChild(el("circle", {
        cx: String(x), cy: String(y), r: node.kind === "junction" ? "6" : "4",
        class: `${node.kind}${highlighted ? " on-route" : ""}`,
      }));
    }
  }
  return svg;
}
