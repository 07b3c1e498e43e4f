import type { GraphPayload } from "./api.js";
import { EDGE_CLASSES, EDGE_COLORS, goalColor } from "./colors.js";
import { el, svgEl } from "./dom.js";

const SIZE = 560;
const RADIUS = SIZE * 0.4;

interface Point {
  x: number;
  y: number;
}

/** Deterministic circular layout: node i sits at angle 2*pi*i/n. */
function layout(ids: string[]): Map<string, Point> {
  const center = SIZE / 2;
  const positions = new Map<string, Point>();
  ids.forEach((id, i) => {
    const angle = (2 * Math.PI * i) / Math.max(ids.length, 1) - Math.PI / 2;
    positions.set(id, {
      x: center + RADIUS * Math.cos(angle),
      y: center + RADIUS * Math.sin(angle),
    });
  });
  return positions;
}

/**
 * Render a node-link view of the payload. Nodes are colored by their
 * goal, edges by their interaction class; clicking a node dims every
 * edge not touching it.
 */
export function renderGraph(payload: GraphPayload): SVGSVGElement {
  const svg = svgEl("svg", {
    class: "graph",
    viewBox: `0 0 ${SIZE} ${SIZE}`,
    role: "img",
  });
  const positions = layout(payload.nodes.map((n) => n.code));

  const edgeLayer = svgEl("g", { class: "edges" });
  for (const edge of payload.edges) {
    const a = positions.get(edge.source);
    const b = positions.get(edge.target);
    if (!a || !b) {
      continue;
    }
    const line = svgEl("line", {
      class: "edge",
      x1: a.x.toFixed(1),
      y1: a.y.toFixed(1),
      x2: b.x.toFixed(1),
      y2: b.y.toFixed(1),
      stroke: EDGE_COLORS[edge.class],
      "stroke-width": edge.score === null ? 1 : 1 + Math.abs(edge.score),
      "data-source": edge.source,
      "data-target": edge.target,
      "data-class": edge.class,
    });
    if (edge.class === "uncolored") {
      line.setAttribute("stroke-dasharray", "3 3");
    }
    const title = svgEl("title");
    title.textContent =
      edge.score === null
        ? `${edge.source} | ${edge.target}: not yet scored`
        : `${edge.source} | ${edge.target}: ${edge.score}`;
    line.append(title);
    edgeLayer.append(line);
  }
  svg.append(edgeLayer);

  const nodeLayer = svgEl("g", { class: "nodes" });
  for (const node of payload.nodes) {
    const point = positions.get(node.code);
    if (!point) {
      continue;
    }
    const group = svgEl("g", {
      class: "node",
      "data-id": node.code,
      onClick: () => highlight(svg, node.code),
    });
    const circle = svgEl("circle", {
      cx: point.x.toFixed(1),
      cy: point.y.toFixed(1),
      r: 11,
      fill: goalColor(node.goal),
    });
    const title = svgEl("title");
    title.textContent = `${node.code}: ${node.label}`;
    circle.append(title);
    const text = svgEl("text", {
      x: point.x.toFixed(1),
      y: (point.y + 3.5).toFixed(1),
      "text-anchor": "middle",
      class: "node-label",
    });
    text.textContent = node.code;
    group.append(circle, text);
    nodeLayer.append(group);
  }
  svg.append(nodeLayer);
  return svg;
}

function highlight(svg: SVGSVGElement, id: string): void {
  const selected = svg.getAttribute("data-selected");
  const next = selected === id ? null : id;
  if (next === null) {
    svg.removeAttribute("data-selected");
  } else {
    svg.setAttribute("data-selected", next);
  }
  svg.querySelectorAll<SVGLineElement>("line.edge").forEach((line) => {
    const touches =
      next === null ||
      line.getAttribute("data-source") === next ||
      line.getAttribute("data-target") === next;
    line.classList.toggle("dimmed", !touches);
  });
}

export function renderLegend(): HTMLElement {
  const legend = el("div", { class: "legend" });
  for (const cls of EDGE_CLASSES) {
    legend.append(
      el(
        "span",
        { class: "legend-entry" },
        el("span", {
          class: "legend-swatch",
          style: `background:${EDGE_COLORS[cls]}`,
          "data-class": cls,
        }),
        cls,
      ),
    );
  }
  return legend;
}
