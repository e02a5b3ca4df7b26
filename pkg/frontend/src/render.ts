/** SVG board rendering: nodes, curved parallel edges with visible ids,
 * tag colours, and certificate overlays. */

import type { Point } from "./layout.js";
import type { BoardView, EdgeView } from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface RenderOptions {
  onEdgeClick: (edgeId: number) => void;
  clickable: boolean;
}

function edgePath(edge: EdgeView, points: Point[]): string {
  const a = points[edge.u];
  const b = points[edge.v];
  if (edge.lane === 0) {
    return `M ${a.x} ${a.y} L ${b.x} ${b.y}`;
  }
  // curve parallel edges into separate lanes
  const mx = (a.x + b.x) / 2;
  const my = (a.y + b.y) / 2;
  const dx = b.x - a.x;
  const dy = b.y - a.y;
  const len = Math.max(Math.hypot(dx, dy), 1);
  const side = edge.lane % 2 === 1 ? 1 : -1;
  const spread = Math.ceil(edge.lane / 2) * 26 * side;
  const px = mx - (dy / len) * spread;
  const py = my + (dx / len) * spread;
  return `M ${a.x} ${a.y} Q ${px} ${py} ${b.x} ${b.y}`;
}

export function renderBoard(
  svg: SVGSVGElement,
  board: BoardView,
  points: Point[],
  options: RenderOptions,
): void {
  svg.innerHTML = "";
  const legal = new Set(board.legalMoves);
  for (const edge of board.edges) {
    const group = document.createElementNS(SVG_NS, "g");
    const path = document.createElementNS(SVG_NS, "path");
    path.setAttribute("d", edgePath(edge, points));
    path.setAttribute("fill", "none");
    path.classList.add("edge");
    if (edge.tag) path.classList.add(`tag-${edge.tag}`);
    if (edge.overlay) path.classList.add(`overlay-${edge.overlay}`);
    if (options.clickable && !edge.tag && legal.has(edge.id)) {
      path.classList.add("playable");
      path.addEventListener("click", () => options.onEdgeClick(edge.id));
    }
    group.appendChild(path);

    const a = points[edge.u];
    const b = points[edge.v];
    const label = document.createElementNS(SVG_NS, "text");
    const offset = edge.lane === 0 ? 0 : Math.ceil(edge.lane / 2) * 14 * (edge.lane % 2 === 1 ? 1 : -1);
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const len = Math.max(Math.hypot(dx, dy), 1);
    label.setAttribute("x", String((a.x + b.x) / 2 - (dy / len) * offset + 6));
    label.setAttribute("y", String((a.y + b.y) / 2 + (dx / len) * offset - 6));
    label.classList.add("edge-id");
    label.textContent = String(edge.id);
    group.appendChild(label);
    svg.appendChild(group);
  }
  for (let v = 0; v < board.n; v += 1) {
    const g = document.createElementNS(SVG_NS, "g");
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(points[v].x));
    circle.setAttribute("cy", String(points[v].y));
    circle.setAttribute("r", "16");
    circle.classList.add("node");
    if (board.blockOf) {
      circle.classList.add(`block-${board.blockOf.get(v)! % 6}`);
    }
    if (board.terminals && board.terminals.includes(v)) {
      circle.classList.add("terminal");
    }
    g.appendChild(circle);
    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(points[v].x));
    text.setAttribute("y", String(points[v].y + 5));
    text.setAttribute("text-anchor", "middle");
    text.classList.add("node-label");
    text.textContent =
      board.terminals && v === board.terminals[0]
        ? `s=${v}`
        : board.terminals && v === board.terminals[1]
          ? `t=${v}`
          : String(v);
    g.appendChild(text);
    svg.appendChild(g);
  }
}
