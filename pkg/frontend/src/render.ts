/**
 * Canvas renderers for the two panes. DOM-per-polyline is infeasible at
 * hundreds of semi-transparent lines, so everything draws into a 2D
 * context. The context is a structural interface, which keeps the
 * renderers testable with a recording stub.
 */

import { colorFor } from "./palette.js";
import { axisPositions, graphToScreen, valueToY } from "./scales.js";
import { Panel, ViewModel } from "./types.js";

export interface Ctx2D {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  stroke(): void;
  fill(): void;
  fillText(text: string, x: number, y: number): void;
  save(): void;
  restore(): void;
  translate(x: number, y: number): void;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  fillStyle: string | CanvasGradient | CanvasPattern;
  globalAlpha: number;
  lineWidth: number;
  font: string;
  textAlign: CanvasTextAlign;
}

export interface GraphStats {
  dots: number;
  edges: number;
}

export interface PanelStats {
  panels: number;
  axes: number;
  polylines: number; // item-lines drawn (an all-missing item draws nothing)
}

export const PANEL_HEIGHT = 180;
export const PANEL_GAP = 56;
export const AXIS_INSET = 30;

export function panelsPixelHeight(panelCount: number): number {
  return Math.max(panelCount * (PANEL_HEIGHT + PANEL_GAP) + PANEL_GAP, PANEL_HEIGHT);
}

export function renderDimensionGraph(
  ctx: Ctx2D,
  view: ViewModel,
  width: number,
  height: number,
): GraphStats {
  ctx.clearRect(0, 0, width, height);
  const t = { width, height };
  let edges = 0;
  ctx.globalAlpha = 1;
  ctx.strokeStyle = "#7aa0c4";
  ctx.lineWidth = 1;
  for (const [a, b] of view.graph.edges) {
    const pa = view.graph.positions[String(a)];
    const pb = view.graph.positions[String(b)];
    if (!pa || !pb) continue;
    const [xa, ya] = graphToScreen(pa, t);
    const [xb, yb] = graphToScreen(pb, t);
    ctx.beginPath();
    ctx.moveTo(xa, ya);
    ctx.lineTo(xb, yb);
    ctx.stroke();
    edges++;
  }

  let dots = 0;
  ctx.fillStyle = "#20445e";
  for (const dim of view.graph.dims) {
    const pos = view.graph.positions[String(dim)];
    if (!pos) continue;
    const [x, y] = graphToScreen(pos, t);
    ctx.beginPath();
    ctx.arc(x, y, 3, 0, Math.PI * 2);
    ctx.fill();
    dots++;
  }

  ctx.fillStyle = "#333333";
  ctx.font = "11px sans-serif";
  ctx.textAlign = "left";
  ctx.fillText(
    `hidden: ${view.graph.hidden_count}   stress: ${view.graph.stress.toFixed(4)}`,
    6,
    height - 6,
  );
  return { dots, edges };
}

function renderOnePanel(ctx: Ctx2D, panel: Panel, width: number, opacity: number): number {
  const xs = axisPositions(panel.axes.length, width, AXIS_INSET);
  let polylines = 0;

  ctx.lineWidth = 1;
  for (let item = 0; item < panel.lines.length; item++) {
    const line = panel.lines[item];
    ctx.strokeStyle = colorFor(panel.colors[item] ?? -1);
    ctx.globalAlpha = opacity;
    let drawnAny = false;
    let runLength = 0;
    for (let a = 0; a < line.length; a++) {
      const v = line[a];
      if (v === null) {
        runLength = 0; // missing cell: skip this axis segment
        continue;
      }
      const y = valueToY(v, PANEL_HEIGHT);
      if (runLength === 0) {
        ctx.beginPath();
        ctx.moveTo(xs[a], y);
      } else {
        ctx.lineTo(xs[a], y);
        if (runLength === 1) drawnAny = true;
      }
      runLength++;
      if ((a + 1 === line.length || line[a + 1] === null) && runLength >= 2) {
        ctx.stroke();
      }
    }
    if (drawnAny) polylines++;
  }

  ctx.globalAlpha = 1;
  ctx.strokeStyle = "#222222";
  ctx.fillStyle = "#222222";
  ctx.font = "10px sans-serif";
  ctx.textAlign = "center";
  for (let a = 0; a < panel.axes.length; a++) {
    ctx.beginPath();
    ctx.moveTo(xs[a], 0);
    ctx.lineTo(xs[a], PANEL_HEIGHT);
    ctx.stroke();
    ctx.fillText(panel.axes[a].label, xs[a], -18);
    ctx.fillText(
      `${panel.axes[a].vmin.toPrecision(4)} .. ${panel.axes[a].vmax.toPrecision(4)}`,
      xs[a],
      PANEL_HEIGHT + 14,
    );
  }

  const prov = panel.provenance;
  const caption =
    prov.kind === "rules"
      ? `${panel.id}  label: ${prov.label} (${prov.rules.length} rules)`
      : `${panel.id}  cliques: ${prov.cliques.length}`;
  ctx.textAlign = "left";
  ctx.fillStyle = "#555555";
  ctx.fillText(caption, 0, -32);
  return polylines;
}

export function renderPcpPanels(
  ctx: Ctx2D,
  view: ViewModel,
  width: number,
  height: number,
): PanelStats {
  ctx.clearRect(0, 0, width, height);
  const stats: PanelStats = { panels: 0, axes: 0, polylines: 0 };
  let y = PANEL_GAP;
  for (const panel of view.panels) {
    ctx.save();
    ctx.translate(0, y);
    stats.polylines += renderOnePanel(ctx, panel, width, view.opacity);
    ctx.restore();
    stats.panels++;
    stats.axes += panel.axes.length;
    y += PANEL_HEIGHT + PANEL_GAP;
  }
  if (view.panels.length === 0) {
    ctx.globalAlpha = 1;
    ctx.fillStyle = "#666666";
    ctx.font = "12px sans-serif";
    ctx.textAlign = "left";
    ctx.fillText(view.advisory ?? "no panels at the current thresholds", 12, 24);
  }
  return stats;
}
