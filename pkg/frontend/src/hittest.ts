/** Dot hit-testing for rectangle brushes on the dimension-graph pane. */

import { graphToScreen, PaneTransform } from "./scales.js";

export interface Rect {
  x: number;
  y: number;
  width: number;
  height: number;
}

export function normalizeRect(x0: number, y0: number, x1: number, y1: number): Rect {
  return {
    x: Math.min(x0, x1),
    y: Math.min(y0, y1),
    width: Math.abs(x1 - x0),
    height: Math.abs(y1 - y0),
  };
}

/**
 * Dim ids whose dots fall inside a screen-space rectangle.
 * Brushes resolve to ids client-side so the API stays geometry-free.
 */
export function dotsInRect(
  positions: Record<string, [number, number]>,
  rect: Rect,
  t: PaneTransform,
): number[] {
  const hits: number[] = [];
  for (const [dim, pos] of Object.entries(positions)) {
    const [sx, sy] = graphToScreen(pos, t);
    if (sx >= rect.x && sx <= rect.x + rect.width && sy >= rect.y && sy <= rect.y + rect.height) {
      hits.push(Number(dim));
    }
  }
  hits.sort((a, b) => a - b);
  return hits;
}
