/** Rectangle brush over the dimension-graph pane. */

import { dotsInRect, normalizeRect, Rect } from "./hittest.js";
import { PaneTransform } from "./scales.js";
import { SessionEvent } from "./types.js";

export type BrushMode = "include" | "exclude";

/** The event a finished brush posts, or null when no dot was covered. */
export function brushEvent(
  positions: Record<string, [number, number]>,
  rect: Rect,
  transform: PaneTransform,
  mode: BrushMode,
): SessionEvent | null {
  const dims = dotsInRect(positions, rect, transform);
  if (dims.length === 0) return null;
  return mode === "exclude"
    ? { type: "RectExcludeDims", dims }
    : { type: "RectIncludeDims", dims };
}

/** Tracks a drag in pane-local pixels and reports the final rectangle. */
export class BrushTracker {
  private start: [number, number] | null = null;
  current: Rect | null = null;

  begin(x: number, y: number): void {
    this.start = [x, y];
    this.current = normalizeRect(x, y, x, y);
  }

  move(x: number, y: number): void {
    if (!this.start) return;
    this.current = normalizeRect(this.start[0], this.start[1], x, y);
  }

  /** Ends the drag; returns the final rect (null for a stray mouseup). */
  finish(x: number, y: number): Rect | null {
    if (!this.start) return null;
    const rect = normalizeRect(this.start[0], this.start[1], x, y);
    this.start = null;
    this.current = null;
    return rect;
  }

  get active(): boolean {
    return this.start !== null;
  }
}
