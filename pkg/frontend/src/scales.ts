/** Coordinate transforms between engine unit space and pane pixels. */

export interface PaneTransform {
  width: number;
  height: number;
}

/** Engine positions are unit-square with y pointing up; canvas y points down. */
export function graphToScreen(pos: [number, number], t: PaneTransform): [number, number] {
  return [pos[0] * t.width, (1 - pos[1]) * t.height];
}

export function screenToGraph(x: number, y: number, t: PaneTransform): [number, number] {
  return [x / t.width, 1 - y / t.height];
}

/** Evenly spaced axis x-positions inside a panel of the given width. */
export function axisPositions(nAxes: number, width: number, inset: number): number[] {
  if (nAxes === 1) return [width / 2];
  const span = width - 2 * inset;
  const xs: number[] = [];
  for (let i = 0; i < nAxes; i++) {
    xs.push(inset + (span * i) / (nAxes - 1));
  }
  return xs;
}

/** Normalized value (1 = top) to a y pixel inside a panel of given height. */
export function valueToY(v: number, height: number): number {
  return (1 - v) * height;
}
