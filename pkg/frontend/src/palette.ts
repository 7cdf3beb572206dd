/** Categorical palette; indices come from the ViewModel, never computed here. */

export const PALETTE = [
  "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628",
  "#f781bf", "#17becf", "#bcbd22", "#8c564b", "#00a0a0", "#666600",
];

export const NEUTRAL = "#999999";

export function colorFor(index: number): string {
  if (index < 0) return NEUTRAL; // reserved neutral slot (missing label)
  return PALETTE[index % PALETTE.length];
}
