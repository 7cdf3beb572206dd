/** Payload shapes served by the session API (canonical JSON, snake_case). */

export interface GraphPane {
  dims: number[];
  positions: Record<string, [number, number]>; // dim id -> unit-square (x, y), y up
  edges: [number, number][];
  hidden_count: number;
  stress: number;
}

export interface Axis {
  dim: number;
  label: string;
  vmin: number;
  vmax: number;
}

export interface CliqueProvenance {
  kind: "cliques";
  cliques: number[][];
  junctions: number[];
  cost: number;
}

export interface RuleRef {
  dim: number;
  bin: number;
  support: number;
  confidence: number;
  direction: string;
}

export interface RuleProvenance {
  kind: "rules";
  label: string;
  rules: RuleRef[];
}

export interface Panel {
  id: string;
  axes: Axis[];
  lines: (number | null)[][]; // [item][axis], null = missing cell
  colors: number[]; // palette index per item, -1 = neutral
  provenance: CliqueProvenance | RuleProvenance;
}

export interface LegendEntry {
  index: number;
  label: string;
}

export interface ViewModel {
  revision: number;
  mode: "distance_cliques" | "label_rules";
  opacity: number;
  graph: GraphPane;
  panels: Panel[];
  legend: LegendEntry[];
  advisory: string | null;
}

export interface SliderSpec {
  min: number;
  max: number;
  steps: number;
}

export interface NumericDimMeta {
  id: number;
  label: string;
  vmin: number | null;
  vmax: number | null;
  missing: number;
  constant: boolean;
}

export interface CategoricalDimMeta {
  id: number;
  label: string;
  values: string[];
  counts: number[];
}

export interface DatasetMeta {
  name: string;
  items: number;
  numeric_dims: NumericDimMeta[];
  categorical_dims: CategoricalDimMeta[];
  metric: string;
  bin_count: number;
  sliders: Record<"d_select" | "d_remove" | "t_sup" | "t_con" | "opacity", SliderSpec>;
  defaults: Record<"d_select" | "d_remove" | "t_sup" | "t_con" | "opacity", number>;
}

/** Events accepted by POST /api/event. */
export type SessionEvent =
  | { type: "SetMode"; mode: "distance_cliques" | "label_rules" }
  | { type: "SetDSelect"; value: number }
  | { type: "SetDRemove"; value: number }
  | { type: "SetCatDim"; dim: number | null }
  | { type: "SetRuleThresholds"; t_sup: number; t_con: number; direction: string }
  | { type: "RectIncludeDims"; dims: number[] }
  | { type: "RectExcludeDims"; dims: number[] }
  | { type: "SetColorSource"; source: "categorical" }
  | { type: "SetColorSource"; source: "kmeans"; k: number; seed: number }
  | { type: "SetOpacity"; value: number }
  | { type: "ClearOverrides" };

export interface EventResponse {
  revision: number;
  warnings: string[];
}
