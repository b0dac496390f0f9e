/**
 * Wire types for the session server's JSON API.
 *
 * Every number shown in the UI comes from one of these payload shapes;
 * the client never recomputes statistics, it only draws what it is sent.
 */

export type Axis = 'rows' | 'columns';

export type PayloadKind =
  | 'bars'
  | 'density'
  | 'heatmap'
  | 'scatter'
  | 'biplot'
  | 'ranked-bars'
  | 'tree'
  | 'table';

export interface BarsSeries {
  samples: string[];
  features: string[];
  /** One row per feature, one column per sample; stacked to 1 per sample. */
  values: number[][];
}

export interface DensityCurve {
  feature: string;
  x: number[];
  y: number[];
  bandwidth: number;
}

export interface DensitySeries {
  curves: DensityCurve[];
}

export interface HeatmapSeries {
  row_ids: string[];
  col_ids: string[];
  values: number[][];
  transform: { kind: string; pseudocount?: number };
}

export interface BiplotArrow {
  name: string;
  x: number;
  y: number;
}

export interface ScatterSeries {
  ids: string[];
  x: number[];
  y: number[];
  color: Array<string | number> | null;
  color_by: string | null;
  reduced_dim: string;
  /** Present on biplot payloads only. */
  arrows?: BiplotArrow[];
}

export interface RankedBarsSeries {
  ids: string[];
  values: number[];
  reduced_dim: string;
  component: number;
}

export interface TreeNode {
  id: number;
  label: string | null;
  parent: number | null;
  x: number;
  y: number;
  is_leaf: boolean;
}

export interface TreeSeries {
  nodes: TreeNode[];
  mode: 'phylogram' | 'cladogram';
  tips: Array<{ id: string; node_id: number }>;
  show_labels: boolean;
}

export interface TableSeries {
  columns: string[];
  rows: Array<Record<string, unknown>>;
  total: number;
  page: number;
  page_size: number;
}

export interface PayloadAxis {
  x_label?: string;
  y_label?: string;
  variance_note?: string | null;
}

export interface Payload {
  panel: string;
  kind: string;
  series: Record<string, unknown>;
  legend: string[];
  axis: PayloadAxis;
  provenance_id: string;
}

export interface PanelParams {
  id: string;
  type: string;
  data_params: Record<string, unknown>;
  visual_params: Record<string, unknown>;
  selection_params: Record<string, unknown>;
}

export interface LayoutResponse {
  panels: PanelParams[];
}

export interface SummaryResponse {
  features: number;
  samples: number;
  assays: string[];
  reduced_dims: string[];
  has_row_tree: boolean;
  has_col_tree: boolean;
  available_panels: string[];
  row_data_columns: string[];
  col_data_columns: string[];
}

export interface PanelSchema {
  data: string[];
  visual: string[];
  kind: PayloadKind;
}

export interface AvailableResponse {
  panels: string[];
  help_text: Record<string, string>;
  schemas: Record<string, PanelSchema>;
}

export interface SelectionEvent {
  origin: string;
  axis: Axis;
  ids: string[];
}

export interface MutationResponse {
  seq?: number;
  /** Panel ids whose payloads changed; clients re-fetch exactly these. */
  panels: string[];
}

export interface ChangeEvent {
  panels: string[];
}
