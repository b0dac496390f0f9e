/**
 * Rectangle brushing on ordination scatterplots. The brush resolves to
 * the ids of points inside the rectangle (in data coordinates) and posts
 * them as one column selection; an empty rectangle posts an empty id
 * list, which clears the panel's active selection downstream.
 */

import type { ApiClient } from './api.js';
import type { MutationResponse, Payload, ScatterSeries } from './types.js';

export interface BrushRect {
  x0: number;
  x1: number;
  y0: number;
  y1: number;
}

const BRUSHABLE = new Set(['scatter', 'biplot']);

export function isBrushable(kind: string): boolean {
  return BRUSHABLE.has(kind);
}

/** Ids of points with coordinates inside the (inclusive) rectangle. */
export function pointsInRect(series: ScatterSeries, rect: BrushRect): string[] {
  const xMin = Math.min(rect.x0, rect.x1);
  const xMax = Math.max(rect.x0, rect.x1);
  const yMin = Math.min(rect.y0, rect.y1);
  const yMax = Math.max(rect.y0, rect.y1);
  return series.ids.filter((_, i) => {
    const x = series.x[i];
    const y = series.y[i];
    return x >= xMin && x <= xMax && y >= yMin && y <= yMax;
  });
}

/**
 * Resolve a brush on a scatter/biplot panel and post it as a column
 * selection originating from that panel. Returns the server's mutation
 * response, or null when the panel kind has brushing disabled. A network
 * failure rejects without any client-side state change; the caller shows
 * a retriable toast.
 */
export async function brushToSelection(
  client: ApiClient,
  payload: Payload,
  rect: BrushRect,
): Promise<MutationResponse | null> {
  if (!isBrushable(payload.kind)) return null;
  const series = payload.series as unknown as ScatterSeries;
  const ids = pointsInRect(series, rect);
  return client.postSelection({ origin: payload.panel, axis: 'columns', ids });
}
