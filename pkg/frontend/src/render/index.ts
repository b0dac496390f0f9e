/**
 * Payload-to-markup dispatch. Every chart is a pure function of its
 * payload: same payload bytes, same markup. Unknown kinds degrade to an
 * error card naming the kind rather than a blank panel.
 */

import type { Payload } from '../types.js';
import { esc } from './scale.js';
import { renderBars } from './bars.js';
import { renderDensity } from './density.js';
import { renderHeatmap } from './heatmap.js';
import { renderBiplot, renderScatter } from './scatter.js';
import { renderRankedBars } from './rankedBars.js';
import { renderTree } from './tree.js';
import { renderTable } from './table.js';

export class UnsupportedKind extends Error {
  constructor(readonly kind: string) {
    super(`unsupported payload kind ${JSON.stringify(kind)}`);
    this.name = 'UnsupportedKind';
  }
}

const RENDERERS: Record<string, (payload: Payload) => string> = {
  bars: renderBars,
  density: renderDensity,
  heatmap: renderHeatmap,
  scatter: (p) => renderScatter(p),
  biplot: (p) => renderBiplot(p),
  'ranked-bars': renderRankedBars,
  tree: renderTree,
  table: renderTable,
};

export function errorCard(message: string): string {
  return `<div class="error-card" role="alert">${esc(message)}</div>`;
}

/** Render a payload, or throw UnsupportedKind for kinds this UI cannot draw. */
export function renderPayloadStrict(payload: Payload): string {
  const fn = RENDERERS[payload.kind];
  if (!fn) throw new UnsupportedKind(payload.kind);
  return fn(payload);
}

/** Render a payload, degrading unknown kinds to an error card. */
export function renderPayload(payload: Payload): string {
  try {
    return renderPayloadStrict(payload);
  } catch (err) {
    if (err instanceof UnsupportedKind) {
      return errorCard(`Unsupported payload kind "${err.kind}"`);
    }
    throw err;
  }
}

export {
  renderBars,
  renderDensity,
  renderHeatmap,
  renderScatter,
  renderBiplot,
  renderRankedBars,
  renderTree,
  renderTable,
};
