/**
 * Horizontal ranked-bar renderer for loading payloads: one bar per
 * feature in the server's ranking order, signed bars around a zero line.
 */

import type { Payload, RankedBarsSeries } from '../types.js';
import { esc, extentOf, linear } from './scale.js';

export const WIDTH = 480;
export const HEIGHT = 320;
const MARGIN = { top: 12, right: 16, bottom: 28, left: 130 };

export function renderRankedBars(payload: Payload): string {
  const s = payload.series as unknown as RankedBarsSeries;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const rowH = plotH / Math.max(1, s.ids.length);
  const sx = linear(extentOf([0, ...s.values]), MARGIN.left, WIDTH - MARGIN.right);
  const x0 = sx(0);

  const bars = s.ids
    .map((id, i) => {
      const x1 = sx(s.values[i]);
      const x = Math.min(x0, x1);
      const w = Math.abs(x1 - x0);
      const y = MARGIN.top + i * rowH;
      const fill = s.values[i] >= 0 ? '#4e79a7' : '#e15759';
      return (
        `<g class="ranked-bar" data-id="${esc(id)}">` +
        `<rect x="${x.toFixed(2)}" y="${(y + rowH * 0.1).toFixed(2)}" width="${w.toFixed(2)}"` +
        ` height="${(rowH * 0.8).toFixed(2)}" fill="${fill}">` +
        `<title>${esc(id)}: ${s.values[i]}</title></rect>` +
        `<text x="${MARGIN.left - 4}" y="${(y + rowH * 0.7).toFixed(2)}" font-size="9"` +
        ` text-anchor="end">${esc(id)}</text></g>`
      );
    })
    .join('');

  const zero =
    `<line x1="${x0.toFixed(2)}" y1="${MARGIN.top}" x2="${x0.toFixed(2)}"` +
    ` y2="${MARGIN.top + plotH}" stroke="#999" stroke-dasharray="3,2"/>`;
  const label = payload.axis.x_label
    ? `<text x="${WIDTH / 2}" y="${HEIGHT - 8}" font-size="10" text-anchor="middle">` +
      `${esc(payload.axis.x_label)}</text>`
    : '';

  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}"` +
    ` class="chart chart-ranked-bars" role="img">${zero}${bars}${label}</svg>`
  );
}
