/**
 * Heatmap renderer: a cell grid in the exact row/column order the server
 * sent (clustering happened server-side); color is a cosmetic ramp over
 * the payload's own value range.
 */

import type { HeatmapSeries, Payload } from '../types.js';
import { esc, extentOf, sequentialColor } from './scale.js';

export const WIDTH = 640;
export const HEIGHT = 420;
const MARGIN = { top: 12, right: 80, bottom: 60, left: 90 };

export function renderHeatmap(payload: Payload, showLabels = true): string {
  const s = payload.series as unknown as HeatmapSeries;
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const cw = plotW / Math.max(1, s.col_ids.length);
  const ch = plotH / Math.max(1, s.row_ids.length);
  const ext = extentOf(s.values.flat());
  const span = ext.max - ext.min || 1;

  const cells: string[] = [];
  s.row_ids.forEach((rid, i) => {
    s.col_ids.forEach((cid, j) => {
      const v = s.values[i][j];
      cells.push(
        `<rect class="cell" data-row="${esc(rid)}" data-col="${esc(cid)}"` +
          ` x="${(MARGIN.left + j * cw).toFixed(2)}" y="${(MARGIN.top + i * ch).toFixed(2)}"` +
          ` width="${cw.toFixed(2)}" height="${ch.toFixed(2)}"` +
          ` fill="${sequentialColor((v - ext.min) / span)}">` +
          `<title>${esc(rid)} / ${esc(cid)}: ${v}</title></rect>`,
      );
    });
  });

  let labels = '';
  if (showLabels) {
    const rowLabels = s.row_ids
      .map(
        (rid, i) =>
          `<text x="${MARGIN.left - 4}" y="${(MARGIN.top + (i + 0.7) * ch).toFixed(2)}"` +
          ` font-size="8" text-anchor="end">${esc(rid)}</text>`,
      )
      .join('');
    const colLabels = s.col_ids
      .map((cid, j) => {
        const x = (MARGIN.left + (j + 0.5) * cw).toFixed(2);
        const y = MARGIN.top + plotH + 10;
        return (
          `<text x="${x}" y="${y}" font-size="8" text-anchor="end"` +
          ` transform="rotate(-60 ${x} ${y})">${esc(cid)}</text>`
        );
      })
      .join('');
    labels = rowLabels + colLabels;
  }

  const note =
    `<text x="${WIDTH - MARGIN.right + 6}" y="${MARGIN.top + 10}" font-size="9">` +
    `${esc(s.transform.kind)}</text>`;

  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}"` +
    ` class="chart chart-heatmap" role="img">${cells.join('')}${labels}${note}</svg>`
  );
}
