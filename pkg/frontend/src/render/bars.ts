/**
 * Stacked-bar renderer for composition payloads: one bar group per
 * sample, one segment per feature, heights taken verbatim from the
 * payload's relative-abundance values.
 */

import type { BarsSeries, Payload } from '../types.js';
import { categoryColor, esc } from './scale.js';

export const WIDTH = 640;
export const HEIGHT = 360;
const MARGIN = { top: 12, right: 12, bottom: 56, left: 44 };

export function renderBars(payload: Payload): string {
  const s = payload.series as unknown as BarsSeries;
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const n = s.samples.length;
  const step = n > 0 ? plotW / n : plotW;
  const barW = Math.max(1, step * 0.85);

  const groups: string[] = [];
  s.samples.forEach((sample, j) => {
    const x = MARGIN.left + j * step + (step - barW) / 2;
    let yTop = MARGIN.top + plotH; // stack upward from the baseline
    const rects: string[] = [];
    s.features.forEach((feature, i) => {
      const h = s.values[i][j] * plotH;
      yTop -= h;
      rects.push(
        `<rect x="${x.toFixed(2)}" y="${yTop.toFixed(2)}" width="${barW.toFixed(2)}"` +
          ` height="${h.toFixed(2)}" fill="${categoryColor(i)}">` +
          `<title>${esc(sample)} / ${esc(feature)}: ${s.values[i][j]}</title></rect>`,
      );
    });
    const label =
      `<text x="${(x + barW / 2).toFixed(2)}" y="${HEIGHT - MARGIN.bottom + 14}"` +
      ` font-size="9" text-anchor="end" transform="rotate(-45 ${(x + barW / 2).toFixed(2)}` +
      ` ${HEIGHT - MARGIN.bottom + 14})">${esc(sample)}</text>`;
    groups.push(`<g class="bar-group" data-sample="${esc(sample)}">${rects.join('')}${label}</g>`);
  });

  const legend = payload.legend
    .map(
      (name, i) =>
        `<g transform="translate(${WIDTH - MARGIN.right - 120},${MARGIN.top + i * 14})">` +
        `<rect width="10" height="10" fill="${categoryColor(i)}"/>` +
        `<text x="14" y="9" font-size="10">${esc(name)}</text></g>`,
    )
    .join('');

  const yLabel = payload.axis.y_label
    ? `<text x="12" y="${MARGIN.top + plotH / 2}" font-size="10" text-anchor="middle"` +
      ` transform="rotate(-90 12 ${MARGIN.top + plotH / 2})">${esc(payload.axis.y_label)}</text>`
    : '';

  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}"` +
    ` class="chart chart-bars" role="img">` +
    `${groups.join('')}${legend}${yLabel}</svg>`
  );
}
