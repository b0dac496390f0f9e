/**
 * Density-curve renderer: one polyline per feature over the grid the
 * server evaluated; the client only rescales coordinates to the viewport.
 */

import type { DensitySeries, Payload } from '../types.js';
import { categoryColor, esc, extentOf, linear } from './scale.js';

export const WIDTH = 640;
export const HEIGHT = 300;
const MARGIN = { top: 12, right: 12, bottom: 32, left: 44 };

export function renderDensity(payload: Payload): string {
  const s = payload.series as unknown as DensitySeries;
  const xs = s.curves.flatMap((c) => c.x);
  const ys = s.curves.flatMap((c) => c.y);
  const sx = linear(extentOf(xs), MARGIN.left, WIDTH - MARGIN.right);
  const sy = linear(extentOf([0, ...ys]), HEIGHT - MARGIN.bottom, MARGIN.top);

  const paths = s.curves
    .map((curve, i) => {
      const points = curve.x
        .map((x, k) => `${sx(x).toFixed(2)},${sy(curve.y[k]).toFixed(2)}`)
        .join(' ');
      return (
        `<polyline class="density-curve" data-feature="${esc(curve.feature)}"` +
        ` points="${points}" fill="none" stroke="${categoryColor(i)}" stroke-width="1.5"/>`
      );
    })
    .join('');

  const legend = payload.legend
    .map(
      (name, i) =>
        `<g transform="translate(${WIDTH - MARGIN.right - 140},${MARGIN.top + i * 14})">` +
        `<rect width="10" height="3" y="4" fill="${categoryColor(i)}"/>` +
        `<text x="14" y="9" font-size="10">${esc(name)}</text></g>`,
    )
    .join('');

  const labels =
    (payload.axis.x_label
      ? `<text x="${WIDTH / 2}" y="${HEIGHT - 6}" font-size="10" text-anchor="middle">` +
        `${esc(payload.axis.x_label)}</text>`
      : '') +
    (payload.axis.y_label
      ? `<text x="12" y="${HEIGHT / 2}" font-size="10" text-anchor="middle"` +
        ` transform="rotate(-90 12 ${HEIGHT / 2})">${esc(payload.axis.y_label)}</text>`
      : '');

  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}"` +
    ` class="chart chart-density" role="img">${paths}${legend}${labels}</svg>`
  );
}
