/**
 * Scatter and biplot renderers for ordination payloads. Point positions
 * come straight from the payload scores; the biplot additionally draws
 * covariate arrows from the origin of the score plane.
 */

import type { Payload, ScatterSeries } from '../types.js';
import { categoryColor, esc, extentOf, linear } from './scale.js';

export const WIDTH = 480;
export const HEIGHT = 400;
const MARGIN = { top: 12, right: 12, bottom: 36, left: 48 };

interface Scales {
  sx: (v: number) => number;
  sy: (v: number) => number;
}

export function scatterScales(s: ScatterSeries): Scales {
  const arrowX = (s.arrows ?? []).map((a) => a.x);
  const arrowY = (s.arrows ?? []).map((a) => a.y);
  return {
    sx: linear(extentOf([...s.x, ...arrowX, 0]), MARGIN.left, WIDTH - MARGIN.right),
    sy: linear(extentOf([...s.y, ...arrowY, 0]), HEIGHT - MARGIN.bottom, MARGIN.top),
  };
}

function colorIndex(s: ScatterSeries): Map<string, number> {
  const levels = new Map<string, number>();
  for (const c of s.color ?? []) {
    const key = String(c);
    if (!levels.has(key)) levels.set(key, levels.size);
  }
  return levels;
}

function renderPoints(s: ScatterSeries, scales: Scales, pointSize: number): string {
  const levels = colorIndex(s);
  return s.ids
    .map((id, i) => {
      const fill = s.color ? categoryColor(levels.get(String(s.color[i]))!) : '#4e79a7';
      return (
        `<circle class="point" data-id="${esc(id)}" cx="${scales.sx(s.x[i]).toFixed(2)}"` +
        ` cy="${scales.sy(s.y[i]).toFixed(2)}" r="${pointSize}" fill="${fill}"` +
        ` fill-opacity="0.85"><title>${esc(id)}</title></circle>`
      );
    })
    .join('');
}

function axisLabels(payload: Payload): string {
  return (
    (payload.axis.x_label
      ? `<text x="${WIDTH / 2}" y="${HEIGHT - 8}" font-size="10" text-anchor="middle">` +
        `${esc(payload.axis.x_label)}</text>`
      : '') +
    (payload.axis.y_label
      ? `<text x="14" y="${HEIGHT / 2}" font-size="10" text-anchor="middle"` +
        ` transform="rotate(-90 14 ${HEIGHT / 2})">${esc(payload.axis.y_label)}</text>`
      : '')
  );
}

function wrap(cls: string, inner: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}"` +
    ` class="chart ${cls}" role="img">${inner}</svg>`
  );
}

export function renderScatter(payload: Payload, pointSize = 4): string {
  const s = payload.series as unknown as ScatterSeries;
  const scales = scatterScales(s);
  return wrap('chart-scatter', renderPoints(s, scales, pointSize) + axisLabels(payload));
}

export function renderBiplot(payload: Payload, pointSize = 4): string {
  const s = payload.series as unknown as ScatterSeries;
  const scales = scatterScales(s);
  const x0 = scales.sx(0);
  const y0 = scales.sy(0);
  const arrows = (s.arrows ?? [])
    .map((a) => {
      const x1 = scales.sx(a.x);
      const y1 = scales.sy(a.y);
      return (
        `<g class="arrow" data-name="${esc(a.name)}">` +
        `<line x1="${x0.toFixed(2)}" y1="${y0.toFixed(2)}" x2="${x1.toFixed(2)}"` +
        ` y2="${y1.toFixed(2)}" stroke="#333" stroke-width="1.2" marker-end="url(#tip)"/>` +
        `<text x="${x1.toFixed(2)}" y="${(y1 - 4).toFixed(2)}" font-size="10">` +
        `${esc(a.name)}</text></g>`
      );
    })
    .join('');
  const marker =
    '<defs><marker id="tip" markerWidth="8" markerHeight="8" refX="6" refY="3" orient="auto">' +
    '<path d="M0,0 L6,3 L0,6 Z" fill="#333"/></marker></defs>';
  return wrap('chart-biplot', marker + renderPoints(s, scales, pointSize) + arrows + axisLabels(payload));
}
