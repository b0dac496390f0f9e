/**
 * Shared drawing helpers: linear scales, a categorical palette and
 * SVG/HTML string escaping. Purely cosmetic — no statistics live here.
 */

export interface Extent {
  min: number;
  max: number;
}

export function extentOf(values: number[]): Extent {
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  if (!isFinite(min)) return { min: 0, max: 1 };
  if (min === max) return { min: min - 0.5, max: max + 0.5 };
  return { min, max };
}

/** Map [domain.min, domain.max] onto [r0, r1]. */
export function linear(domain: Extent, r0: number, r1: number): (v: number) => number {
  const span = domain.max - domain.min;
  return (v) => r0 + ((v - domain.min) / span) * (r1 - r0);
}

export const PALETTE = [
  '#4e79a7', '#f28e2b', '#e15759', '#76b7b2', '#59a14f',
  '#edc948', '#b07aa1', '#ff9da7', '#9c755f', '#bab0ac',
];

export function categoryColor(index: number): string {
  return PALETTE[index % PALETTE.length];
}

/** Grayscale-free sequential ramp (light yellow to dark blue) for heatmap cells. */
export function sequentialColor(t: number): string {
  const clamped = Math.max(0, Math.min(1, t));
  const r = Math.round(255 - 205 * clamped);
  const g = Math.round(247 - 167 * clamped);
  const b = Math.round(188 - 60 * clamped);
  return `rgb(${r},${g},${b})`;
}

export function esc(value: unknown): string {
  return String(value)
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function fmt(v: number): string {
  return Number.isInteger(v) ? String(v) : v.toPrecision(6).replace(/\.?0+$/, '');
}
