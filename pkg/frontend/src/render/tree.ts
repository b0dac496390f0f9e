/**
 * Rectangular tree renderer. Node positions are taken verbatim from the
 * payload (layout is a server concern); the client only maps them onto
 * the viewport and draws elbow connectors between parent and child.
 */

import type { Payload, TreeNode, TreeSeries } from '../types.js';
import { esc, extentOf, linear } from './scale.js';

export const WIDTH = 520;
export const HEIGHT = 420;
const MARGIN = { top: 10, right: 120, bottom: 10, left: 10 };

export function renderTree(payload: Payload): string {
  const s = payload.series as unknown as TreeSeries;
  const byId = new Map<number, TreeNode>(s.nodes.map((n) => [n.id, n]));
  const sx = linear(extentOf(s.nodes.map((n) => n.x)), MARGIN.left, WIDTH - MARGIN.right);
  const sy = linear(extentOf(s.nodes.map((n) => n.y)), MARGIN.top, HEIGHT - MARGIN.bottom);

  const edges = s.nodes
    .filter((n) => n.parent !== null)
    .map((n) => {
      const p = byId.get(n.parent!)!;
      // elbow: vertical drop at the parent's x, then horizontal to the child
      const d =
        `M${sx(p.x).toFixed(2)},${sy(p.y).toFixed(2)}` +
        `V${sy(n.y).toFixed(2)}H${sx(n.x).toFixed(2)}`;
      return `<path class="edge" d="${d}" fill="none" stroke="#888" stroke-width="1"/>`;
    })
    .join('');

  const nodes = s.nodes
    .map((n) => {
      const label =
        s.show_labels && n.is_leaf && n.label !== null
          ? `<text x="${(sx(n.x) + 5).toFixed(2)}" y="${(sy(n.y) + 3).toFixed(2)}"` +
            ` font-size="9">${esc(n.label)}</text>`
          : '';
      return (
        `<g class="node${n.is_leaf ? ' leaf' : ''}" data-node-id="${n.id}"` +
        ` data-x="${n.x}" data-y="${n.y}">` +
        `<circle cx="${sx(n.x).toFixed(2)}" cy="${sy(n.y).toFixed(2)}"` +
        ` r="${n.is_leaf ? 2.5 : 3.5}" fill="${n.is_leaf ? '#4e79a7' : '#555'}"/>` +
        `${label}</g>`
      );
    })
    .join('');

  const mode = `<text x="${MARGIN.left}" y="${HEIGHT - 2}" font-size="9" fill="#777">${s.mode}</text>`;

  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}"` +
    ` class="chart chart-tree" role="img">${edges}${nodes}${mode}</svg>`
  );
}
