/**
 * Annotation-table renderer: a plain HTML table for one server-side page
 * plus a footer with the pagination state.
 */

import type { Payload, TableSeries } from '../types.js';
import { esc } from './scale.js';

export function renderTable(payload: Payload): string {
  const s = payload.series as unknown as TableSeries;
  const head = s.columns.map((c) => `<th>${esc(c)}</th>`).join('');
  const body = s.rows
    .map((rec) => {
      const cells = s.columns
        .map((c) => `<td>${rec[c] === null || rec[c] === undefined ? '' : esc(rec[c])}</td>`)
        .join('');
      return `<tr data-id="${esc(rec['id'])}">${cells}</tr>`;
    })
    .join('');
  const pages = Math.max(1, Math.ceil(s.total / s.page_size));
  return (
    `<div class="chart chart-table">` +
    `<table><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>` +
    `<div class="table-footer">page ${s.page} of ${pages} — ${s.total} rows</div></div>`
  );
}
