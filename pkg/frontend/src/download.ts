/**
 * Per-panel downloads. CSV comes from the server's export endpoint (the
 * engine owns all data flattening); the SVG snapshot serializes the
 * rendered chart markup as a standalone document.
 */

import type { ApiClient } from './api.js';

const XML_HEADER = '<?xml version="1.0" encoding="UTF-8"?>\n';

/** Current payload flattened to CSV by the server. */
export function downloadCsv(client: ApiClient, panelId: string): Promise<string> {
  return client.exportCsv(panelId);
}

/** Standalone SVG document for the rendered chart markup. */
export function svgSnapshot(chartMarkup: string): string {
  const start = chartMarkup.indexOf('<svg');
  const end = chartMarkup.lastIndexOf('</svg>');
  if (start < 0 || end < 0) {
    throw new Error('no <svg> element in the rendered chart');
  }
  return XML_HEADER + chartMarkup.slice(start, end + '</svg>'.length);
}

/** Trigger a browser download of in-memory text (no-op data URL plumbing). */
export function saveText(doc: Document, filename: string, text: string, mime: string): void {
  const a = doc.createElement('a');
  a.href = URL.createObjectURL(new Blob([text], { type: mime }));
  a.download = filename;
  doc.body.appendChild(a);
  a.click();
  a.remove();
  URL.revokeObjectURL(a.href);
}
