/**
 * Server-sent-events parsing and change-driven payload refresh.
 *
 * The server pushes {"panels": [ids]} after every mutation; the client
 * re-fetches exactly the listed payloads. Fetches are coalesced per
 * panel: a notification arriving while that panel's fetch is in flight
 * schedules exactly one follow-up fetch instead of piling on.
 */

import type { ChangeEvent, Payload } from './types.js';

/**
 * Parse a text/event-stream body into its data payloads. Comment lines
 * (keepalives) and event/id fields are skipped; multi-line data fields
 * are joined with newlines per the SSE wire format.
 */
export async function* parseSseStream(
  stream: AsyncIterable<Uint8Array | string>,
): AsyncGenerator<string> {
  const decoder = new TextDecoder();
  let buffer = '';
  for await (const chunk of stream) {
    buffer += typeof chunk === 'string' ? chunk : decoder.decode(chunk, { stream: true });
    let sep: number;
    while ((sep = buffer.indexOf('\n\n')) >= 0) {
      const block = buffer.slice(0, sep);
      buffer = buffer.slice(sep + 2);
      const data = block
        .split('\n')
        .filter((line) => line.startsWith('data:'))
        .map((line) => line.slice(5).replace(/^ /, ''));
      if (data.length > 0) yield data.join('\n');
    }
  }
}

export async function* changeEvents(
  stream: AsyncIterable<Uint8Array | string>,
): AsyncGenerator<ChangeEvent> {
  for await (const data of parseSseStream(stream)) {
    yield JSON.parse(data) as ChangeEvent;
  }
}

export type PayloadFetcher = (panelId: string) => Promise<Payload>;

/**
 * Per-panel fetch coalescing: `notify` marks panels dirty and starts a
 * fetch for each panel that has none in flight; notifications landing
 * mid-flight are folded into a single trailing fetch.
 */
export class PanelRefresher {
  private inFlight = new Map<string, Promise<void>>();
  private dirty = new Set<string>();

  constructor(
    private readonly fetchPayload: PayloadFetcher,
    private readonly onPayload: (panelId: string, payload: Payload) => void,
    private readonly onError: (panelId: string, err: unknown) => void = () => {},
  ) {}

  notify(event: ChangeEvent): void {
    for (const panelId of event.panels) {
      if (this.inFlight.has(panelId)) {
        this.dirty.add(panelId);
      } else {
        this.start(panelId);
      }
    }
  }

  private start(panelId: string): void {
    const run = this.fetchPayload(panelId)
      .then((payload) => this.onPayload(panelId, payload))
      .catch((err) => this.onError(panelId, err))
      .finally(() => {
        this.inFlight.delete(panelId);
        if (this.dirty.delete(panelId)) this.start(panelId);
      });
    this.inFlight.set(panelId, run);
  }

  /** Resolves once every in-flight and queued fetch has settled. */
  async idle(): Promise<void> {
    while (this.inFlight.size > 0) {
      await Promise.all([...this.inFlight.values()]);
    }
  }
}
