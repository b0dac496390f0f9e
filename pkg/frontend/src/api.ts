/**
 * Typed client for the session server's HTTP API.
 *
 * The fetch implementation is injectable so tests can count requests or
 * run against a live server started out of process.
 */

import type {
  AvailableResponse,
  LayoutResponse,
  MutationResponse,
  PanelParams,
  Payload,
  SelectionEvent,
  SummaryResponse,
} from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly error: string,
    message: string,
    readonly parameter?: string,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

async function raise(res: Response): Promise<never> {
  let body: Record<string, unknown> = {};
  try {
    body = await res.json();
  } catch {
    // non-JSON error body; fall through with generic fields
  }
  throw new ApiError(
    res.status,
    String(body.error ?? 'HttpError'),
    String(body.message ?? res.statusText),
    typeof body.parameter === 'string' ? body.parameter : undefined,
  );
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchImpl(this.baseUrl + path, init);
    if (!res.ok) await raise(res);
    return res.json() as Promise<T>;
  }

  private async text(path: string): Promise<string> {
    const res = await this.fetchImpl(this.baseUrl + path);
    if (!res.ok) await raise(res);
    return res.text();
  }

  summary(): Promise<SummaryResponse> {
    return this.request('/api/dataset/summary');
  }

  available(): Promise<AvailableResponse> {
    return this.request('/api/available');
  }

  panels(): Promise<LayoutResponse> {
    return this.request('/api/panels');
  }

  addPanel(args: Partial<PanelParams> & { type: string }): Promise<MutationResponse> {
    return this.request('/api/panels', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(args),
    });
  }

  patchParams(
    panelId: string,
    args: Partial<Pick<PanelParams, 'data_params' | 'visual_params' | 'selection_params'>>,
  ): Promise<MutationResponse> {
    return this.request(`/api/panels/${encodeURIComponent(panelId)}/params`, {
      method: 'PATCH',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(args),
    });
  }

  deletePanel(panelId: string): Promise<MutationResponse> {
    return this.request(`/api/panels/${encodeURIComponent(panelId)}`, { method: 'DELETE' });
  }

  postSelection(event: SelectionEvent): Promise<MutationResponse> {
    return this.request('/api/selection', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(event),
    });
  }

  payload(panelId: string): Promise<Payload> {
    return this.request(`/api/panels/${encodeURIComponent(panelId)}/payload`);
  }

  /** Provenance script, verbatim bytes for the script viewer. */
  script(panelId: string): Promise<string> {
    return this.text(`/api/panels/${encodeURIComponent(panelId)}/script`);
  }

  exportCsv(panelId: string): Promise<string> {
    return this.text(`/api/export/${encodeURIComponent(panelId)}.csv`);
  }

  /** Raw response for the server-sent-events stream (body is consumed by the caller). */
  events(): Promise<Response> {
    return this.fetchImpl(this.baseUrl + '/api/events');
  }
}
