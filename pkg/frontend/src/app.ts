/**
 * Dashboard shell: one PanelView per server-side panel, a parameter
 * sidebar mirroring the server's schema, live refresh over the event
 * stream and brush-driven linked selections.
 *
 * Grid position is cosmetic client state (drag to reorder); everything
 * that affects data lineage lives server-side and flows through the API.
 */

import { ApiClient } from './api.js';
import { brushToSelection } from './brush.js';
import { downloadCsv, saveText, svgSnapshot } from './download.js';
import { errorCard, renderPayload } from './render/index.js';
import { changeEvents, PanelRefresher } from './sse.js';
import type { AvailableResponse, PanelParams, Payload, ScatterSeries } from './types.js';
import { extentOf, linear } from './render/scale.js';

interface PanelView {
  id: string;
  params: PanelParams;
  root: HTMLElement;
  chart: HTMLElement;
  payload: Payload | null;
}

export class Dashboard {
  private views = new Map<string, PanelView>();
  private available!: AvailableResponse;
  private refresher!: PanelRefresher;

  constructor(
    private readonly client: ApiClient,
    private readonly container: HTMLElement,
  ) {}

  async start(): Promise<void> {
    this.available = await this.client.available();
    const layout = await this.client.panels();
    this.refresher = new PanelRefresher(
      (id) => this.client.payload(id),
      (id, payload) => this.showPayload(id, payload),
      (id, err) => this.showError(id, err),
    );
    for (const params of layout.panels) this.addView(params);
    this.refresher.notify({ panels: layout.panels.map((p) => p.id) });
    void this.listen();
  }

  private async listen(): Promise<void> {
    const res = await this.client.events();
    if (!res.body) return;
    const stream = res.body as unknown as AsyncIterable<Uint8Array>;
    for await (const event of changeEvents(stream)) {
      for (const id of event.panels) this.views.get(id)?.root.classList.add('stale');
      this.refresher.notify(event);
    }
  }

  private addView(params: PanelParams): void {
    const root = this.container.ownerDocument.createElement('section');
    root.className = 'panel stale';
    root.dataset.panelId = params.id;
    root.draggable = true;
    root.innerHTML =
      `<header><h2>${params.type}</h2>` +
      `<button class="help" title="${this.available.help_text[params.type] ?? ''}">?</button>` +
      `<button class="script">script</button>` +
      `<button class="csv">csv</button><button class="svg">svg</button>` +
      `<button class="close">×</button></header>` +
      `<div class="chart-slot"></div><aside class="sidebar"></aside>`;
    const chart = root.querySelector<HTMLElement>('.chart-slot')!;
    const view: PanelView = { id: params.id, params, root, chart, payload: null };
    this.views.set(params.id, view);
    this.buildSidebar(view);
    this.wireHeader(view);
    this.wireDrag(root);
    this.container.appendChild(root);
  }

  private showPayload(id: string, payload: Payload): void {
    const view = this.views.get(id);
    if (!view) return;
    view.payload = payload;
    view.chart.innerHTML = renderPayload(payload);
    view.root.classList.remove('stale');
    if (payload.kind === 'scatter' || payload.kind === 'biplot') this.wireBrush(view);
  }

  private showError(id: string, err: unknown): void {
    const view = this.views.get(id);
    if (!view) return;
    view.chart.innerHTML =
      errorCard(err instanceof Error ? err.message : String(err)) +
      `<button class="retry">retry</button>`;
    view.chart.querySelector('.retry')?.addEventListener('click', () => {
      view.root.classList.add('stale');
      this.refresher.notify({ panels: [id] });
    });
  }

  /** Three collapsible groups mirroring the server's parameter schema. */
  private buildSidebar(view: PanelView): void {
    const doc = view.root.ownerDocument;
    const aside = view.root.querySelector<HTMLElement>('.sidebar')!;
    const schema = this.available.schemas[view.params.type];
    const groups: Array<[string, string[], Record<string, unknown>]> = [
      ['Data', schema.data, view.params.data_params],
      ['Visual', schema.visual, view.params.visual_params],
      ['Selection', ['row_source', 'col_source', 'restrict'], view.params.selection_params],
    ];
    for (const [title, keys, values] of groups) {
      const details = doc.createElement('details');
      details.innerHTML = `<summary>${title}</summary>`;
      for (const key of keys) {
        const row = doc.createElement('label');
        row.textContent = key;
        const input = this.controlFor(doc, title, key, values[key]);
        input.addEventListener('change', () => this.submitParam(view, title, key, input));
        row.appendChild(input);
        details.appendChild(row);
      }
      aside.appendChild(details);
    }
  }

  private controlFor(
    doc: Document,
    group: string,
    key: string,
    value: unknown,
  ): HTMLInputElement | HTMLSelectElement {
    if (group === 'Selection' && key !== 'restrict') {
      const select = doc.createElement('select');
      const options = ['', ...[...this.views.keys()]];
      select.innerHTML = options
        .map((id) => `<option${id === value ? ' selected' : ''}>${id}</option>`)
        .join('');
      return select;
    }
    const input = doc.createElement('input');
    if (typeof value === 'boolean') {
      input.type = 'checkbox';
      input.checked = value;
    } else {
      input.type = typeof value === 'number' ? 'number' : 'text';
      input.value = value === null || value === undefined ? '' : String(value);
    }
    return input;
  }

  private async submitParam(
    view: PanelView,
    group: string,
    key: string,
    input: HTMLInputElement | HTMLSelectElement,
  ): Promise<void> {
    let value: unknown = input.value === '' ? null : input.value;
    if (input instanceof HTMLInputElement && input.type === 'checkbox') value = input.checked;
    else if (input instanceof HTMLInputElement && input.type === 'number' && value !== null) {
      value = Number(value);
    }
    const field =
      group === 'Data' ? 'data_params' : group === 'Visual' ? 'visual_params' : 'selection_params';
    view.root.classList.add('stale');
    await this.client.patchParams(view.id, { [field]: { [key]: value } });
  }

  private wireHeader(view: PanelView): void {
    view.root.querySelector('.script')?.addEventListener('click', async () => {
      const text = await this.client.script(view.id);
      this.showScript(view, text);
    });
    view.root.querySelector('.csv')?.addEventListener('click', async () => {
      const csv = await downloadCsv(this.client, view.id);
      saveText(view.root.ownerDocument, `${view.id}.csv`, csv, 'text/csv');
    });
    view.root.querySelector('.svg')?.addEventListener('click', () => {
      if (!view.payload) return;
      const snapshot = svgSnapshot(view.chart.innerHTML);
      saveText(view.root.ownerDocument, `${view.id}.svg`, snapshot, 'image/svg+xml');
    });
    view.root.querySelector('.close')?.addEventListener('click', async () => {
      await this.client.deletePanel(view.id);
      view.root.remove();
      this.views.delete(view.id);
    });
  }

  /** Script viewer: server bytes verbatim plus a copy action. */
  private showScript(view: PanelView, text: string): void {
    const doc = view.root.ownerDocument;
    const dialog = doc.createElement('dialog');
    dialog.className = 'script-viewer';
    dialog.innerHTML = `<pre></pre><button class="copy">copy</button><button class="dismiss">close</button>`;
    dialog.querySelector('pre')!.textContent = text;
    dialog.querySelector('.copy')?.addEventListener('click', () => {
      void navigator.clipboard.writeText(text);
    });
    dialog.querySelector('.dismiss')?.addEventListener('click', () => dialog.close());
    doc.body.appendChild(dialog);
    dialog.showModal();
  }

  /** Screen-space drag converted to data coordinates, posted as a selection. */
  private wireBrush(view: PanelView): void {
    const svg = view.chart.querySelector('svg');
    if (!svg || !view.payload) return;
    const series = view.payload.series as unknown as ScatterSeries;
    let startPx: { x: number; y: number } | null = null;
    svg.addEventListener('pointerdown', (ev) => {
      startPx = { x: ev.offsetX, y: ev.offsetY };
    });
    svg.addEventListener('pointerup', async (ev) => {
      if (!startPx || !view.payload) return;
      const box = svg.viewBox.baseVal;
      const toVbX = linear({ min: 0, max: svg.clientWidth || box.width }, 0, box.width);
      const toVbY = linear({ min: 0, max: svg.clientHeight || box.height }, 0, box.height);
      // invert the renderer's viewport scales back into data coordinates
      const dx = linear({ min: 48, max: box.width - 12 }, 0, 1);
      const dy = linear({ min: box.height - 36, max: 12 }, 0, 1);
      const ex = extentOf([...series.x, ...(series.arrows ?? []).map((a) => a.x), 0]);
      const ey = extentOf([...series.y, ...(series.arrows ?? []).map((a) => a.y), 0]);
      const rect = {
        x0: ex.min + dx(toVbX(startPx.x)) * (ex.max - ex.min),
        x1: ex.min + dx(toVbX(ev.offsetX)) * (ex.max - ex.min),
        y0: ey.min + dy(toVbY(startPx.y)) * (ey.max - ey.min),
        y1: ey.min + dy(toVbY(ev.offsetY)) * (ey.max - ey.min),
      };
      startPx = null;
      try {
        await brushToSelection(this.client, view.payload, rect);
      } catch {
        this.toast('selection failed — click to retry', () =>
          brushToSelection(this.client, view.payload!, rect),
        );
      }
    });
  }

  private toast(message: string, retry: () => Promise<unknown>): void {
    const doc = this.container.ownerDocument;
    const el = doc.createElement('div');
    el.className = 'toast';
    el.textContent = message;
    el.addEventListener('click', () => {
      void retry();
      el.remove();
    });
    doc.body.appendChild(el);
    setTimeout(() => el.remove(), 8000);
  }

  private wireDrag(root: HTMLElement): void {
    root.addEventListener('dragstart', (ev) => {
      ev.dataTransfer?.setData('text/panel-id', root.dataset.panelId ?? '');
    });
    root.addEventListener('dragover', (ev) => ev.preventDefault());
    root.addEventListener('drop', (ev) => {
      ev.preventDefault();
      const otherId = ev.dataTransfer?.getData('text/panel-id');
      const other = otherId ? this.views.get(otherId)?.root : null;
      if (other && other !== root) this.container.insertBefore(other, root);
    });
  }
}

export function mount(baseUrl: string, container: HTMLElement): Dashboard {
  const dashboard = new Dashboard(new ApiClient(baseUrl), container);
  void dashboard.start();
  return dashboard;
}
